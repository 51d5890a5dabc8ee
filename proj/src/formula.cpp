#include "bettibounds/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bettibounds {

std::shared_ptr<const FunctionDescriptor> FunctionDescriptor::abstract(ComplexityVector cvec) {
    auto fd = std::shared_ptr<FunctionDescriptor>(new FunctionDescriptor());
    fd->cvec_ = std::move(cvec);
    return fd;
}

std::shared_ptr<const FunctionDescriptor> FunctionDescriptor::polynomial(Polynomial poly) {
    auto fd = std::shared_ptr<FunctionDescriptor>(new FunctionDescriptor());
    fd->poly_ = std::move(poly);
    return fd;
}

const Polynomial& FunctionDescriptor::poly() const {
    if (!poly_) throw std::logic_error("descriptor is abstract, no polynomial available");
    return *poly_;
}

const ComplexityVector& FunctionDescriptor::abstract_complexity() const {
    if (!cvec_) throw std::logic_error("descriptor is concrete, no declared complexity");
    return *cvec_;
}

bool FunctionDescriptor::operator==(const FunctionDescriptor& other) const {
    if (is_concrete() != other.is_concrete()) return false;
    if (is_concrete()) return *poly_ == *other.poly_;
    return *cvec_ == *other.cvec_;
}

std::string FunctionDescriptor::str() const {
    if (is_concrete()) return poly_->str();
    return "abstract" + cvec_->str();
}

ComplexityVector descriptor_complexity(const ComplexityMeasure& measure, const FunctionDescriptor& fn) {
    if (fn.is_concrete()) return measure.from_degree(fn.poly().total_degree());
    measure.check_arity("descriptor", fn.abstract_complexity());
    return fn.abstract_complexity();
}

const char* rel_token(Rel rel) {
    switch (rel) {
        case Rel::EQ: return "=";
        case Rel::GT: return ">";
        case Rel::LT: return "<";
        case Rel::GE: return ">=";
        case Rel::LE: return "<=";
    }
    return "?";
}

Formula Formula::atom(FnPtr fn, Rel rel) {
    if (!fn) throw std::invalid_argument("atom: null descriptor");
    Formula f;
    f.kind_ = Kind::Atom;
    f.atom_ = Atom{std::move(fn), rel};
    return f;
}

Formula Formula::atom(Polynomial poly, Rel rel) {
    return atom(FunctionDescriptor::polynomial(std::move(poly)), rel);
}

Formula Formula::and_of(std::vector<Formula> children) {
    Formula f;
    f.kind_ = Kind::And;
    f.children_ = std::move(children);
    return f;
}

Formula Formula::or_of(std::vector<Formula> children) {
    Formula f;
    f.kind_ = Kind::Or;
    f.children_ = std::move(children);
    return f;
}

Formula Formula::not_of(Formula child) {
    Formula f;
    f.kind_ = Kind::Not;
    f.children_.push_back(std::move(child));
    return f;
}

const Atom& Formula::as_atom() const {
    if (kind_ != Kind::Atom) throw std::logic_error("not an atom node");
    return *atom_;
}

bool Formula::operator==(const Formula& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Atom)
        return atom_->rel == other.atom_->rel && *atom_->fn == *other.atom_->fn;
    return children_ == other.children_;
}

namespace {

Rel negated(Rel rel) {
    switch (rel) {
        case Rel::EQ: return Rel::EQ;  // handled separately: splits into GT | LT
        case Rel::GT: return Rel::LE;
        case Rel::LT: return Rel::GE;
        case Rel::GE: return Rel::LT;
        case Rel::LE: return Rel::GT;
    }
    return rel;
}

Formula push(const Formula& f, bool positive) {
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            const Atom& a = f.as_atom();
            if (positive) return f;
            if (a.rel == Rel::EQ)
                return Formula::or_of({Formula::atom(a.fn, Rel::GT), Formula::atom(a.fn, Rel::LT)});
            return Formula::atom(a.fn, negated(a.rel));
        }
        case Formula::Kind::Not:
            return push(f.children().front(), !positive);
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            const bool conj = (f.kind() == Formula::Kind::And) == positive;
            std::vector<Formula> out;
            for (const Formula& child : f.children()) {
                Formula n = push(child, positive);
                // Flatten children of the same connective.
                if ((conj && n.kind() == Formula::Kind::And) ||
                    (!conj && n.kind() == Formula::Kind::Or)) {
                    for (const Formula& g : n.children()) out.push_back(g);
                } else {
                    out.push_back(std::move(n));
                }
            }
            if (out.size() == 1) return out.front();
            return conj ? Formula::and_of(std::move(out)) : Formula::or_of(std::move(out));
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Formula normalize(const Formula& f) { return push(f, true); }

const char* set_class_name(SetClass c) {
    switch (c) {
        case SetClass::Closed: return "closed";
        case SetClass::Open: return "open";
        case SetClass::Mixed: return "mixed";
    }
    return "?";
}

namespace {

void walk_atoms(const Formula& f, const std::function<void(const Atom&)>& fn) {
    switch (f.kind()) {
        case Formula::Kind::Atom: fn(f.as_atom()); return;
        case Formula::Kind::Not:
        case Formula::Kind::And:
        case Formula::Kind::Or:
            for (const Formula& child : f.children()) walk_atoms(child, fn);
            return;
    }
}

}  // namespace

SetClass classify(const Formula& f) {
    bool any_closed = false, any_open = false, has_not = false;
    std::function<void(const Formula&)> visit = [&](const Formula& g) {
        if (g.kind() == Formula::Kind::Not) has_not = true;
        if (g.kind() == Formula::Kind::Atom) {
            const Rel r = g.as_atom().rel;
            if (r == Rel::GT || r == Rel::LT) any_open = true;
            else any_closed = true;
        }
        for (const Formula& child : g.children()) visit(child);
    };
    visit(f);
    if (has_not) throw std::invalid_argument("classify requires a normalized (negation-free) formula");
    if (any_open && any_closed) return SetClass::Mixed;
    if (any_open) return SetClass::Open;
    return SetClass::Closed;
}

std::vector<FnPtr> atoms_of(const Formula& f) {
    std::vector<FnPtr> out;
    walk_atoms(f, [&](const Atom& a) {
        for (const FnPtr& seen : out)
            if (*seen == *a.fn) return;
        out.push_back(a.fn);
    });
    return out;
}

namespace {

bool eval_atom(const Atom& a, const std::vector<Rat>& point) {
    const Polynomial& p = a.fn->poly();
    std::vector<Rat> sub(point.begin(), point.begin() + static_cast<long>(p.n_vars()));
    const Rat v = p.eval(sub);
    switch (a.rel) {
        case Rel::EQ: return v == 0;
        case Rel::GT: return v > 0;
        case Rel::LT: return v < 0;
        case Rel::GE: return v >= 0;
        case Rel::LE: return v <= 0;
    }
    return false;
}

}  // namespace

bool eval_formula(const Formula& f, const std::vector<Rat>& point) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            if (!f.as_atom().fn->is_concrete())
                throw std::invalid_argument("eval_formula: abstract descriptor is not evaluable");
            if (f.as_atom().fn->poly().n_vars() > point.size())
                throw std::invalid_argument("eval_formula: point has too few coordinates");
            return eval_atom(f.as_atom(), point);
        case Formula::Kind::Not:
            return !eval_formula(f.children().front(), point);
        case Formula::Kind::And:
            return std::all_of(f.children().begin(), f.children().end(),
                               [&](const Formula& g) { return eval_formula(g, point); });
        case Formula::Kind::Or:
            return std::any_of(f.children().begin(), f.children().end(),
                               [&](const Formula& g) { return eval_formula(g, point); });
    }
    return false;
}

std::size_t formula_n_vars(const Formula& f) {
    std::size_t n = 0;
    walk_atoms(f, [&](const Atom& a) {
        if (a.fn->is_concrete()) n = std::max(n, a.fn->poly().n_vars());
    });
    return n;
}

namespace {

// Precedence levels: Or = 0, And = 1, unary = 2.
void print_rec(std::ostringstream& os, const Formula& f, int parent_level) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            os << f.as_atom().fn->str() << " " << rel_token(f.as_atom().rel) << " 0";
            return;
        case Formula::Kind::Not:
            os << "!";
            if (f.children().front().kind() == Formula::Kind::Atom ||
                f.children().front().kind() == Formula::Kind::Not) {
                print_rec(os, f.children().front(), 2);
            } else {
                os << "(";
                print_rec(os, f.children().front(), 0);
                os << ")";
            }
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            const bool conj = f.kind() == Formula::Kind::And;
            const int level = conj ? 1 : 0;
            // Degenerate connectives print as their constant atoms.
            if (f.children().empty()) {
                os << (conj ? "0 = 0" : "0 > 0");
                return;
            }
            const bool paren = level < parent_level;
            if (paren) os << "(";
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                if (i) os << (conj ? " & " : " | ");
                print_rec(os, f.children()[i], level + 1);
            }
            if (paren) os << ")";
            return;
        }
    }
}

}  // namespace

std::string print_formula(const Formula& f) {
    std::ostringstream os;
    print_rec(os, f, 0);
    return os.str();
}

QuantifiedFormula::QuantifiedFormula(std::vector<QuantifierBlock> blocks, std::size_t free_dim,
                                     Formula matrix)
    : blocks_(std::move(blocks)), free_dim_(free_dim), matrix_(std::move(matrix)) {
    if (blocks_.empty()) throw std::invalid_argument("quantified formula needs at least one block");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].width == 0) throw std::invalid_argument("quantifier block width must be >= 1");
        if (i && blocks_[i].q == blocks_[i - 1].q)
            throw std::invalid_argument("adjacent quantifier blocks must alternate");
    }
    if (formula_n_vars(matrix_) > total_dim())
        throw std::invalid_argument("matrix formula uses variables beyond the declared dimensions");
}

std::size_t QuantifiedFormula::total_dim() const {
    std::size_t total = free_dim_;
    for (const auto& b : blocks_) total += b.width;
    return total;
}

std::string QuantifiedFormula::str() const {
    std::ostringstream os;
    for (const auto& b : blocks_)
        os << (b.q == Quantifier::Exists ? "E" : "A") << "(" << b.width << ") ";
    os << ": " << print_formula(matrix_);
    return os.str();
}

namespace {

std::vector<ComplexityVector> complexities_of(const ComplexityMeasure& measure,
                                              const std::vector<FnPtr>& fs) {
    std::vector<ComplexityVector> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(descriptor_complexity(measure, *f));
    return out;
}

}  // namespace

ComplexityVector composite_complexity(const ComplexityMeasure& measure, const CompositeRecipe& recipe,
                                      std::size_t n) {
    if (n == 0) throw std::domain_error("composite_complexity: dimension must be >= 1");
    return std::visit(
        [&](const auto& r) -> ComplexityVector {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SumSquaresPlusNorm>) {
                if (r.fs.empty()) throw std::invalid_argument("SumSquaresPlusNorm: empty function list");
                std::vector<ComplexityVector> terms;
                for (const auto& c : complexities_of(measure, r.fs))
                    terms.push_back(measure.times(c, c));
                terms.push_back(measure.norm_squared());
                return fold_complexity(measure, FoldOp::Plus, terms);
            } else if constexpr (std::is_same_v<T, NormTimesProduct>) {
                if (r.fs.empty()) throw std::invalid_argument("NormTimesProduct: empty function list");
                std::vector<ComplexityVector> factors{measure.norm_squared()};
                for (const auto& c : complexities_of(measure, r.fs)) factors.push_back(c);
                return fold_complexity(measure, FoldOp::Times, factors);
            } else {
                if (r.eqs.empty() && r.ineqs.empty())
                    throw std::invalid_argument("MixedRecipe: both function lists empty");
                std::vector<ComplexityVector> factors{measure.norm_squared()};
                if (!r.eqs.empty()) {
                    std::vector<ComplexityVector> squares;
                    for (const auto& c : complexities_of(measure, r.eqs))
                        squares.push_back(measure.times(c, c));
                    const ComplexityVector sum = fold_complexity(measure, FoldOp::Plus, squares);
                    factors.push_back(measure.times(sum, sum));
                }
                for (const auto& c : complexities_of(measure, r.ineqs)) factors.push_back(c);
                return fold_complexity(measure, FoldOp::Times, factors);
            }
        },
        recipe);
}

}  // namespace bettibounds
