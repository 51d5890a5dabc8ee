#include "bettibounds/complexity.hpp"

#include <algorithm>
#include <sstream>

namespace bettibounds {

ComplexityVector::ComplexityVector(std::vector<Nat> entries) : entries_(std::move(entries)) {
    for (const Nat& e : entries_) {
        if (e < 0) throw std::invalid_argument("complexity entries must be non-negative, got " + e.str());
    }
}

ComplexityVector::ComplexityVector(std::initializer_list<Nat> entries)
    : ComplexityVector(std::vector<Nat>(entries)) {}

ComplexityVector ComplexityVector::zeros(std::size_t m) {
    return ComplexityVector(std::vector<Nat>(m, Nat(0)));
}

bool ComplexityVector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Nat& e) { return e == 0; });
}

std::string ComplexityVector::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ", ";
        os << entries_[i].str();
    }
    os << ')';
    return os.str();
}

ArityMismatch::ArityMismatch(const std::string& where, std::size_t expected, const ComplexityVector& got)
    : std::invalid_argument(where + ": expected arity " + std::to_string(expected) + ", got vector " +
                            got.str() + " of arity " + std::to_string(got.arity())) {}

ComplexityMeasure::ComplexityMeasure(std::string name, std::size_t arity, BinaryRule plus,
                                     BinaryRule times, UnaryRule partial, SolutionRule solution,
                                     ComplexityVector norm_squared, DegreeRule from_degree,
                                     bool constants_absorb)
    : name_(std::move(name)),
      arity_(arity),
      plus_(std::move(plus)),
      times_(std::move(times)),
      partial_(std::move(partial)),
      solution_(std::move(solution)),
      norm_squared_(std::move(norm_squared)),
      from_degree_(std::move(from_degree)),
      constants_absorb_(constants_absorb) {
    if (arity_ == 0) throw std::invalid_argument("measure arity must be positive");
    check_arity("norm_squared", norm_squared_);
}

ComplexityVector ComplexityMeasure::from_degree(const Nat& degree) const {
    if (!from_degree_)
        throw std::invalid_argument("measure '" + name_ + "' has no polynomial embedding");
    return from_degree_(degree);
}

void ComplexityMeasure::check_arity(const char* where, const ComplexityVector& v) const {
    if (v.arity() != arity_) throw ArityMismatch(name_ + "." + where, arity_, v);
}

ComplexityVector ComplexityMeasure::plus(const ComplexityVector& a, const ComplexityVector& b) const {
    check_arity("plus", a);
    check_arity("plus", b);
    return plus_(a, b);
}

ComplexityVector ComplexityMeasure::times(const ComplexityVector& a, const ComplexityVector& b) const {
    check_arity("times", a);
    check_arity("times", b);
    return times_(a, b);
}

ComplexityVector ComplexityMeasure::partial(const ComplexityVector& a) const {
    check_arity("partial", a);
    return partial_(a);
}

Nat ComplexityMeasure::solution_count(std::size_t n, const std::vector<ComplexityVector>& cs) const {
    if (n == 0 || cs.size() != n)
        throw std::invalid_argument(name_ + ".solution: need exactly n >= 1 argument vectors");
    for (const auto& c : cs) check_arity("solution", c);
    return solution_(n, cs);
}

MeasurePtr degree_measure() {
    auto plus = [](const ComplexityVector& a, const ComplexityVector& b) {
        return ComplexityVector{nat_max(a[0], b[0])};
    };
    auto times = [](const ComplexityVector& a, const ComplexityVector& b) {
        return ComplexityVector{a[0] + b[0]};
    };
    auto partial = [](const ComplexityVector& a) { return ComplexityVector{monus(a[0], 1)}; };
    auto solution = [](std::size_t, const std::vector<ComplexityVector>& cs) {
        Nat prod = 1;
        for (const auto& c : cs) prod *= c[0];
        return prod;
    };
    auto from_degree = [](const Nat& d) { return ComplexityVector{d}; };
    static const MeasurePtr instance = std::make_shared<ComplexityMeasure>(
        "degree", 1, plus, times, partial, solution, ComplexityVector{2}, from_degree);
    return instance;
}

MeasurePtr pfaffian_measure(bool shared_chain) {
    auto order_rule = [shared_chain](const Nat& r1, const Nat& r2) {
        return shared_chain ? nat_max(r1, r2) : Nat(r1 + r2);
    };
    auto plus = [order_rule](const ComplexityVector& a, const ComplexityVector& b) {
        return ComplexityVector{nat_max(a[0], b[0]), nat_max(a[1], b[1]), order_rule(a[2], b[2])};
    };
    auto times = [order_rule](const ComplexityVector& a, const ComplexityVector& b) {
        return ComplexityVector{nat_max(a[0], b[0]), a[1] + b[1], order_rule(a[2], b[2])};
    };
    auto partial = [](const ComplexityVector& a) {
        return ComplexityVector{a[0], monus(a[0] + a[1], 1), a[2]};
    };
    auto solution = [](std::size_t n, const std::vector<ComplexityVector>& cs) {
        std::vector<PfaffianComplexity> pc;
        pc.reserve(cs.size());
        for (const auto& c : cs) pc.emplace_back(nat_max(c[0], 1), nat_max(c[1], 1), c[2]);
        return khovanskii_tn_value(n, pc);
    };
    auto from_degree = [](const Nat& d) {
        // Polynomials are Pfaffian functions of order 0 and degree (1, d).
        return d == 0 ? ComplexityVector{0, 0, 0} : ComplexityVector{1, d, 0};
    };
    static const MeasurePtr shared_instance = std::make_shared<ComplexityMeasure>(
        "pfaffian", 3, plus, times, partial, solution, ComplexityVector{1, 2, 0}, from_degree);
    if (shared_chain) return shared_instance;
    return std::make_shared<ComplexityMeasure>("pfaffian-split-chain", 3, plus, times, partial,
                                               solution, ComplexityVector{1, 2, 0}, from_degree);
}

PfaffianComplexity::PfaffianComplexity(Nat a, Nat b, Nat r)
    : alpha(std::move(a)), beta(std::move(b)), order(std::move(r)) {
    if (alpha < 1 || beta < 1 || order < 0)
        throw std::invalid_argument("pfaffian complexity needs alpha >= 1, beta >= 1, r >= 0");
}

ComplexityVector fold_complexity(const ComplexityMeasure& measure, FoldOp op,
                                 const std::vector<ComplexityVector>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("fold_complexity: empty vector list");
    for (const auto& v : vectors) measure.check_arity("fold", v);
    ComplexityVector acc = vectors.front();
    for (std::size_t i = 1; i < vectors.size(); ++i)
        acc = op == FoldOp::Plus ? measure.plus(acc, vectors[i]) : measure.times(acc, vectors[i]);
    return acc;
}

ComplexityVector partial_complexity(const ComplexityMeasure& measure, const ComplexityVector& c) {
    return measure.partial(c);
}

ComplexityVector kappa(const ComplexityMeasure& measure, const ComplexityVector& c) {
    const ComplexityVector d = measure.partial(c);
    return measure.plus(d, measure.times(ComplexityVector::zeros(measure.arity()), d));
}

Nat gamma_value(const ComplexityMeasure& measure, std::size_t n, const ComplexityVector& c) {
    if (n == 0) throw std::domain_error("gamma: dimension n must be >= 1");
    measure.check_arity("gamma", c);
    std::vector<ComplexityVector> args;
    args.reserve(n);
    args.push_back(c);
    const ComplexityVector k = kappa(measure, c);
    for (std::size_t i = 1; i < n; ++i) args.push_back(k);
    return measure.solution_count(n, args);
}

Nat khovanskii_tn_value(std::size_t n, const std::vector<PfaffianComplexity>& complexities) {
    if (complexities.empty()) throw std::invalid_argument("khovanskii_tn: empty complexity list");
    if (complexities.size() != n)
        throw std::invalid_argument("khovanskii_tn: need one complexity per equation");
    Nat alpha = 0, r = 0, beta_prod = 1, beta_sum = 0;
    for (const auto& c : complexities) {
        alpha = nat_max(alpha, c.alpha);
        r = nat_max(r, c.order);
        beta_prod *= c.beta;
        beta_sum += c.beta;
    }
    const Nat base = nat_min(Nat(n), r) * alpha + beta_sum - Nat(n) + 1;
    return nat_pow(Nat(2), r * (r - 1) / 2) * beta_prod * nat_pow(base, r);
}

namespace {

Nat half_gamma_of_sum_squares(const ComplexityMeasure& measure, std::size_t n,
                              const std::vector<ComplexityVector>& squares,
                              const ComplexityVector& square_norm_c) {
    std::vector<ComplexityVector> terms = squares;
    terms.push_back(square_norm_c);
    const ComplexityVector composite = fold_complexity(measure, FoldOp::Plus, terms);
    return ceil_half(gamma_value(measure, n, composite));
}

}  // namespace

Nat omega_value(const ComplexityMeasure& measure, std::size_t n,
                const std::vector<ComplexityVector>& F, const std::vector<ComplexityVector>& G,
                const ComplexityVector& square_norm_c) {
    if (F.empty() && G.empty()) throw std::invalid_argument("omega: F and G both empty");
    measure.check_arity("omega", square_norm_c);
    std::vector<ComplexityVector> g_squares;
    g_squares.reserve(G.size());
    for (const auto& g : G) g_squares.push_back(measure.times(g, g));

    Nat best = half_gamma_of_sum_squares(measure, n, g_squares, square_norm_c);  // the b(Z_r) term
    for (const auto& f : F) {
        std::vector<ComplexityVector> squares = g_squares;
        squares.push_back(measure.times(f, f));
        best = nat_max(best, half_gamma_of_sum_squares(measure, n, squares, square_norm_c));
    }
    return best;
}

Nat omega_value(const ComplexityMeasure& measure, std::size_t n,
                const std::vector<ComplexityVector>& F, const std::vector<ComplexityVector>& G) {
    return omega_value(measure, n, F, G, measure.norm_squared());
}

Nat omega_single_value(const ComplexityMeasure& measure, std::size_t n,
                       const std::vector<ComplexityVector>& F) {
    if (F.empty()) throw std::invalid_argument("omega: empty function family");
    Nat best = 0;
    for (const auto& f : F) {
        std::vector<ComplexityVector> squares{measure.times(f, f)};
        best = nat_max(best, half_gamma_of_sum_squares(measure, n, squares, measure.norm_squared()));
    }
    return best;
}

std::vector<std::string> validate_measure(const ComplexityMeasure& measure) {
    std::vector<std::string> violations;
    if (!measure.constants_absorb()) return violations;

    std::vector<ComplexityVector> probes;
    probes.push_back(ComplexityVector::zeros(measure.arity()));
    for (std::size_t i = 0; i < measure.arity(); ++i) {
        std::vector<Nat> unit(measure.arity(), Nat(0));
        unit[i] = 1;
        probes.emplace_back(std::move(unit));
    }
    std::vector<Nat> ramp;
    for (std::size_t i = 0; i < measure.arity(); ++i) ramp.emplace_back(i + 2);
    probes.emplace_back(std::move(ramp));

    const ComplexityVector zero = ComplexityVector::zeros(measure.arity());
    for (const auto& v : probes) {
        if (!(measure.plus(v, zero) == v) || !(measure.plus(zero, v) == v))
            violations.push_back(measure.name() + ": t_+ does not absorb the constant vector at " + v.str());
        if (!(measure.times(v, zero) == v) || !(measure.times(zero, v) == v))
            violations.push_back(measure.name() + ": t_x does not absorb the constant vector at " + v.str());
    }
    return violations;
}

MeasureRegistry::MeasureRegistry() {
    measures_.push_back(degree_measure());
    measures_.push_back(pfaffian_measure(true));
}

MeasurePtr MeasureRegistry::find(const std::string& name) const {
    for (const auto& m : measures_)
        if (m->name() == name) return m;
    throw std::invalid_argument("unknown measure: " + name);
}

void MeasureRegistry::add(MeasurePtr measure) {
    const auto violations = validate_measure(*measure);
    if (!violations.empty()) throw std::invalid_argument("measure rejected: " + violations.front());
    for (const auto& m : measures_)
        if (m->name() == measure->name())
            throw std::invalid_argument("duplicate measure name: " + measure->name());
    measures_.push_back(std::move(measure));
}

std::vector<std::string> MeasureRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(measures_.size());
    for (const auto& m : measures_) out.push_back(m->name());
    return out;
}

}  // namespace bettibounds
