#include "bettibounds/parser.hpp"

#include <cctype>
#include <map>

namespace bettibounds {

ParseError::ParseError(std::size_t line_, std::size_t column_, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) +
                         ": " + message),
      line(line_),
      column(column_) {}

namespace {

class FormulaParser {
public:
    FormulaParser(const std::string& text, std::optional<std::size_t> n_vars)
        : text_(text), declared_n_(n_vars) {}

    Formula parse_formula_top() {
        Formula f = parse_or();
        skip_ws();
        if (!eof()) fail("unexpected trailing input");
        return finish(std::move(f));
    }

    QuantifiedFormula parse_quantified_top(std::size_t free_dim) {
        std::vector<QuantifierBlock> blocks;
        skip_ws();
        while (!eof() && (peek() == 'E' || peek() == 'A')) {
            const char q = get();
            expect('(');
            const unsigned long width = parse_uint("block width");
            expect(')');
            blocks.push_back({q == 'E' ? Quantifier::Exists : Quantifier::ForAll, width});
            skip_ws();
        }
        if (blocks.empty()) fail("expected quantifier block 'E(k)' or 'A(k)'");
        expect(':');
        // The ambient dimension of the matrix is pinned by the prefix.
        std::size_t total = free_dim;
        for (const auto& b : blocks) total += b.width;
        if (declared_n_ && *declared_n_ != total) fail("declared dimension disagrees with prefix widths");
        declared_n_ = total;
        Formula matrix = parse_or();
        skip_ws();
        if (!eof()) fail("unexpected trailing input");
        return QuantifiedFormula(std::move(blocks), free_dim, finish(std::move(matrix)));
    }

    Polynomial parse_poly_top() {
        Polynomial p = parse_poly();
        skip_ws();
        if (!eof()) fail("unexpected trailing input");
        if (declared_n_) return p.widened(*declared_n_);
        return p.widened(max_index_seen_);
    }

private:
    Formula parse_or() {
        std::vector<Formula> parts{parse_and()};
        for (;;) {
            skip_ws();
            if (!accept('|')) break;
            parts.push_back(parse_and());
        }
        if (parts.size() == 1) return std::move(parts.front());
        return Formula::or_of(std::move(parts));
    }

    Formula parse_and() {
        std::vector<Formula> parts{parse_unary()};
        for (;;) {
            skip_ws();
            if (!accept('&')) break;
            parts.push_back(parse_unary());
        }
        if (parts.size() == 1) return std::move(parts.front());
        return Formula::and_of(std::move(parts));
    }

    Formula parse_unary() {
        skip_ws();
        if (accept('!')) return Formula::not_of(parse_unary());
        if (accept('(')) {
            Formula f = parse_or();
            expect(')');
            return f;
        }
        return parse_atom();
    }

    Formula parse_atom() {
        Polynomial p = parse_poly();
        skip_ws();
        Rel rel;
        if (accept('>')) rel = accept('=') ? Rel::GE : Rel::GT;
        else if (accept('<')) rel = accept('=') ? Rel::LE : Rel::LT;
        else if (accept('=')) rel = Rel::EQ;
        else {
            fail("expected relational operator");
            rel = Rel::EQ;
        }
        skip_ws();
        if (!accept('0')) fail("atoms compare against literal 0");
        if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) fail("atoms compare against literal 0");
        pending_atoms_.push_back({std::move(p), rel});
        return Formula::atom(Polynomial(0), rel);  // polynomial patched in finish()
    }

    // Atom polynomials are widened to the final ambient dimension and pooled
    // once the whole formula is read, so identical polynomials share one
    // descriptor even when parsed at different prefixes of the text.
    Formula finish(Formula&& raw) {
        const std::size_t n = declared_n_ ? *declared_n_ : max_index_seen_;
        std::map<Polynomial, FnPtr> pool;
        std::size_t cursor = 0;
        return patch(raw, n, pool, cursor);
    }

    Formula patch(const Formula& f, std::size_t n, std::map<Polynomial, FnPtr>& pool,
                  std::size_t& cursor) {
        switch (f.kind()) {
            case Formula::Kind::Atom: {
                const auto& [poly, rel] = pending_atoms_[cursor++];
                Polynomial wide = poly.widened(n);
                auto it = pool.find(wide);
                if (it == pool.end())
                    it = pool.emplace(wide, FunctionDescriptor::polynomial(wide)).first;
                return Formula::atom(it->second, rel);
            }
            case Formula::Kind::Not:
                return Formula::not_of(patch(f.children().front(), n, pool, cursor));
            case Formula::Kind::And:
            case Formula::Kind::Or: {
                std::vector<Formula> kids;
                kids.reserve(f.children().size());
                for (const Formula& child : f.children()) kids.push_back(patch(child, n, pool, cursor));
                return f.kind() == Formula::Kind::And ? Formula::and_of(std::move(kids))
                                                      : Formula::or_of(std::move(kids));
            }
        }
        fail("unreachable");
        return f;
    }

    Polynomial parse_poly() {
        skip_ws();
        Polynomial acc(0);
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (accept('-')) sign = -1;
            else if (accept('+')) sign = 1;
            else if (!first) break;
            skip_ws();
            Polynomial term = parse_term();
            const std::size_t n = std::max(acc.n_vars(), term.n_vars());
            acc = acc.widened(n) + (sign < 0 ? -term.widened(n) : term.widened(n));
            first = false;
        }
        return acc;
    }

    Polynomial parse_term() {
        skip_ws();
        if (eof()) fail("expected term");
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            const Rat coeff = parse_coeff();
            Polynomial p = Polynomial::constant(0, coeff);
            for (;;) {
                skip_ws();
                if (!accept('*')) break;
                Polynomial v = parse_var_power();
                const std::size_t n = std::max(p.n_vars(), v.n_vars());
                p = p.widened(n) * v.widened(n);
            }
            return p;
        }
        if (peek() == 'x') {
            Polynomial p = parse_var_power();
            for (;;) {
                skip_ws();
                if (eof() || peek() != 'x') break;
                Polynomial v = parse_var_power();
                const std::size_t n = std::max(p.n_vars(), v.n_vars());
                p = p.widened(n) * v.widened(n);
            }
            return p;
        }
        fail("expected coefficient or variable");
        return Polynomial(0);
    }

    Polynomial parse_var_power() {
        skip_ws();
        if (eof() || get() != 'x') fail("expected variable 'x<index>'");
        const unsigned long idx = parse_uint("variable index", /*allow_ws_before=*/false);
        if (declared_n_ && idx >= *declared_n_)
            fail("unknown variable x" + std::to_string(idx) + " (ambient dimension is " +
                 std::to_string(*declared_n_) + ")");
        max_index_seen_ = std::max(max_index_seen_, static_cast<std::size_t>(idx) + 1);
        unsigned long exp = 1;
        if (!eof() && peek() == '^') {
            ++pos_;
            exp = parse_uint("exponent", /*allow_ws_before=*/false);
        }
        Polynomial p = Polynomial::variable(idx + 1, idx);
        return p.pow(static_cast<unsigned>(exp));
    }

    Rat parse_coeff() {
        const Nat num = parse_nat("coefficient");
        if (!eof() && peek() == '/') {
            ++pos_;
            const Nat den = parse_nat("denominator", /*allow_ws_before=*/false);
            if (den == 0) fail("zero denominator");
            return Rat(num) / Rat(den);
        }
        return Rat(num);
    }

    Nat parse_nat(const char* what, bool allow_ws_before = true) {
        if (allow_ws_before) skip_ws();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what);
        std::string digits;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(get());
        return Nat(digits);
    }

    unsigned long parse_uint(const char* what, bool allow_ws_before = true) {
        const Nat v = parse_nat(what, allow_ws_before);
        if (v > 1000000) fail(std::string(what) + " out of range");
        return v.convert_to<unsigned long>();
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() { return text_[pos_++]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (!eof() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, msg);
    }

    const std::string& text_;
    std::optional<std::size_t> declared_n_;
    std::size_t pos_ = 0;
    std::size_t max_index_seen_ = 0;
    std::vector<std::pair<Polynomial, Rel>> pending_atoms_;
};

}  // namespace

Formula parse_formula(const std::string& text, std::optional<std::size_t> n_vars) {
    return FormulaParser(text, n_vars).parse_formula_top();
}

QuantifiedFormula parse_quantified(const std::string& text, std::size_t free_dim,
                                   std::optional<std::size_t> n_vars) {
    return FormulaParser(text, n_vars).parse_quantified_top(free_dim);
}

Polynomial parse_polynomial(const std::string& text, std::optional<std::size_t> n_vars) {
    return FormulaParser(text, n_vars).parse_poly_top();
}

}  // namespace bettibounds
