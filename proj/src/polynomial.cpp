#include "bettibounds/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bettibounds {

Polynomial Polynomial::constant(std::size_t n_vars, const Rat& value) {
    Polynomial p(n_vars);
    p.add_term(Exponents(n_vars, 0), value);
    return p;
}

Polynomial Polynomial::variable(std::size_t n_vars, std::size_t index) {
    if (index >= n_vars) throw std::out_of_range("variable index out of range");
    Polynomial p(n_vars);
    Exponents e(n_vars, 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

Polynomial Polynomial::norm_squared(std::size_t n_vars) {
    Polynomial p(n_vars);
    for (std::size_t i = 0; i < n_vars; ++i) {
        Exponents e(n_vars, 0);
        e[i] = 2;
        p.add_term(e, 1);
    }
    return p;
}

Nat Polynomial::total_degree() const {
    Nat best = 0;
    for (const auto& [exps, coeff] : terms_) {
        const unsigned d = std::accumulate(exps.begin(), exps.end(), 0u);
        best = nat_max(best, Nat(d));
    }
    return best;
}

void Polynomial::add_term(const Exponents& exps, const Rat& coeff) {
    if (exps.size() != n_vars_) throw std::invalid_argument("exponent vector arity mismatch");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(exps, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    if (n_vars_ != other.n_vars_) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial out = *this;
    for (const auto& [e, c] : other.terms_) out.add_term(e, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (n_vars_ != other.n_vars_) throw std::invalid_argument("polynomial arity mismatch");
    Polynomial out(n_vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            Exponents e(n_vars_);
            for (std::size_t i = 0; i < n_vars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(n_vars_);
    for (const auto& [e, c] : terms_) out.add_term(e, -c);
    return out;
}

Polynomial Polynomial::operator+(const Rat& c) const {
    Polynomial out = *this;
    out.add_term(Exponents(n_vars_, 0), c);
    return out;
}

Polynomial Polynomial::operator-(const Rat& c) const { return *this + Rat(-c); }

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = Polynomial::constant(n_vars_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        base = base * base;
        e >>= 1u;
    }
    return result;
}

Rat Polynomial::eval(const std::vector<Rat>& point) const {
    if (point.size() != n_vars_) throw std::invalid_argument("evaluation point arity mismatch");
    Rat total = 0;
    for (const auto& [exps, coeff] : terms_) {
        Rat term = coeff;
        for (std::size_t i = 0; i < n_vars_; ++i) {
            for (unsigned k = 0; k < exps[i]; ++k) term *= point[i];
        }
        total += term;
    }
    return total;
}

Polynomial Polynomial::widened(std::size_t new_n_vars) const {
    if (new_n_vars < n_vars_) throw std::invalid_argument("widened: cannot shrink variable count");
    Polynomial out(new_n_vars);
    for (const auto& [exps, coeff] : terms_) {
        Exponents e = exps;
        e.resize(new_n_vars, 0);
        out.add_term(e, coeff);
    }
    return out;
}

bool Polynomial::operator<(const Polynomial& other) const {
    if (n_vars_ != other.n_vars_) return n_vars_ < other.n_vars_;
    return terms_ < other.terms_;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    // Highest total degree first, then reverse-lex on exponents, for stable output.
    std::vector<const std::pair<const Exponents, Rat>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        const unsigned da = std::accumulate(a->first.begin(), a->first.end(), 0u);
        const unsigned db = std::accumulate(b->first.begin(), b->first.end(), 0u);
        if (da != db) return da > db;
        return a->first > b->first;
    });
    bool first = true;
    for (const auto* t : order) {
        const auto& [exps, coeff] = *t;
        Rat c = coeff;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        const bool is_const = std::all_of(exps.begin(), exps.end(), [](unsigned e) { return e == 0; });
        const bool unit = (c == 1);
        // Unit-coefficient terms print as juxtaposed powers ("x0 x1^2"); terms
        // with a coefficient use the starred form ("3*x0*x1^2").  Both shapes
        // are inside the grammar, so printed text always re-parses.
        if (is_const || !unit) {
            os << numerator(c).str();
            if (denominator(c) != 1) os << "/" << denominator(c).str();
        }
        bool first_var = true;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!unit) os << "*";
            else if (!first_var) os << " ";
            first_var = false;
            os << "x" << i;
            if (exps[i] > 1) os << "^" << exps[i];
        }
    }
    return os.str();
}

}  // namespace bettibounds
