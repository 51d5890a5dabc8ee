#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <vector>

#include "bettibounds/nat.hpp"

namespace bettibounds {

using Rat = boost::multiprecision::cpp_rational;

/// Sparse multivariate polynomial with exact rational coefficients.  The
/// oracle evaluates signs exactly, so floats never appear.
class Polynomial {
public:
    using Exponents = std::vector<unsigned>;  // length n_vars

    explicit Polynomial(std::size_t n_vars) : n_vars_(n_vars) {}

    static Polynomial constant(std::size_t n_vars, const Rat& value);
    static Polynomial variable(std::size_t n_vars, std::size_t index);
    /// x_0^2 + ... + x_{n-1}^2.
    static Polynomial norm_squared(std::size_t n_vars);

    std::size_t n_vars() const { return n_vars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Rat>& terms() const { return terms_; }

    /// Total degree; the zero polynomial has degree 0 (it is a constant).
    Nat total_degree() const;

    void add_term(const Exponents& exps, const Rat& coeff);

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator-() const;
    Polynomial operator+(const Rat& c) const;
    Polynomial operator-(const Rat& c) const;
    Polynomial pow(unsigned e) const;

    Rat eval(const std::vector<Rat>& point) const;

    /// Re-embed into a space with more variables (same indices).
    Polynomial widened(std::size_t new_n_vars) const;

    bool operator==(const Polynomial& other) const {
        return n_vars_ == other.n_vars_ && terms_ == other.terms_;
    }
    bool operator<(const Polynomial& other) const;

    /// Canonical text in the formula grammar, e.g. "x0^2 + x1^2 - 1".
    std::string str() const;

private:
    std::size_t n_vars_;
    std::map<Exponents, Rat> terms_;
};

}  // namespace bettibounds
