#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bettibounds/complexity.hpp"
#include "bettibounds/formula.hpp"

namespace bettibounds {

/// Where a bound came from: the theorem, its parameters, and every O-constant
/// that was substituted (defaults included), so results are reproducible
/// formulas rather than asymptotic claims.
struct Provenance {
    std::string theorem;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::map<std::string, std::uint64_t> o_constants;
    std::vector<std::string> trace;
};

struct Bound {
    Nat value;
    Provenance provenance;
};

Bound make_bound(Nat value, Provenance provenance);

/// Named positive integers standing in for the paper's implicit O(.)
/// constants; unset names read as 1.
class OConstants {
public:
    OConstants() = default;

    void set(const std::string& name, std::uint64_t k);
    std::uint64_t get(const std::string& name) const;

    const std::map<std::string, std::uint64_t>& values() const { return values_; }

private:
    std::map<std::string, std::uint64_t> values_;
};

/// Shape data of a quantifier prefix: widths n_0..n_nu, partial sums u_j,
/// partial products w_j, and the worst-case t_j sequence of the fiber-power
/// recursion (t_j = t_{j-1} + n_j (p_j + 1) with p_j = t_{j-1} + |K|), where
/// |K| is capped by the ambient dimension n_0 + ... + n_nu.
class QuantifierProfile {
public:
    explicit QuantifierProfile(std::vector<std::size_t> widths);  // n_0..n_nu, all >= 1
    static QuantifierProfile of(const QuantifiedFormula& qf);

    std::size_t nu() const { return widths_.size() - 1; }
    const std::vector<std::size_t>& widths() const { return widths_; }
    Nat u(std::size_t j) const;
    Nat w(std::size_t j) const;
    Nat t(std::size_t j) const;
    const Nat& k_cap() const { return k_cap_; }

    std::string str() const;

private:
    std::vector<std::size_t> widths_;
    std::vector<Nat> u_, w_, t_;
    Nat k_cap_;
};

// --- Bound-carrying wrappers over the complexity kernel ------------------

Bound gamma(const ComplexityMeasure& measure, std::size_t n, const ComplexityVector& c);
Bound khovanskii_tn(std::size_t n, const std::vector<PfaffianComplexity>& complexities);
Bound omega(const ComplexityMeasure& measure, std::size_t n, const std::vector<ComplexityVector>& F,
            const std::vector<ComplexityVector>& G);

// --- Conjunctions of equations and non-strict inequalities ---------------

/// b({f_1 = ... = f_m = 0}) <= ceil(gamma(n, c(sum f_i^2 + |x|^2)) / 2).
Bound equalities_bound(const ComplexityMeasure& measure, std::size_t n,
                       const std::vector<ComplexityVector>& fs);

/// b({f_1 >= 0, ..., f_p >= 0}) <= ceil(gamma(n, c(|x|^2 f_1...f_p)) / 2).
Bound nonstrict_bound(const ComplexityMeasure& measure, std::size_t n,
                      const std::vector<ComplexityVector>& fs);

/// Combined equations + non-strict inequalities:
/// ceil(gamma(n, c(|x|^2 (sum eq^2)^2 prod ineq)) / 2).
Bound mixed_bound(const ComplexityMeasure& measure, std::size_t n,
                  const std::vector<ComplexityVector>& eqs,
                  const std::vector<ComplexityVector>& ineqs);

// --- Sign conditions, closed sets, Boolean combinations ------------------

/// b_i over all sign conditions: sum_{j=0}^{n'-i} C(s,j) 4^j Omega.
Bound sign_conditions_bound(std::size_t i, std::size_t s, std::size_t n_prime, const Bound& omega);

/// Closed sets: sum_{i=0}^{n'} sum_{j=0}^{n'-i} C(s,j) 6^j Omega.
Bound closed_set_bound(std::size_t s, std::size_t n_prime, const Bound& omega);

/// Arbitrary Boolean combinations: sum_{i=0}^{n} sum_{j=1}^{n-i}
/// C(2s^2+1, j) 6^j Omega(F', {}), where F' adjoins |x|^2 to the atoms.
Bound boolean_combination_bound(std::size_t n, std::size_t s, const Bound& omega_prime);

// --- Projections and quantifiers ------------------------------------------

/// b_k of a projection with base dimension n and fiber dimension fiber_dim:
/// ((k^3+4k^2+5k+2)/2 * s)^(n+(k+1)r) * c * sum_p gamma(n+(p+1)r, ...).
Bound projection_bound(const ComplexityMeasure& measure, std::size_t k, std::size_t n,
                       std::size_t fiber_dim, std::size_t s,
                       const std::vector<ComplexityVector>& fs, const OConstants& consts);

/// Main quantified bound: (2^{nu^2} u_nu^nu s w_{nu-1})^{c (2u_nu)^nu w_nu} * Omega(F),
/// with F = {g, |x|^2}, c(g) = atom_complexity, over R^{t_nu}.
Bound quantified_bound(const ComplexityMeasure& measure, const QuantifierProfile& profile,
                       std::size_t s, const ComplexityVector& atom_complexity,
                       const OConstants& consts);

/// Number of atoms in the fully unrolled quantifier-elimination summand set;
/// exact printed expression, no O-constants.
Bound atom_count(const QuantifierProfile& profile, std::size_t s, const OConstants& consts);

/// Number of additive terms in the full alternating sum:
/// 2^(c i^2 (2 u_nu)^i w_{i-2}), i >= 2.
Bound term_count(const QuantifierProfile& profile, std::size_t i, const OConstants& consts);

/// The t_j sequence with the internal consistency check t_j <= (2|K|)^j w_j + 1.
std::vector<Bound> t_sequence(const QuantifierProfile& profile);

// --- Combinators -----------------------------------------------------------

/// Mayer-Vietoris union bound: sum over non-empty subsets J of piece indices
/// of a supplied bound on b_{i-|J|+1} of the J-intersection.  Subsets are
/// bitmasks over piece_count pieces; subsets with |J| > i+1 contribute zero
/// (negative degree), marked-empty intersections contribute zero, any other
/// missing subset is an error.
Bound mv_union_bound(std::size_t i, std::size_t piece_count,
                     const std::map<std::uint64_t, Bound>& piece_bounds,
                     const std::set<std::uint64_t>& empty_intersections = {});

/// Alexander duality transfer: a bound on reduced b~_{n-q-1}(X u thick
/// boundary) bounds b_q(cube \ X).  Requires q <= n-1.
Bound alexander_dual(std::size_t q, std::size_t n, const Bound& reduced_augmented);

/// Reduced-from-unreduced adjustment: subtract 1 at degree 0 only.
Bound reduced_from_unreduced(std::size_t degree, const Bound& unreduced);

/// Fiber-product (spectral sequence) bound: b_k(Y) <= sum_{p+q=k} b_q(W_p);
/// w_bounds[p] must bound b_{k-p}(W_p), for p = 0..k.
Bound fiber_product_bound(std::size_t k, const std::vector<Bound>& w_bounds);

}  // namespace bettibounds
