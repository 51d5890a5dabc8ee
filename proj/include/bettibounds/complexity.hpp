#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bettibounds/nat.hpp"

namespace bettibounds {

/// The m-vector (c_1, ..., c_m) a measure assigns to a function.
class ComplexityVector {
public:
    ComplexityVector() = default;
    explicit ComplexityVector(std::vector<Nat> entries);
    ComplexityVector(std::initializer_list<Nat> entries);

    static ComplexityVector zeros(std::size_t m);

    std::size_t arity() const { return entries_.size(); }
    const Nat& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Nat>& entries() const { return entries_; }

    bool operator==(const ComplexityVector& other) const { return entries_ == other.entries_; }
    bool is_zero() const;

    std::string str() const;

private:
    std::vector<Nat> entries_;
};

struct ArityMismatch : std::invalid_argument {
    ArityMismatch(const std::string& where, std::size_t expected, const ComplexityVector& got);
};

/// An axiomatic complexity measure: the rule family T = (t_+, t_x, t_d, {t_n}).
/// The rule maps act on whole vectors; entry i of the result is the i-th rule
/// applied to the 2m (resp. m, nm) scalar arguments.  The engine treats the
/// rules as the definition of the propagated complexity, i.e. upper-bound
/// semantics: the axioms only demand inequalities, and bounds compose.
class ComplexityMeasure {
public:
    using BinaryRule = std::function<ComplexityVector(const ComplexityVector&, const ComplexityVector&)>;
    using UnaryRule = std::function<ComplexityVector(const ComplexityVector&)>;
    using SolutionRule = std::function<Nat(std::size_t n, const std::vector<ComplexityVector>&)>;
    using DegreeRule = std::function<ComplexityVector(const Nat& degree)>;

    ComplexityMeasure(std::string name, std::size_t arity, BinaryRule plus, BinaryRule times,
                      UnaryRule partial, SolutionRule solution, ComplexityVector norm_squared,
                      DegreeRule from_degree = nullptr, bool constants_absorb = true);

    const std::string& name() const { return name_; }
    std::size_t arity() const { return arity_; }
    bool constants_absorb() const { return constants_absorb_; }

    /// Complexity of |x|^2, needed by every composite recipe.
    const ComplexityVector& norm_squared() const { return norm_squared_; }

    ComplexityVector plus(const ComplexityVector& a, const ComplexityVector& b) const;
    ComplexityVector times(const ComplexityVector& a, const ComplexityVector& b) const;
    ComplexityVector partial(const ComplexityVector& a) const;
    Nat solution_count(std::size_t n, const std::vector<ComplexityVector>& cs) const;

    bool knows_polynomials() const { return static_cast<bool>(from_degree_); }
    /// Complexity of a concrete polynomial of the given total degree; throws
    /// if the measure has no declared polynomial embedding.
    ComplexityVector from_degree(const Nat& degree) const;

    void check_arity(const char* where, const ComplexityVector& v) const;

private:
    std::string name_;
    std::size_t arity_;
    BinaryRule plus_;
    BinaryRule times_;
    UnaryRule partial_;
    SolutionRule solution_;
    ComplexityVector norm_squared_;
    DegreeRule from_degree_;
    bool constants_absorb_;
};

using MeasurePtr = std::shared_ptr<const ComplexityMeasure>;

/// Degree of a polynomial: m = 1, t_+ = max, t_x = sum, t_d = d - 1,
/// t_n = Bezout (product of degrees).
MeasurePtr degree_measure();

/// Pfaffian complexity (alpha, beta, r).  With shared_chain the order of sums
/// and products stays at the common chain order; otherwise orders add.
MeasurePtr pfaffian_measure(bool shared_chain = true);

/// Pfaffian complexity triple of one function.
struct PfaffianComplexity {
    Nat alpha;  // chain degree, >= 1
    Nat beta;   // polynomial degree, >= 1
    Nat order;  // chain order r, >= 0

    PfaffianComplexity(Nat a, Nat b, Nat r);
    ComplexityVector to_vector() const { return ComplexityVector{alpha, beta, order}; }
};

enum class FoldOp { Plus, Times };

/// Left fold of t_+ or t_x over a non-empty list (t_{+,s} / t_{x,s}).
ComplexityVector fold_complexity(const ComplexityMeasure& measure, FoldOp op,
                                 const std::vector<ComplexityVector>& vectors);

/// Entrywise t_d.
ComplexityVector partial_complexity(const ComplexityMeasure& measure, const ComplexityVector& c);

/// kappa(c) = t_+(t_d(c), t_x(0, t_d(c))): complexity after the rotated-gradient
/// substitution, applied vectorwise.
ComplexityVector kappa(const ComplexityMeasure& measure, const ComplexityVector& c);

/// gamma(n, c) = t_n(c, kappa(c), ..., kappa(c)): the critical-point budget of a
/// projection on a hypersurface, the atomic quantity of every bound.
Nat gamma_value(const ComplexityMeasure& measure, std::size_t n, const ComplexityVector& c);

/// Khovanskii's bound M(n, r, alpha, beta_1, ..., beta_n) for a system of n
/// Pfaffian equations with a common chain; this is the Pfaffian t_n.
Nat khovanskii_tn_value(std::size_t n, const std::vector<PfaffianComplexity>& complexities);

/// Omega(F, G) = max(max_i gamma(n, c(f_i^2 + sum g^2 + |x|^2))/2,
///                   gamma(n, c(sum g^2 + |x|^2))/2), with ceiling halving.
/// The second overload substitutes an explicit complexity for |x|^2 in place
/// of the measure's default.
Nat omega_value(const ComplexityMeasure& measure, std::size_t n,
                const std::vector<ComplexityVector>& F, const std::vector<ComplexityVector>& G);
Nat omega_value(const ComplexityMeasure& measure, std::size_t n,
                const std::vector<ComplexityVector>& F, const std::vector<ComplexityVector>& G,
                const ComplexityVector& square_norm_c);

/// Single-family Omega(F) = max_i gamma(n, c(f_i^2 + |x|^2))/2 used by the
/// quantified bound; equals omega_value with G empty.
Nat omega_single_value(const ComplexityMeasure& measure, std::size_t n,
                       const std::vector<ComplexityVector>& F);

/// Absorption probes for a user-supplied measure: combining with the zero
/// vector (a constant) must not change a complexity when the measure declares
/// constants absorb.  Returns human-readable violations; empty means pass.
std::vector<std::string> validate_measure(const ComplexityMeasure& measure);

/// Name -> measure table used by the CLI ("degree", "pfaffian" plus any
/// measures loaded from rule files).
class MeasureRegistry {
public:
    MeasureRegistry();

    MeasurePtr find(const std::string& name) const;  // throws on unknown name
    void add(MeasurePtr measure);                    // validates absorption probes

    std::vector<std::string> names() const;

private:
    std::vector<MeasurePtr> measures_;
};

}  // namespace bettibounds
