#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "bettibounds/bounds.hpp"
#include "bettibounds/cubical.hpp"
#include "bettibounds/formula.hpp"

namespace bettibounds {

/// Raised when a request is outside what the desk-scale oracle can do
/// (dimension > 3, abstract descriptors, quantified verification).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Theorem selection for a quantifier-free formula.  "auto" picks:
/// pure conjunctions of closed atoms get the sharp conjunction theorems
/// (equalities / nonstrict / mixed); otherwise Closed -> closed_set_bound,
/// Open -> the Alexander-dual of the closed bound on the complement,
/// Mixed -> boolean_combination_bound.  An override naming a route whose
/// structural precondition fails is a conflict: recorded as a warning and
/// replaced by the auto route, or escalated to an error under strict.
struct RouteResult {
    Bound bound;
    std::string route;       // theorem actually used
    std::string requested;   // "auto" or the override
    SetClass set_class;
    std::vector<std::string> warnings;
};

RouteResult route_formula_bound(const ComplexityMeasure& measure, const Formula& formula,
                                std::size_t n, const OConstants& consts,
                                const std::string& route_override = "auto", bool strict = false);

/// Grid-scale representative of a normalized formula: f = 0 atoms widen to
/// the band -eps <= f <= eps and strict atoms shrink to f >= delta /
/// f <= -delta.  This is the constructible S_{delta,eps} replacement applied
/// at raster scale, so measure-zero sets and punctures both stay visible.
Formula relax_at_grid_scale(const Formula& f, const Rat& delta, const Rat& eps);

/// Oracle Betti numbers of a concrete formula: the grid-scale representative
/// (delta = eps = twice the cell width) under centre-point rasterization and
/// cubical homology.
BettiVector oracle_betti(const Formula& f, const Rat& radius, std::size_t resolution,
                         const CoefficientField& field);

struct DominationReport {
    RouteResult route;
    BettiVector oracle;
    Nat oracle_sum;
    bool dominates;
    bool stability_warning;  // Betti vector changed under resolution doubling
    std::size_t resolution;
    Rat box_radius;
};

/// Ties the bound engine to ground truth: computes the routed bound and the
/// oracle Betti vector, checks bound >= sum, and doubles the resolution to
/// flag instability.  corrupt_bound_hook substitutes the engine value (test
/// hook for the negative path).
DominationReport verify_domination(const ComplexityMeasure& measure, const Formula& formula,
                                   const std::string& route_override, const Rat& box_radius,
                                   std::size_t resolution, const OConstants& consts,
                                   const CoefficientField& field,
                                   const std::optional<Nat>& corrupt_bound_hook = std::nullopt);

}  // namespace bettibounds
