#pragma once

#include <cstdint>
#include <vector>

#include "bettibounds/formula.hpp"
#include "bettibounds/schedule.hpp"

namespace bettibounds {

/// A sign condition on an ordered function list: one of -1, 0, +1 per
/// function.  Only grid-witnessed conditions are ever materialized.
struct SignCondition {
    std::vector<std::int8_t> signs;

    std::size_t level() const;  // number of zero entries
    bool operator==(const SignCondition& other) const { return signs == other.signs; }
    bool operator<(const SignCondition& other) const { return signs < other.signs; }
    std::string str() const;
};

/// Finite sampling lattice: points_per_axis equally spaced points spanning
/// [-radius, radius] inclusive; an odd count hits the origin.
struct GridSpec {
    Rat radius;
    std::size_t points_per_axis;
};

/// Sign vectors witnessed at at least one grid point -- a sound
/// under-approximation of the exact sign-set family (measure-zero sign sets
/// can be missed; see run logs).
std::vector<SignCondition> sign_decompose(const std::vector<FnPtr>& fs, const GridSpec& grid);

/// Truth of a formula given only the signs of its atom functions.
bool formula_holds_under_signs(const Formula& f, const std::vector<FnPtr>& fs,
                               const SignCondition& sigma);

/// S_delta: in each sign set replace h>0 by h >= delta_k and h<0 by
/// h <= -delta_k (equations kept), then conjoin |x|^2 <= 1/delta_k.
Formula build_S_delta(const Formula& f, const EpsilonSchedule& schedule, std::size_t k,
                      const GridSpec& grid);

/// S_{delta,eps}: additionally replace h=0 by -eps_k <= h <= eps_k.
Formula build_S_delta_eps(const Formula& f, const EpsilonSchedule& schedule, std::size_t k,
                          const GridSpec& grid);

/// T = S_{delta_0,eps_0} u ... u S_{delta_m,eps_m} along one schedule.
Formula build_T(const Formula& f, const Rat& lambda, std::size_t m, const GridSpec& grid);

/// The closed approximation X' = X^{t+1}: level-by-level closed replacement
/// over sign-condition levels 0..t, with the eps_j drawn as descending powers
/// of the schedule's lambda.  Set operations are performed symbolically on
/// formulas.  The input must describe a bounded set (clip to a ball first);
/// a sign witness on the sampling-box boundary is rejected.
Formula closed_approximation(const Formula& f, const Rat& lambda, const GridSpec& grid);

}  // namespace bettibounds
