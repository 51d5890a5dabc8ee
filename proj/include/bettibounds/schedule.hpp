#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "bettibounds/polynomial.hpp"

namespace bettibounds {

/// Concrete numeric realization of the chain
///   0 < eps_0 << delta_0 << eps_1 << ... << eps_m << delta_m << 1
/// as powers of one rational lambda in (0,1):
///   delta_k = lambda^(2(m-k)+1),  eps_k = lambda^(2(m-k)+2).
/// Regenerating from (lambda, m) reproduces every value bit-exactly.
class EpsilonSchedule {
public:
    EpsilonSchedule(Rat lambda, std::size_t m);

    const Rat& lambda() const { return lambda_; }
    std::size_t chain_length() const { return m_; }

    Rat delta(std::size_t k) const;    // k <= m
    Rat epsilon(std::size_t k) const;  // k <= m

    /// lambda^j; the closed-approximation recursion draws its eps_1..eps_2t
    /// from these descending powers.
    Rat lambda_power(std::size_t j) const;

    std::string str() const;

private:
    Rat lambda_;
    std::size_t m_;
};

inline EpsilonSchedule::EpsilonSchedule(Rat lambda, std::size_t m) : lambda_(std::move(lambda)), m_(m) {
    if (!(lambda_ > 0 && lambda_ < 1))
        throw std::invalid_argument("schedule lambda must lie strictly between 0 and 1");
}

inline Rat EpsilonSchedule::lambda_power(std::size_t j) const {
    Rat v = 1;
    for (std::size_t i = 0; i < j; ++i) v *= lambda_;
    return v;
}

inline Rat EpsilonSchedule::delta(std::size_t k) const {
    if (k > m_) throw std::out_of_range("schedule exhausted: delta index > m");
    return lambda_power(2 * (m_ - k) + 1);
}

inline Rat EpsilonSchedule::epsilon(std::size_t k) const {
    if (k > m_) throw std::out_of_range("schedule exhausted: epsilon index > m");
    return lambda_power(2 * (m_ - k) + 2);
}

inline std::string EpsilonSchedule::str() const {
    return "lambda=" + numerator(lambda_).str() + "/" + denominator(lambda_).str() +
           " m=" + std::to_string(m_);
}

}  // namespace bettibounds
