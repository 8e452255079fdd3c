#pragma once

/**
 * @file thomae.hpp
 * @brief The popcorn (Thomae) function and its orchard / quotient readings.
 */

#include "continued_fraction.hpp"
#include "rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace popcorn {

/// How a floating-point abscissa is recognised as rational.
struct detection_policy {
    std::int64_t q_max = 10000;
    double delta = 1e-12;
};

/// g(p/q) = 1/q on [0, 1].
template <typename Int>
double popcorn(const basic_rational<Int>& x) {
    if (!x.in_unit_interval()) throw std::domain_error("popcorn: argument outside [0, 1]");
    return 1.0 / static_cast<double>(x.denominator());
}

/// g(x) for a real x in [0, 1]; undetected values count as irrational.
inline double popcorn(double x, const detection_policy& policy) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("popcorn: argument outside [0, 1]");
    if (auto r = detect_rational(x, policy.q_max, policy.delta)) return popcorn(*r);
    return 0.0;
}

/// Where the first visible tree (p, q) of the orchard lands, and how tall it looks.
struct orchard_point {
    double position;
    double height;
};

inline orchard_point orchard_projection(std::int64_t p, std::int64_t q) {
    if (p < 1 || q < 1) throw std::invalid_argument("orchard_projection: p, q must be >= 1");
    if (detail::gcd(p, q) != 1) throw std::invalid_argument("orchard_projection: p, q not coprime");
    const double s = static_cast<double>(p + q);
    return {static_cast<double>(p) / s, 1.0 / s};
}

/**
 * P(nu = p/(p+q)) = sum_{n>=1} (1-eps)^{n(p+q)} = t/(1-t), t = (1-eps)^{p+q}.
 *
 * Evaluated through log1p/expm1 so that eps -> 0 keeps full precision.
 */
inline double quotient_distribution(std::int64_t p, std::int64_t q, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("quotient_distribution: eps outside (0, 1)");
    if (p < 0 || q < 0 || p + q < 1) throw std::invalid_argument("quotient_distribution: need p, q >= 0, p + q >= 1");
    if (detail::gcd(p, q) != 1) throw std::invalid_argument("quotient_distribution: p, q not coprime");
    const double log_t = static_cast<double>(p + q) * std::log1p(-eps);
    return std::exp(log_t) / -std::expm1(log_t);
}

}  // namespace popcorn
