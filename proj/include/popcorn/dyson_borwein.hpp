#pragma once

/**
 * @file dyson_borwein.hpp
 * @brief Integrated density of states of the binary-mass chain (heavy mass -> infinity)
 *        and the continued-fraction form of its generating function.
 *
 *   N(lambda) = 1 - ((1-f)/f^2) G(f),   G(z) = sum_{n>=1} z^{floor(n alpha)},
 *   alpha = pi / theta,  cos(theta) = sqrt(lambda + 1) / 2.
 *
 * G also has the continued-fraction representation
 *   G(z) = z/(1-z) * 1/(A_0 + 1/(A_1 + ...)),
 *   A_n = (z^{-Q_n} - z^{-Q_{n-2}}) / (z^{-Q_{n-1}} - 1),
 * where Q_n are the convergent denominators of 1/alpha, i.e. the convergent
 * numerators p_n of alpha = [a_0; a_1, ...], with Q_{-1} = 1, Q_{-2} = 0.
 */

#include "continued_fraction.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace popcorn {

struct dyson_chain {
    double f;           // probability of a heavy mass
    int n_max = 100000; // cap on generating-function terms

    void validate() const {
        if (!(f > 0.0 && f < 1.0)) throw std::domain_error("dyson_chain: f must lie in (0, 1)");
        if (n_max < 1) throw std::domain_error("dyson_chain: n_max must be >= 1");
    }
};

/// theta = arccos(sqrt(lambda + 1) / 2) in (0, pi/2) for lambda in (-1, 3).
inline double theta_of_lambda(double lambda) {
    if (!(lambda > -1.0 && lambda < 3.0)) throw std::domain_error("theta_of_lambda: lambda outside (-1, 3)");
    return std::acos(std::sqrt(lambda + 1.0) / 2.0);
}

/// alpha within the continued-fraction tolerance of an integer is taken as that integer.
inline double snap_alpha(double alpha) {
    const double r = std::round(alpha);
    return std::abs(alpha - r) < default_cf_tolerance ? r : alpha;
}

/// floor(n alpha), with products that land within rounding of an integer counted as that integer.
inline std::int64_t beatty_floor(std::int64_t n, double alpha) {
    const double v = static_cast<double>(n) * alpha;
    const double r = std::round(v);
    if (std::abs(v - r) <= 4.0 * DBL_EPSILON * std::abs(v)) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::floor(v));
}

struct generating_value {
    double value;
    double truncation_bound;
    int terms;
};

/**
 * G(z) = sum_{n>=1} z^{floor(n alpha)}, stopped once the geometric bound
 * z^{(n+1) alpha - 1} / (1 - z^alpha) on the remainder is negligible or
 * `max_terms` is reached.
 */
inline generating_value borwein_series(double z, double alpha, int max_terms = 100000) {
    if (!(z > 0.0 && z < 1.0)) throw std::domain_error("borwein_G: z outside (0, 1)");
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw std::domain_error("borwein_G: alpha must be finite and >= 1");
    if (max_terms < 1) throw std::invalid_argument("borwein_G: need at least one term");
    alpha = snap_alpha(alpha);
    const double lz = std::log(z);
    const double denom = -std::expm1(alpha * lz);
    double sum = 0.0;
    double bound = 0.0;
    int n = 1;
    for (; n <= max_terms; ++n) {
        sum += std::exp(static_cast<double>(beatty_floor(n, alpha)) * lz);
        bound = std::exp(((n + 1) * alpha - 1.0) * lz) / denom;
        if (bound <= 0x1.0p-60 * sum) break;
    }
    return {sum, bound, std::min(n, max_terms)};
}

/// Q_{-2}, Q_{-1}, Q_0, ... for alpha: the numerators of its regular convergents, seeded (0, 1).
inline std::vector<std::int64_t> borwein_denominators(const continued_fraction& cf) {
    std::vector<std::int64_t> q{0, 1};
    for (const auto& c : cf.convergents()) q.push_back(c.p);
    return q;
}

/**
 * Continued-fraction evaluation of G(z) truncated after `depth` partial
 * denominators A_0 .. A_{depth-1}. A_n is assembled from exponent
 * differences, so z^{-Q_n} is never formed; terms beyond the double range
 * become +inf and cut the fraction cleanly.
 *
 * The truncation bound is the gap to the previous approximant (approximants
 * of a fraction with positive terms bracket the limit); it is zero when the
 * expansion of alpha terminates within `depth`.
 */
inline generating_value borwein_cf(double z, double alpha, int depth) {
    if (!(z > 0.0 && z < 1.0)) throw std::domain_error("borwein_G: z outside (0, 1)");
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw std::domain_error("borwein_G: alpha must be finite and >= 1");
    if (depth < 1) throw std::invalid_argument("borwein_G: depth must be >= 1");
    alpha = snap_alpha(alpha);
    const auto cf = continued_fraction_of(alpha, depth);
    const auto q = borwein_denominators(cf);
    const double big_l = -std::log(z);

    std::vector<double> a;
    for (std::size_t i = 2; i < q.size(); ++i) {
        const auto qn = static_cast<double>(q[i]);
        const auto qn1 = static_cast<double>(q[i - 1]);
        const auto qn2 = static_cast<double>(q[i - 2]);
        const double num = -std::expm1(-(qn - qn2) * big_l);
        const double den = -std::expm1(-qn1 * big_l);
        const double growth = (qn - qn1) * big_l;
        a.push_back(growth > 700.0 ? HUGE_VAL : std::exp(growth) * num / den);
    }

    auto evaluate = [&](std::size_t terms) {
        double v = 0.0;
        for (std::size_t i = terms; i-- > 0;) v = 1.0 / (a[i] + v);
        return v;
    };
    const double prefactor = z / (1.0 - z);
    const double value = prefactor * evaluate(a.size());
    const bool terminated = static_cast<int>(cf.depth()) < depth;
    const double previous = a.size() > 1 ? prefactor * evaluate(a.size() - 1) : 0.0;
    const double bound = terminated ? 0.0 : std::abs(value - previous);
    return {value, bound, static_cast<int>(a.size())};
}

enum class borwein_method { series, cf };

inline generating_value borwein_G(double z, double alpha, int depth, borwein_method method) {
    return method == borwein_method::series ? borwein_series(z, alpha) : borwein_cf(z, alpha, depth);
}

/// N(lambda) = 1 - ((1-f)/f^2) sum_{n=1}^{n_max} f^{floor(n pi/theta)}.
inline generating_value integrated_dos_detail(double lambda, const dyson_chain& chain) {
    chain.validate();
    const double alpha = std::numbers::pi / theta_of_lambda(lambda);
    const double c = (1.0 - chain.f) / (chain.f * chain.f);
    const auto g = borwein_series(chain.f, alpha, chain.n_max);
    return {1.0 - c * g.value, c * g.truncation_bound, g.terms};
}

inline double integrated_dos(double lambda, const dyson_chain& chain) {
    return integrated_dos_detail(lambda, chain).value;
}

/// Leading edge behaviour 1 - ((1-f)/f^2) exp(2 pi ln f / sqrt(3 - lambda)), without the periodic modulation.
inline double dos_edge_asymptote(double lambda, double f) {
    if (!(f > 0.0 && f < 1.0)) throw std::domain_error("dos_edge_asymptote: f must lie in (0, 1)");
    if (!(lambda > 2.5 && lambda < 3.0)) throw std::domain_error("dos_edge_asymptote: lambda must lie in (2.5, 3)");
    return 1.0 - (1.0 - f) / (f * f) * std::exp(2.0 * std::numbers::pi * std::log(f) / std::sqrt(3.0 - lambda));
}

}  // namespace popcorn
