#pragma once

/**
 * @file modular_eta.hpp
 * @brief ln|eta(z)| on the whole upper half-plane, including the cusps.
 *
 * Only the magnitude of the Dedekind eta function is computed, always as a
 * logarithm: |eta| underflows double precision long before the real axis.
 *
 * Three routes:
 *  - q-series   ln|eta| = -pi y/12 + sum_{n>=1} ln|1 - e^{2 pi i n z}|, for y >= 1/2;
 *  - reduced    floating reduction to the fundamental domain using
 *               |eta(z+1)| = |eta(z)| and |eta(-1/z)| = |z|^{1/2} |eta(z)|;
 *  - cusp       exact Moebius data at a rational m/k:
 *               |eta(m/k + iy)| = (k y)^{-1/2} |eta(n/k + i/(k^2 y))|, m n = 1 (mod k).
 */

#include "rational.hpp"

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace popcorn {

/// A real number that may carry its exact rational value.
struct tagged_real {
    double value = 0.0;
    std::optional<rational> exact;

    tagged_real() = default;
    tagged_real(double v) : value(v) {}  // NOLINT: implicit by intent
    tagged_real(const rational& r) : value(r.to_double()), exact(r) {}  // NOLINT
};

/// z = x + i y with y > 0.
struct modular_point {
    tagged_real x;
    double y;

    modular_point(tagged_real x_, double y_) : x(std::move(x_)), y(y_) {
        if (!(y > 0.0) || !std::isfinite(y)) throw std::domain_error("modular_point: need finite y > 0");
        if (!std::isfinite(x.value)) throw std::domain_error("modular_point: non-finite x");
    }
};

enum class eta_method { q_series, reduced, cusp_duality, cusp_asymptotic };

inline std::string_view to_string(eta_method m) {
    switch (m) {
        case eta_method::q_series: return "q-series";
        case eta_method::reduced: return "reduced";
        case eta_method::cusp_duality: return "cusp-duality";
        case eta_method::cusp_asymptotic: return "cusp-asymptotic";
    }
    return "?";
}

struct log_eta_value {
    double log_abs;          // ln|eta(z)|
    eta_method method;
    double certified_error;  // bound on |log_abs - exact|
};

/// Lowest imaginary part accepted by the q-series.
inline constexpr double qseries_floor = 0.5;
inline constexpr int max_reduction_steps = 10000;

/**
 * Direct q-product for y >= 1/2. Terms are added until |q|^n < tol; the
 * certified error is the geometric tail sum_{m>=n} -ln(1-|q|^m) plus a
 * rounding allowance.
 */
inline log_eta_value log_abs_eta_qseries(double x, double y, double tol = 1e-17) {
    if (!(y >= qseries_floor)) throw std::domain_error("log_abs_eta_qseries: y below 1/2, reduce first");
    if (!(tol > 0.0)) throw std::invalid_argument("log_abs_eta_qseries: tol must be > 0");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double r = std::exp(-two_pi * y);
    double sum = 0.0;
    double magnitude = 0.0;
    int n = 1;
    double rn = r;
    for (; rn >= tol; ++n, rn = std::exp(-two_pi * n * y)) {
        const double c = std::cos(two_pi * std::remainder(n * x, 1.0));
        const double term = 0.5 * std::log1p(rn * rn - 2.0 * rn * c);
        sum += term;
        magnitude += std::abs(term);
    }
    const double lead = -std::numbers::pi * y / 12.0;
    const double tail = rn / ((1.0 - r) * (1.0 - rn));
    const double value = lead + sum;
    const double rounding = 4.0 * DBL_EPSILON * (std::abs(lead) + magnitude + n);
    return {value, eta_method::q_series, tail + rounding};
}

inline log_eta_value log_abs_eta_qseries(const modular_point& z, double tol = 1e-17) {
    return log_abs_eta_qseries(z.x.value, z.y, tol);
}

struct reduction {
    double x;
    double y;
    double log_scale;  // ln|eta(z)| = ln|eta(z_reduced)| + log_scale
    int steps;         // number of inversions
};

/**
 * Floating reduction into |x| <= 1/2, |z| >= 1 (up to rounding).
 * Throws when the step cap is hit, which signals that floating x no longer
 * resolves the point (near-rational x at tiny y).
 */
inline reduction reduce_to_fundamental(double x, double y) {
    if (!(y > 0.0) || !std::isfinite(y) || !std::isfinite(x))
        throw std::domain_error("reduce_to_fundamental: need finite x and y > 0");
    reduction out{x, y, 0.0, 0};
    for (;;) {
        out.x -= std::round(out.x);
        const double r2 = out.x * out.x + out.y * out.y;
        if (r2 >= 1.0 - 1e-14) break;
        if (!(r2 > 0.0)) throw std::runtime_error("reduce_to_fundamental: point collapsed onto the real axis");
        if (++out.steps > max_reduction_steps)
            throw std::runtime_error("reduce_to_fundamental: iteration cap exceeded (precision exhausted)");
        out.log_scale -= 0.25 * std::log(r2);
        out.x = -out.x / r2;
        out.y = out.y / r2;
        if (!std::isfinite(out.y)) throw std::runtime_error("reduce_to_fundamental: overflow");
    }
    return out;
}

inline reduction reduce_to_fundamental(const modular_point& z) { return reduce_to_fundamental(z.x.value, z.y); }

/// Reduction followed by the q-series.
inline log_eta_value log_abs_eta_reduced(double x, double y) {
    const auto red = reduce_to_fundamental(x, y);
    const auto base = log_abs_eta_qseries(red.x, red.y);
    const double value = base.log_abs + red.log_scale;
    // Each inversion perturbs x and y by a few ulps relative to their size.
    const double rounding = 8.0 * DBL_EPSILON * (red.steps + 1) * (std::abs(base.log_abs) + std::abs(red.log_scale) + 1.0);
    return {value, eta_method::reduced, base.certified_error + rounding};
}

enum class cusp_mode { exact, asymptotic };

/**
 * ln|eta({m/k} + i y)| from integer Moebius data.
 *
 * exact:      -(1/2) ln(k y) + ln|eta({n/k} + i/(k^2 y))|, valid for all y > 0;
 * asymptotic: -pi/(12 k^2 y) - (1/2) ln(k y), requires y < 1/k^2.
 */
inline log_eta_value log_abs_eta_cusp(std::int64_t m, std::int64_t k, double y, cusp_mode mode) {
    if (k < 1) throw std::invalid_argument("log_abs_eta_cusp: k must be >= 1");
    if (!(y > 0.0) || !std::isfinite(y)) throw std::domain_error("log_abs_eta_cusp: need finite y > 0");
    if (detail::gcd(m, k) != 1) throw std::invalid_argument("log_abs_eta_cusp: gcd(m, k) != 1");
    const auto kd = static_cast<double>(k);
    const double half_log = -0.5 * std::log(kd * y);
    const double dual_y = 1.0 / (kd * kd * y);

    if (mode == cusp_mode::asymptotic) {
        if (!(y < 1.0 / (kd * kd))) throw std::domain_error("log_abs_eta_cusp: asymptotic form needs y < 1/k^2");
        const double lead = -std::numbers::pi * dual_y / 12.0;
        // Dropped: sum_n ln|1 - q'^n| with |q'| = e^{-2 pi dual_y} < e^{-2 pi}.
        const double r = std::exp(-2.0 * std::numbers::pi * dual_y);
        const double dropped = r / ((1.0 - r) * (1.0 - r));
        return {lead + half_log, eta_method::cusp_asymptotic,
                dropped + 4.0 * DBL_EPSILON * (std::abs(lead) + std::abs(half_log))};
    }

    const std::int64_t n = (k == 1) ? 0 : modular_inverse(m, k);
    const double dual_x = static_cast<double>(n) / kd;
    const auto inner = dual_y >= qseries_floor ? log_abs_eta_qseries(dual_x, dual_y) : log_abs_eta_reduced(dual_x, dual_y);
    const double value = half_log + inner.log_abs;
    return {value, eta_method::cusp_duality,
            inner.certified_error + 4.0 * DBL_EPSILON * (std::abs(value) + std::abs(half_log))};
}

/// Rational tags below this height take the exact cusp route.
inline constexpr double cusp_switch_height = 1e-3;

/// Dispatcher: exact cusp route for tagged rational x at small y, otherwise reduce + q-series.
inline log_eta_value log_abs_eta(const modular_point& z) {
    if (z.x.exact && z.y < cusp_switch_height) {
        const auto& r = *z.x.exact;
        return log_abs_eta_cusp(r.numerator(), r.denominator(), z.y, cusp_mode::exact);
    }
    return log_abs_eta_reduced(z.x.value, z.y);
}

struct h_value {
    double value;      // exp(log_value), 0 on underflow
    double log_value;  // ln|eta| + (1/4) ln y
    bool underflow;
};

/// h(z) = |eta(z)| (Im z)^{1/4}, invariant in magnitude under SL(2, Z).
inline h_value h(const modular_point& z) {
    const double lh = log_abs_eta(z).log_abs + 0.25 * std::log(z.y);
    if (lh < -700.0) return {0.0, lh, true};
    return {std::exp(lh), lh, false};
}

struct duality_pair {
    std::int64_t n;  // m n = 1 (mod k)
    h_value lhs;     // h({m/k} + i y)
    h_value rhs;     // h({n/k} + i/(k^2 y))
};

/**
 * Both sides of h({m/k} + iy) = h({n/k} + i/(k^2 y)), each evaluated by the
 * floating reduction route so the identity is actually tested.
 */
inline duality_pair duality_check(std::int64_t m, std::int64_t k, double y) {
    if (k < 1) throw std::invalid_argument("duality_check: k must be >= 1");
    if (!(y > 0.0)) throw std::domain_error("duality_check: y must be > 0");
    if (detail::gcd(m, k) != 1) throw std::invalid_argument("duality_check: gcd(m, k) != 1");
    const std::int64_t n = (k == 1) ? 0 : modular_inverse(m, k);
    std::int64_t mm = m % k;
    if (mm < 0) mm += k;
    const auto kd = static_cast<double>(k);
    const modular_point left{static_cast<double>(mm) / kd, y};
    const modular_point right{static_cast<double>(n) / kd, 1.0 / (kd * kd * y)};
    return {n, h(left), h(right)};
}

}  // namespace popcorn
