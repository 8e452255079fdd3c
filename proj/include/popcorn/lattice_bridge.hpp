#pragma once

/**
 * @file lattice_bridge.hpp
 * @brief Epstein zeta of the unit-determinant form Q'(m,n) = (x m - n)^2/eps + eps m^2,
 *        the Kronecker limit, the theta peaks and the popcorn-from-eta regularisation.
 */

#include "modular_eta.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace popcorn {

inline constexpr double euler_gamma = 0.57721566490153286061;

/// Q'(m,n) = (x m - n)^2 / eps + eps m^2; determinant 1 for every (x, eps).
struct quadratic_form_q {
    double x;
    double eps;

    quadratic_form_q(double x_, double eps_) : x(x_), eps(eps_) {
        // x = 0 is admitted as the square-lattice limit.
        if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("quadratic_form_q: x must lie in [0, 1)");
        if (!(eps > 0.0) || !std::isfinite(eps)) throw std::domain_error("quadratic_form_q: eps must be > 0");
    }

    [[nodiscard]] double operator()(double m, double n) const {
        const double u = x * m - n;
        return u * u / eps + eps * m * m;
    }

    /// a c - b^2 for Q = a m^2 + 2 b m n + c n^2.
    // Q' = |L (m, n)|^2 with L = [[x/s, -1/s], [s, 0]], s = sqrt(eps); det Q' = det(L)^2.
    // Going through L avoids the x^2/eps^2 cancellation in a c - b^2.
    [[nodiscard]] double determinant() const {
        const double s = std::sqrt(eps);
        const double det_l = (x / s) * 0.0 + (1.0 / s) * s;
        return det_l * det_l;
    }
};

namespace detail {

struct neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + comp; }
};

}  // namespace detail

/// sum of Q'(m,n)^{-s} over 0 < max(|m|,|n|) <= R; `half_plane` sums one of each +-(m,n) pair.
inline double epstein_lattice_sum(double s, const quadratic_form_q& form, int radius, bool half_plane = false) {
    if (!(s > 1.0)) throw std::domain_error("epstein_lattice_sum: s must be > 1");
    if (radius < 1) throw std::invalid_argument("epstein_lattice_sum: radius must be >= 1");
    detail::neumaier acc;
    const int m_lo = half_plane ? 0 : -radius;
    for (int m = m_lo; m <= radius; ++m) {
        double row = 0.0;
        const int n_lo = (half_plane && m == 0) ? 1 : -radius;
        for (int n = n_lo; n <= radius; ++n) {
            if (m == 0 && n == 0) continue;
            row += std::pow(form(m, n), -s);
        }
        acc.add(row);
    }
    return acc.value();
}

/**
 * Continuum integral of Q'^{-s} outside the square max(|m|,|n|) <= half_side.
 *
 * In polar coordinates Q' = rho^2 q(phi) and the square boundary sits at
 * rho = half_side / max(|cos|,|sin|), which gives
 *   half_side^{2-2s} / (2(s-1)) * int_0^{2pi} q(phi)^{-s} max(|cos|,|sin|)^{2s-2} dphi.
 * Each octant is smooth, so composite Simpson per octant converges fast.
 */
inline double epstein_continuum_tail(double s, const quadratic_form_q& form, double half_side) {
    if (!(s > 1.0)) throw std::domain_error("epstein_continuum_tail: s must be > 1");
    constexpr int octants = 8;
    constexpr int panels = 2048;  // even
    const double h = std::numbers::pi / 4.0 / panels;
    auto integrand = [&](double phi) {
        const double c = std::cos(phi), sn = std::sin(phi);
        const double q = form(c, sn);
        const double mx = std::max(std::abs(c), std::abs(sn));
        return std::pow(q, -s) * std::pow(mx, 2.0 * s - 2.0);
    };
    double integral = 0.0;
    for (int o = 0; o < octants; ++o) {
        const double a = o * std::numbers::pi / 4.0;
        double part = integrand(a) + integrand(a + panels * h);
        for (int i = 1; i < panels; ++i) part += (i % 2 ? 4.0 : 2.0) * integrand(a + i * h);
        integral += part * h / 3.0;
    }
    return std::pow(half_side, 2.0 - 2.0 * s) / (2.0 * (s - 1.0)) * integral;
}

struct epstein_value {
    double value;         // lattice_sum + tail
    double lattice_sum;
    double tail;          // continuum correction actually applied
    double leading_tail;  // (pi/(s-1)) R^{-2(s-1)}, the leading-order estimate of the tail
};

/// Truncated Epstein zeta with a continuum correction for |(m,n)| beyond the square.
inline epstein_value epstein_zeta_truncated(double s, const quadratic_form_q& form, int radius) {
    if (!(s > 1.0)) throw std::domain_error("epstein_zeta_truncated: s must be > 1 (pole at s = 1)");
    if (radius < 10) throw std::invalid_argument("epstein_zeta_truncated: radius must be >= 10");
    const double lattice = 2.0 * epstein_lattice_sum(s, form, radius, true);
    const double tail = epstein_continuum_tail(s, form, radius + 0.5);
    const double leading = std::numbers::pi / (s - 1.0) * std::pow(static_cast<double>(radius), -2.0 * (s - 1.0));
    return {lattice + tail, lattice, tail, leading};
}

/**
 * First Kronecker limit formula for Q' at s = 1 + tau (terms O(tau) dropped):
 *   pi/tau + 2 pi (gamma + ln sqrt(1/(4 eps)) - 2 ln|eta(x + i eps)|).
 */
inline double kronecker_rhs(const quadratic_form_q& form, double tau) {
    if (!(tau > 0.0 && tau <= 0.2)) throw std::domain_error("kronecker_rhs: tau must lie in (0, 0.2]");
    const double log_eta = log_abs_eta(modular_point{form.x, form.eps}).log_abs;
    return std::numbers::pi / tau +
           2.0 * std::numbers::pi * (euler_gamma + 0.5 * std::log(1.0 / (4.0 * form.eps)) - 2.0 * log_eta);
}

enum class theta_mode { closed, lattice };

struct theta_value {
    double value;
    double tail_bound;  // 0 for the closed form
};

inline constexpr std::int64_t default_theta_terms = 1000000;

/**
 * theta(p/q) = (2/eps) sum_{q | m} m^{-2} = pi^2 / (3 eps q^2).
 *
 * Lattice mode sums the first `terms` multiples of q (smallest last) and
 * reports the bound (2/(eps q^2)) / terms on the omitted part.
 */
inline theta_value theta_peak(const rational& r, double eps, theta_mode mode,
                              std::int64_t terms = default_theta_terms) {
    if (!(eps > 0.0)) throw std::domain_error("theta_peak: eps must be > 0");
    const auto q = static_cast<double>(r.denominator());
    if (mode == theta_mode::closed)
        return {std::numbers::pi * std::numbers::pi / (3.0 * eps * q * q), 0.0};
    if (terms < 1) throw std::invalid_argument("theta_peak: need at least one term");
    double sum = 0.0;
    for (std::int64_t j = terms; j >= 1; --j) {
        const double m = q * static_cast<double>(j);
        sum += 1.0 / (m * m);
    }
    const double scale = 2.0 / eps;
    return {scale * sum, scale / (q * q) / static_cast<double>(terms)};
}

/// Untagged reals count as irrational and get 0.
inline theta_value theta_peak(const tagged_real& x, double eps, theta_mode mode,
                              std::int64_t terms = default_theta_terms) {
    if (!x.exact) return {0.0, 0.0};
    return theta_peak(*x.exact, eps, mode, terms);
}

struct popcorn_eta_value {
    double value;
    bool clamped;  // radicand was negative and was set to 0
    log_eta_value eta;
};

/// g(x) ~ sqrt(-(12 eps / pi) ln|eta(x + i eps)|), meaningful for x = p/q with q << eps^{-1/2}.
inline popcorn_eta_value popcorn_from_eta(const tagged_real& x, double eps) {
    if (!(x.value > 0.0 && x.value < 1.0)) throw std::domain_error("popcorn_from_eta: x must lie in (0, 1)");
    if (!(eps > 0.0 && eps <= 1e-3)) throw std::domain_error("popcorn_from_eta: eps must lie in (0, 1e-3]");
    const auto eta = log_abs_eta(modular_point{x, eps});
    const double radicand = -(12.0 * eps / std::numbers::pi) * eta.log_abs;
    if (radicand < 0.0) return {0.0, true, eta};
    return {std::sqrt(radicand), false, eta};
}

/// -ln|eta(p/q + i eps)| - pi / (12 eps q^2); tends to (1/2) ln(q eps) < 0.
inline double residual_check(const rational& x, double eps) {
    if (!(eps >= 1e-10 && eps <= 1e-3)) throw std::domain_error("residual_check: eps must lie in [1e-10, 1e-3]");
    const auto q = static_cast<double>(x.denominator());
    const double neg_log_eta = -log_abs_eta(modular_point{x, eps}).log_abs;
    return neg_log_eta - std::numbers::pi / (12.0 * eps * q * q);
}

/// Popcorn-scale profile of the spectral density: x = arccos(lambda/2)/pi.
inline popcorn_eta_value rho_from_eta(double lambda, double eps) {
    if (!(std::abs(lambda) < 2.0)) throw std::domain_error("rho_from_eta: |lambda| must be < 2");
    const double x = std::acos(lambda / 2.0) / std::numbers::pi;
    return popcorn_from_eta(tagged_real{x}, eps);
}

}  // namespace popcorn
