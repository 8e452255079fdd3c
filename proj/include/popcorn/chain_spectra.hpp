#pragma once

/**
 * @file chain_spectra.hpp
 * @brief Spectral density of the exponentially weighted ensemble of path graphs.
 *
 * A chain of n vertices has adjacency eigenvalues 2 cos(pi k / (n+1)),
 * k = 1..n, and enters the ensemble with weight f^n. The density is
 * regularised by a unit-height Lorentzian of width y, so peaks read off the
 * summed weights directly:
 *
 *   rho(lambda) = sum_{n=1}^{n_max} f^n sum_{k=1}^{n} y^2 / ((lambda - 2cos(pi k/(n+1)))^2 + y^2)
 *
 * The density is not normalised to unit mass.
 */

#include "detail/parallel.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace popcorn {

/// Adjacency spectrum of the n-vertex path, descending.
inline std::vector<double> path_eigenvalues(int n) {
    if (n < 1) throw std::invalid_argument("path_eigenvalues: n must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
        out[static_cast<std::size_t>(k - 1)] = 2.0 * std::cos(std::numbers::pi * k / (n + 1));
    return out;
}

/// Parameters of the weighted chain ensemble. `y` is the Lorentzian width;
/// it is independent of the damping 1 - f.
struct chain_ensemble {
    double f = 0.7;
    double y = 2e-3;
    int n_max = 1000;

    /// Truncation bound sum_{n > n_max} f^n * n, an upper bound on the
    /// density lost by cutting the series (each chain contributes at most n).
    [[nodiscard]] double tail_bound() const {
        const double fn1 = std::pow(f, n_max + 1);
        return fn1 * ((n_max + 1) * (1.0 - f) + f) / ((1.0 - f) * (1.0 - f));
    }

    /// Bound on the summed weight sum_{n > n_max} f^n = f^{n_max+1}/(1-f).
    [[nodiscard]] double weight_tail_bound() const {
        return std::pow(f, n_max + 1) / (1.0 - f);
    }

    void validate() const {
        if (!(f > 0.0 && f < 1.0)) throw std::domain_error("chain_ensemble: f must lie in (0, 1)");
        if (!(y > 0.0)) throw std::domain_error("chain_ensemble: y must be > 0");
        if (n_max < 1) throw std::domain_error("chain_ensemble: n_max must be >= 1");
    }

    /// Smallest n_max with f^{n_max+1}/(1-f) below `target`.
    static chain_ensemble with_tail_target(double f, double y, double target = 1e-12) {
        chain_ensemble e{f, y, 1};
        e.validate();
        if (!(target > 0.0)) throw std::domain_error("chain_ensemble: tail target must be > 0");
        const double n = std::log(target * (1.0 - f)) / std::log(f) - 1.0;
        e.n_max = std::max(1, static_cast<int>(std::ceil(n)));
        while (e.weight_tail_bound() >= target) ++e.n_max;
        return e;
    }
};

namespace detail {

// Shared by the pointwise and grid evaluators so both sum in the same order.
inline double chain_term(double lambda, double level, double y2) {
    const double d = lambda - level;
    return y2 / (d * d + y2);
}

inline double chain_level(int k, int n) {
    return 2.0 * std::cos(std::numbers::pi * k / (n + 1));
}

}  // namespace detail

/// Regularised density at a single lambda.
inline double spectral_density(double lambda, const chain_ensemble& ens) {
    ens.validate();
    const double y2 = ens.y * ens.y;
    double rho = 0.0;
    for (int n = 1; n <= ens.n_max; ++n) {
        const double w = std::pow(ens.f, n);
        if (w == 0.0) break;
        double inner = 0.0;
        for (int k = 1; k <= n; ++k) inner += detail::chain_term(lambda, detail::chain_level(k, n), y2);
        rho += w * inner;
    }
    return rho;
}

struct spectral_grid {
    std::vector<double> lambda;
    std::vector<double> density;
};

/// Uniform grid [lo, hi] with `points` samples (points >= 2).
inline std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
    if (!(hi > lo)) throw std::invalid_argument("uniform_grid: empty range");
    std::vector<double> g(static_cast<std::size_t>(points));
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + step * i;
    g.back() = hi;
    return g;
}

/**
 * Density over a set of abscissae. Levels are tabulated once; each lambda is
 * then an independent task, and its value is bitwise equal to
 * `spectral_density(lambda, ens)` regardless of the worker count.
 */
inline spectral_grid spectral_density_grid(std::vector<double> lambdas, const chain_ensemble& ens,
                                           unsigned workers = 0) {
    ens.validate();
    const double y2 = ens.y * ens.y;

    std::vector<double> weights;
    std::vector<std::size_t> offsets{0};
    std::vector<double> levels;
    for (int n = 1; n <= ens.n_max; ++n) {
        const double w = std::pow(ens.f, n);
        if (w == 0.0) break;
        weights.push_back(w);
        for (int k = 1; k <= n; ++k) levels.push_back(detail::chain_level(k, n));
        offsets.push_back(levels.size());
    }

    spectral_grid out{std::move(lambdas), {}};
    out.density.assign(out.lambda.size(), 0.0);
    detail::parallel_for(
        out.lambda.size(),
        [&](std::size_t i) {
            const double lambda = out.lambda[i];
            double rho = 0.0;
            for (std::size_t n = 0; n < weights.size(); ++n) {
                double inner = 0.0;
                for (std::size_t j = offsets[n]; j < offsets[n + 1]; ++j)
                    inner += detail::chain_term(lambda, levels[j], y2);
                rho += weights[n] * inner;
            }
            out.density[i] = rho;
        },
        workers);
    return out;
}

/**
 * Height of the peak labelled p/(p+q):
 * sum_{s>=1} f^{(p+q)s - 1} = f^{p+q-1} / (1 - f^{p+q}).
 */
inline double peak_intensity(std::int64_t p, std::int64_t q, double f) {
    if (!(f > 0.0 && f < 1.0)) throw std::domain_error("peak_intensity: f must lie in (0, 1)");
    if (p < 0 || q < 0 || p + q < 1) throw std::invalid_argument("peak_intensity: need p, q >= 0, p + q >= 1");
    if (detail::gcd(p, q) != 1) throw std::invalid_argument("peak_intensity: p, q not coprime");
    const double lf = std::log(f);
    const auto s = static_cast<double>(p + q);
    return std::exp((s - 1.0) * lf) / -std::expm1(s * lf);
}

/// sign * 2 cos(pi p / (p+q)); sign = -1 gives the mirrored view used for peak series.
inline double peak_position(std::int64_t p, std::int64_t q, int sign = +1) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("peak_position: sign must be +1 or -1");
    if (p < 0 || q < 0 || p + q < 1) throw std::invalid_argument("peak_position: need p, q >= 0, p + q >= 1");
    return sign * 2.0 * std::cos(std::numbers::pi * static_cast<double>(p) / static_cast<double>(p + q));
}

struct peak {
    rational label;  // p/(p+q)
    double position;
    double intensity;
};

struct peak_series {
    std::vector<peak> peaks;

    [[nodiscard]] std::size_t size() const { return peaks.size(); }

    /// Members [first, last] by 1-based index, as used for the Lifshitz fits.
    [[nodiscard]] peak_series members(std::size_t first, std::size_t last) const {
        if (first < 1 || last > peaks.size() || first > last)
            throw std::out_of_range("peak_series: member range out of bounds");
        return {{peaks.begin() + static_cast<std::ptrdiff_t>(first - 1),
                 peaks.begin() + static_cast<std::ptrdiff_t>(last)}};
    }
};

/// Peak for label a/b in the mirrored (-lambda) view.
inline peak make_peak(const rational& label, double f) {
    const auto p = label.numerator();
    const auto q = label.denominator() - label.numerator();
    return {label, peak_position(p, q, -1), peak_intensity(p, q, f)};
}

/**
 * Walks from `left` towards `right` by repeated mediants with `right`:
 * left (+) right, (left (+) right) (+) right, ...  Each label l gives the peak
 * at -2cos(pi l) with the closed-form intensity.
 *
 * S1 = (0/1 -> 1/1) yields k/(k+1); S2 = (1/1 -> 1/2) yields k'/(2k'-1).
 */
inline peak_series build_peak_series(const rational& left, const rational& right, int depth, double f) {
    if (depth < 1) throw std::invalid_argument("build_peak_series: depth must be >= 1");
    if (left == right) throw std::invalid_argument("build_peak_series: endpoints coincide");
    if (!left.in_unit_interval() || !right.in_unit_interval())
        throw std::domain_error("build_peak_series: labels must lie in [0, 1]");
    peak_series s;
    s.peaks.reserve(static_cast<std::size_t>(depth));
    rational current = left;
    for (int i = 0; i < depth; ++i) {
        current = mediant(current, right);
        s.peaks.push_back(make_peak(current, f));
    }
    return s;
}

inline peak_series s1_series(int depth, double f) { return build_peak_series({0, 1}, {1, 1}, depth, f); }
inline peak_series s2_series(int depth, double f) { return build_peak_series({1, 1}, {1, 2}, depth, f); }

struct lifshitz_result {
    double slope;
    double intercept;
    double residual;  // RMS of the regression residuals
};

/**
 * Regresses ln(intensity) on the tail variable of a peak series.
 *
 * For an accumulation point at the band edge (|lambda_cr| = 2) the variable is
 * 1/sqrt|lambda_cr - lambda| and the expected slope is pi ln f; for an
 * interior accumulation point it is 1/|lambda - lambda_cr|.
 */
inline lifshitz_result lifshitz_fit(const peak_series& series, double accumulation_point) {
    const bool edge = std::abs(std::abs(accumulation_point) - 2.0) < 1e-12;
    std::vector<double> xs, ys;
    for (const auto& pk : series.peaks) {
        const double d = std::abs(pk.position - accumulation_point);
        if (d == 0.0) throw std::domain_error("lifshitz_fit: peak sits on the accumulation point");
        xs.push_back(edge ? 1.0 / std::sqrt(d) : 1.0 / d);
        ys.push_back(std::log(pk.intensity));
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) throw std::invalid_argument("lifshitz_fit: fewer than 3 distinct abscissae");

    const auto n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss += r * r;
    }
    return {slope, intercept, std::sqrt(ss / n)};
}

}  // namespace popcorn
