#pragma once

/**
 * @file continued_fraction.hpp
 * @brief Regular continued fractions of reals and rational detection.
 *
 * Convergents follow the standard recurrence
 *   p_n = a_n p_{n-1} + p_{n-2},  q_n = a_n q_{n-1} + q_{n-2}
 * seeded with (p_{-1}, p_{-2}, q_{-1}, q_{-2}) = (1, 0, 0, 1).
 */

#include "rational.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace popcorn {

/// Fractional remainders closer than this to an integer end the expansion.
inline constexpr double default_cf_tolerance = 1e-12;

struct convergent {
    std::int64_t p;
    std::int64_t q;

    [[nodiscard]] double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    friend bool operator==(const convergent&, const convergent&) = default;
};

/// Coefficients [a_0; a_1, ..., a_D] together with their convergents.
class continued_fraction {
public:
    continued_fraction() = default;

    /// Builds convergents from coefficients; a_i >= 1 for i >= 1.
    explicit continued_fraction(std::vector<std::int64_t> coefficients) {
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            if (i > 0 && coefficients[i] < 1)
                throw std::invalid_argument("continued_fraction: partial quotients must be >= 1");
            if (!push(coefficients[i]))
                throw std::overflow_error("continued_fraction: convergent overflow");
        }
    }

    [[nodiscard]] const std::vector<std::int64_t>& coefficients() const { return coefficients_; }
    [[nodiscard]] const std::vector<convergent>& convergents() const { return convergents_; }
    [[nodiscard]] std::size_t depth() const { return coefficients_.size(); }
    [[nodiscard]] bool empty() const { return coefficients_.empty(); }
    [[nodiscard]] const convergent& last() const { return convergents_.back(); }

    /// Appends a_n; returns false (and leaves the object unchanged) on overflow.
    bool push(std::int64_t a) {
        std::int64_t p1 = 1, p2 = 0, q1 = 0, q2 = 1;
        const std::size_t n = convergents_.size();
        if (n >= 1) {
            p1 = convergents_[n - 1].p;
            q1 = convergents_[n - 1].q;
        }
        if (n >= 2) {
            p2 = convergents_[n - 2].p;
            q2 = convergents_[n - 2].q;
        } else if (n == 1) {
            p2 = 1;
            q2 = 0;
        }
        std::int64_t p = 0, q = 0;
        if (__builtin_mul_overflow(a, p1, &p) || __builtin_add_overflow(p, p2, &p) ||
            __builtin_mul_overflow(a, q1, &q) || __builtin_add_overflow(q, q2, &q))
            return false;
        coefficients_.push_back(a);
        convergents_.push_back({p, q});
        return true;
    }

private:
    std::vector<std::int64_t> coefficients_;
    std::vector<convergent> convergents_;
};

/**
 * Regular continued fraction of x > 0.
 *
 * Expansion stops after `max_depth` coefficients, when the fractional
 * remainder is within `tol` of an integer (an upper near-integer remainder
 * bumps the last coefficient by one), or when the next convergent would
 * overflow 64 bits.
 */
inline continued_fraction continued_fraction_of(double x, int max_depth,
                                                double tol = default_cf_tolerance) {
    if (!std::isfinite(x)) throw std::invalid_argument("continued_fraction_of: non-finite input");
    if (x <= 0.0) throw std::invalid_argument("continued_fraction_of: x must be > 0");
    if (max_depth < 1) throw std::invalid_argument("continued_fraction_of: max_depth must be >= 1");

    continued_fraction cf;
    double rem = x;
    for (int i = 0; i < max_depth; ++i) {
        double fl = std::floor(rem);
        double frac = rem - fl;
        if (fl > 9.0e18) break;
        auto a = static_cast<std::int64_t>(fl);
        bool stop = false;
        if (frac < tol) {
            stop = true;
        } else if (frac > 1.0 - tol) {
            ++a;
            stop = true;
        }
        if (i > 0 && a < 1) a = 1;
        if (!cf.push(a)) break;
        if (stop) break;
        rem = 1.0 / frac;
    }
    return cf;
}

/// Exact expansion of a rational; the last convergent is p/q itself.
template <typename Int>
continued_fraction continued_fraction_of(const basic_rational<Int>& r) {
    std::vector<std::int64_t> a;
    auto p = static_cast<std::int64_t>(r.numerator());
    auto q = static_cast<std::int64_t>(r.denominator());
    while (q != 0) {
        a.push_back(p / q);
        std::int64_t t = p % q;
        p = q;
        q = t;
    }
    return continued_fraction(std::move(a));
}

/**
 * Smallest-denominator convergent p/q of x with q <= q_max and
 * |x - p/q| <= delta, or nothing. Negative or non-finite x never qualifies.
 */
inline std::optional<rational> detect_rational(double x, std::int64_t q_max, double delta) {
    if (q_max < 1) throw std::invalid_argument("detect_rational: q_max must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("detect_rational: delta must be > 0");
    if (!std::isfinite(x) || x < 0.0) return std::nullopt;
    if (x == 0.0) return rational(0, 1);

    // tol = 0: let the expansion run until q exceeds q_max instead of snapping early.
    const auto cf = continued_fraction_of(x, 64, 0.0);
    for (const auto& c : cf.convergents()) {
        if (c.q > q_max) break;
        if (std::abs(x - c.value()) <= delta) return rational(c.p, c.q);
    }
    return std::nullopt;
}

}  // namespace popcorn
