#pragma once

/**
 * @file rational.hpp
 * @brief Exact non-negative fractions, mediants and Farey sequences.
 *
 * A `basic_rational` is always stored reduced with a positive denominator,
 * so equality is structural and Farey determinant relations can be checked
 * with plain integer arithmetic. The integer type is a template parameter;
 * the default `rational` uses 64-bit integers with overflow checks.
 */

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace popcorn {

namespace detail {

template <typename Int>
constexpr Int checked_add(Int a, Int b) {
    if constexpr (std::numeric_limits<Int>::is_bounded) {
        Int r{};
        if (__builtin_add_overflow(a, b, &r))
            throw std::overflow_error("popcorn: integer overflow in addition");
        return r;
    } else {
        return a + b;
    }
}

template <typename Int>
constexpr Int checked_mul(Int a, Int b) {
    if constexpr (std::numeric_limits<Int>::is_bounded) {
        Int r{};
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("popcorn: integer overflow in multiplication");
        return r;
    } else {
        return a * b;
    }
}

template <typename Int>
constexpr Int abs_value(Int a) { return a < 0 ? Int(-a) : a; }

template <typename Int>
constexpr Int gcd(Int a, Int b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

/// Bezout data for a x + b y = g.
template <typename Int>
struct bezout {
    Int g;
    Int x;
    Int y;
};

/// Extended Euclid on non-negative inputs.
template <typename Int>
constexpr bezout<Int> extended_gcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    return {old_r, old_s, old_t};
}

/// Inverse of m modulo k (k >= 1), in [0, k). Throws unless gcd(m, k) = 1.
template <typename Int>
constexpr Int modular_inverse(Int m, Int k) {
    if (k < 1) throw std::invalid_argument("modular_inverse: modulus must be >= 1");
    Int mm = m % k;
    if (mm < 0) mm += k;
    auto [g, x, y] = extended_gcd(mm, k);
    (void)y;
    if (g != 1) throw std::invalid_argument("modular_inverse: arguments are not coprime");
    Int n = x % k;
    if (n < 0) n += k;
    return n;
}

/**
 * Reduced fraction p/q with p >= 0 and q >= 1.
 *
 * Construction reduces; there is no way to obtain a non-reduced value.
 */
template <typename Int>
class basic_rational {
public:
    using integer_type = Int;

    constexpr basic_rational() = default;

    constexpr basic_rational(Int p, Int q) : p_(p), q_(q) {
        if (q_ == 0) throw std::domain_error("rational: zero denominator");
        if (q_ < 0) {
            p_ = -p_;
            q_ = -q_;
        }
        if (p_ < 0) throw std::domain_error("rational: negative value");
        Int g = detail::gcd(p_, q_);
        p_ /= g;
        q_ /= g;
    }

    [[nodiscard]] constexpr Int numerator() const { return p_; }
    [[nodiscard]] constexpr Int denominator() const { return q_; }

    [[nodiscard]] constexpr double to_double() const {
        return static_cast<double>(p_) / static_cast<double>(q_);
    }

    /// Fractional part {p/q}.
    [[nodiscard]] constexpr basic_rational fractional_part() const {
        return basic_rational(p_ % q_, q_);
    }

    [[nodiscard]] constexpr bool in_unit_interval() const { return p_ <= q_; }

    friend constexpr bool operator==(const basic_rational&, const basic_rational&) = default;

    friend constexpr std::strong_ordering operator<=>(const basic_rational& a,
                                                      const basic_rational& b) {
        return detail::checked_mul(a.p_, b.q_) <=> detail::checked_mul(b.p_, a.q_);
    }

    friend std::ostream& operator<<(std::ostream& os, const basic_rational& r) {
        return os << r.p_ << '/' << r.q_;
    }

    [[nodiscard]] std::string str() const {
        return std::to_string(p_) + "/" + std::to_string(q_);
    }

private:
    Int p_{0};
    Int q_{1};
};

using rational = basic_rational<std::int64_t>;

/// q_a p_b - p_a q_b; equals 1 for Farey neighbours a < b.
template <typename Int>
constexpr Int farey_determinant(const basic_rational<Int>& a, const basic_rational<Int>& b) {
    return detail::checked_mul(a.denominator(), b.numerator()) -
           detail::checked_mul(a.numerator(), b.denominator());
}

/// (p_a + p_b)/(q_a + q_b), reduced.
template <typename Int>
constexpr basic_rational<Int> mediant(const basic_rational<Int>& a, const basic_rational<Int>& b) {
    return basic_rational<Int>(detail::checked_add(a.numerator(), b.numerator()),
                               detail::checked_add(a.denominator(), b.denominator()));
}

/**
 * Farey sequence of the given order: every reduced fraction in [0, 1] with
 * denominator <= order, ascending.
 *
 * Uses the next-term recurrence, so neighbours come out with unit
 * determinant by construction and no sorting is needed.
 */
template <typename Int = std::int64_t>
std::vector<basic_rational<Int>> farey_sequence(std::type_identity_t<Int> order) {
    if (order < 1) throw std::invalid_argument("farey_sequence: order must be >= 1");
    std::vector<basic_rational<Int>> out;
    Int a = 0, b = 1, c = 1, d = order;
    out.emplace_back(a, b);
    while (c <= order) {
        Int k = (order + b) / d;
        Int e = k * c - a;
        Int g = k * d - b;
        a = c;
        b = d;
        c = e;
        d = g;
        out.emplace_back(a, b);
    }
    return out;
}

}  // namespace popcorn
