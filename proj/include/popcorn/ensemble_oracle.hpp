#pragma once

/**
 * @file ensemble_oracle.hpp
 * @brief Monte-Carlo counterpart of the chain spectra.
 *
 * Bernoulli bonds are drawn along an N-vertex line; every zero bond cuts the
 * adjacency matrix into independent path blocks, which are diagonalised
 * densely (not through the closed form) and pooled into a histogram.
 */

#include "chain_spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace popcorn {

/// Generator plus the bit-level mapping to uniforms; recorded in CLI metadata.
inline constexpr std::string_view prng_identifier = "std::mt19937_64; u = (x >> 11) * 2^-53; bond = (u < f)";

struct sampled_ensemble {
    std::int64_t size = 0;
    double f = 0.0;
    std::uint64_t seed = 0;
    std::vector<int> block_lengths;  // vertex counts of the maximal connected runs, in order
};

/// Draws the N-1 bonds x_i ~ Bernoulli(f) and splits the line into blocks.
inline sampled_ensemble sample_blocks(std::int64_t n, double f, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_blocks: N must be >= 1");
    if (!(f >= 0.0 && f <= 1.0)) throw std::domain_error("sample_blocks: f must lie in [0, 1]");
    std::mt19937_64 gen(seed);
    sampled_ensemble out{n, f, seed, {}};
    int run = 1;
    for (std::int64_t i = 1; i < n; ++i) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        if (u < f) {
            ++run;
        } else {
            out.block_lengths.push_back(run);
            run = 1;
        }
    }
    out.block_lengths.push_back(run);
    return out;
}

inline constexpr int max_dense_size = 2000;

/// Eigenvalues of the n x n unit bi-diagonal (path adjacency) matrix, ascending.
inline std::vector<double> dense_eigenvalues(int n) {
    if (n < 1) throw std::invalid_argument("dense_eigenvalues: n must be >= 1");
    if (n > max_dense_size) throw std::invalid_argument("dense_eigenvalues: n exceeds 2000");
    if (n == 1) return {0.0};
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub = Eigen::VectorXd::Ones(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense_eigenvalues: solver failed");
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(out.begin(), out.end());
    return out;
}

struct histogram {
    double lo = -2.0;
    double hi = 2.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;      // every pooled eigenvalue, in range or not
    std::uint64_t outside = 0;

    histogram() = default;
    histogram(double lo_, double hi_, std::size_t bins) : lo(lo_), hi(hi_), counts(bins, 0) {
        if (bins == 0) throw std::invalid_argument("histogram: need at least one bin");
        if (!(hi > lo)) throw std::invalid_argument("histogram: empty range");
    }

    [[nodiscard]] std::size_t bins() const { return counts.size(); }
    [[nodiscard]] double width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    [[nodiscard]] double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * width(); }

    /// Bin holding x, or bins() when x is out of range.
    [[nodiscard]] std::size_t bin_of(double x) const {
        if (!(x >= lo && x < hi)) return counts.size();
        auto i = static_cast<std::size_t>((x - lo) / width());
        return std::min(i, counts.size() - 1);
    }

    void add(double x, std::uint64_t weight = 1) {
        total += weight;
        const std::size_t i = bin_of(x);
        if (i == counts.size())
            outside += weight;
        else
            counts[i] += weight;
    }

    /// Fraction of all pooled eigenvalues that fell into bin i.
    [[nodiscard]] double mass(std::size_t i) const {
        return total == 0 ? 0.0 : static_cast<double>(counts.at(i)) / static_cast<double>(total);
    }

    histogram& operator+=(const histogram& o) {
        if (o.counts.size() != counts.size() || o.lo != lo || o.hi != hi)
            throw std::invalid_argument("histogram: incompatible binning");
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
        total += o.total;
        outside += o.outside;
        return *this;
    }
};

namespace detail {

// Blocks of equal length share a spectrum, so each length is diagonalised once.
class spectrum_cache {
public:
    const std::vector<double>& get(int n) {
        auto it = cache_.find(n);
        if (it == cache_.end()) it = cache_.emplace(n, dense_eigenvalues(n)).first;
        return it->second;
    }

private:
    std::map<int, std::vector<double>> cache_;
};

}  // namespace detail

/// Pooled eigenvalue histogram of one sample, each eigenvalue weighted once.
inline histogram empirical_density(const sampled_ensemble& ens, const histogram& bins) {
    if (ens.block_lengths.empty()) throw std::invalid_argument("empirical_density: empty ensemble");
    std::map<int, std::uint64_t> multiplicity;
    for (int n : ens.block_lengths) ++multiplicity[n];
    histogram h(bins.lo, bins.hi, bins.bins());
    detail::spectrum_cache cache;
    for (auto [n, count] : multiplicity)
        for (double v : cache.get(n)) h.add(v, count);
    return h;
}

/**
 * Sums histograms over seeds first_seed, first_seed+1, ... . Each seed is its
 * own generator stream and the integer counts add exactly, so the result does
 * not depend on evaluation order.
 */
inline histogram pooled_density(std::int64_t n, double f, std::uint64_t first_seed, int seeds,
                                const histogram& bins) {
    if (seeds < 1) throw std::invalid_argument("pooled_density: need at least one seed");
    histogram h(bins.lo, bins.hi, bins.bins());
    for (int s = 0; s < seeds; ++s)
        h += empirical_density(sample_blocks(n, f, first_seed + static_cast<std::uint64_t>(s)), bins);
    return h;
}

/// Expected fraction of eigenvalues sitting at the peak labelled p/(p+q):
/// blocks of n vertices occur per site with probability (1-f)^2 f^{n-1}.
inline double analytic_peak_mass(std::int64_t p, std::int64_t q, double f) {
    return peak_intensity(p, q, f) * (1.0 - f) * (1.0 - f) / f;
}

/// Expected share of blocks with exactly n vertices, (1-f) f^{n-1}.
inline double block_length_probability(int n, double f) {
    return (1.0 - f) * std::pow(f, n - 1);
}

/// Adjacency spectrum of B mapped to B' (unit diagonal): lambda' = lambda + 1.
inline std::vector<double> laplacian_shift(std::vector<double> spectrum) {
    for (double& v : spectrum) v += 1.0;
    return spectrum;
}

inline std::vector<double> laplacian_unshift(std::vector<double> spectrum) {
    for (double& v : spectrum) v -= 1.0;
    return spectrum;
}

/// Grid frequency w^2 with lambda = w^2 + 2.
inline double grid_frequency_squared(double adjacency_eigenvalue) { return adjacency_eigenvalue - 2.0; }

}  // namespace popcorn
