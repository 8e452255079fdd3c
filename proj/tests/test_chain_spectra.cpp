#include <popcorn/chain_spectra.hpp>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <numbers>

using namespace popcorn;

namespace {

// Peak height by direct summation of f^{(p+q)s - 1}.
double intensity_series(int p, int q, double f) {
    double sum = 0.0;
    for (int s = 1; s <= 400; ++s) sum += std::pow(f, (p + q) * s - 1);
    return sum;
}

}  // namespace

TEST(PathEigenvalues, SmallCases) {
    EXPECT_NEAR(path_eigenvalues(1)[0], 0.0, 1e-15);
    const auto two = path_eigenvalues(2);
    EXPECT_NEAR(two[0], 1.0, 1e-15);
    EXPECT_NEAR(two[1], -1.0, 1e-15);
    const auto three = path_eigenvalues(3);
    EXPECT_NEAR(three[0], std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(three[1], 0.0, 1e-15);
    EXPECT_NEAR(three[2], -std::numbers::sqrt2, 1e-15);
    EXPECT_THROW(path_eigenvalues(0), std::invalid_argument);
}

TEST(PathEigenvalues, MatchFullDenseSolver) {
    // General symmetric solver on the full matrix, not the tridiagonal routine.
    for (int n = 1; n <= 12; ++n) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
        const auto closed = path_eigenvalues(n);
        for (int k = 0; k < n; ++k) EXPECT_NEAR(closed[static_cast<std::size_t>(n - 1 - k)], es.eigenvalues()(k), 1e-10);
    }
}

TEST(ChainEnsemble, Validation) {
    EXPECT_THROW((chain_ensemble{0.0, 1e-3, 10}.validate()), std::domain_error);
    EXPECT_THROW((chain_ensemble{1.0, 1e-3, 10}.validate()), std::domain_error);
    EXPECT_THROW((chain_ensemble{0.5, 0.0, 10}.validate()), std::domain_error);
    EXPECT_THROW((chain_ensemble{0.5, 1e-3, 0}.validate()), std::domain_error);
    EXPECT_THROW(spectral_density(0.0, chain_ensemble{0.5, -1.0, 10}), std::domain_error);
}

TEST(ChainEnsemble, TailTarget) {
    const auto e = chain_ensemble::with_tail_target(0.7, 1e-3);
    EXPECT_LT(e.weight_tail_bound(), 1e-12);
    chain_ensemble shorter = e;
    --shorter.n_max;
    EXPECT_GE(shorter.weight_tail_bound(), 1e-12);
    EXPECT_NEAR(e.weight_tail_bound(), std::pow(0.7, e.n_max + 1) / 0.3, 1e-25);
}

TEST(ChainEnsemble, TailBoundCoversTruncation) {
    const chain_ensemble small{0.7, 1e-2, 20};
    const chain_ensemble big{0.7, 1e-2, 400};
    for (double lambda : {0.0, 0.37, 1.0, 1.9}) {
        const double lost = spectral_density(lambda, big) - spectral_density(lambda, small);
        EXPECT_GE(lost, 0.0);
        EXPECT_LE(lost, small.tail_bound());
    }
}

TEST(SpectralDensity, PeakValues) {
    const chain_ensemble ens{0.7, 1e-4, 1000};
    EXPECT_NEAR(spectral_density(0.0, ens), 1.372549, 1e-3 * 1.372549);
    EXPECT_NEAR(spectral_density(1.0, ens), 0.745814, 1e-3 * 0.745814);
}

TEST(SpectralDensity, OffPeakDecay) {
    for (double f : {0.3, 0.7, 0.9}) EXPECT_LT(spectral_density(1.9999, chain_ensemble{f, 1e-6, 1000}), 1e-3) << f;
}

TEST(SpectralDensity, Symmetric) {
    const chain_ensemble ens{0.7, 2e-3, 300};
    for (double lambda = 0.0; lambda <= 2.0; lambda += 0.0137)
        EXPECT_NEAR(spectral_density(lambda, ens), spectral_density(-lambda, ens), 1e-9);
}

TEST(SpectralDensity, ApproachesPeakIntensity) {
    struct label {
        int p, q;
    };
    for (const auto& l : {label{1, 1}, label{1, 2}, label{2, 3}}) {
        const double target = peak_intensity(l.p, l.q, 0.7);
        const double at = peak_position(l.p, l.q);
        double previous = HUGE_VAL;
        for (double y : {1e-2, 1e-3, 1e-4}) {
            const double gap = std::abs(spectral_density(at, chain_ensemble{0.7, y, 2000}) - target) / target;
            EXPECT_LT(gap, previous) << l.p << "/" << l.q << " y=" << y;
            previous = gap;
        }
        EXPECT_LT(previous, 0.01);
    }
}

TEST(SpectralGrid, BitwiseEqualToPointwiseForAnyPartition) {
    const chain_ensemble ens{0.7, 2e-3, 150};
    const auto lambdas = uniform_grid(-2.0, 2.0, 301);
    const auto one = spectral_density_grid(lambdas, ens, 1);
    const auto three = spectral_density_grid(lambdas, ens, 3);
    const auto seven = spectral_density_grid(lambdas, ens, 7);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double point = spectral_density(lambdas[i], ens);
        ASSERT_EQ(one.density[i], point);
        ASSERT_EQ(three.density[i], point);
        ASSERT_EQ(seven.density[i], point);
        ASSERT_GE(point, 0.0);
    }
}

TEST(SpectralGrid, UniformGrid) {
    const auto g = uniform_grid(-2.0, 2.0, 4001);
    EXPECT_EQ(g.size(), 4001u);
    EXPECT_EQ(g.front(), -2.0);
    EXPECT_EQ(g.back(), 2.0);
    EXPECT_EQ(g[2000], 0.0);
    EXPECT_THROW(uniform_grid(0.0, 1.0, 1), std::invalid_argument);
    EXPECT_THROW(uniform_grid(1.0, 1.0, 5), std::invalid_argument);
}

TEST(PeakIntensity, Examples) {
    EXPECT_NEAR(peak_intensity(1, 1, 0.7), 1.372549, 1e-6);
    EXPECT_NEAR(peak_intensity(1, 1, 0.7), intensity_series(1, 1, 0.7), 1e-12);
    EXPECT_NEAR(peak_intensity(1, 1, 0.999), 0.999 / 0.001999, 1e-9);
    EXPECT_NEAR(peak_intensity(1, 2, 0.5), 0.285714, 1e-6);
    EXPECT_NEAR(peak_intensity(1, 2, 0.5), intensity_series(1, 2, 0.5), 1e-14);
    EXPECT_THROW(peak_intensity(2, 2, 0.5), std::invalid_argument);
    EXPECT_THROW(peak_intensity(1, 1, 1.0), std::domain_error);
}

TEST(PeakIntensity, MatchesSeriesOverLabels) {
    for (int p = 0; p < 8; ++p)
        for (int q = 0; q < 8; ++q) {
            if (p + q < 1 || std::gcd(p, q) != 1) continue;
            for (double f : {0.2, 0.5, 0.9})
                EXPECT_NEAR(peak_intensity(p, q, f), intensity_series(p, q, f), 1e-12 * intensity_series(p, q, f));
        }
}

TEST(PeakPosition, Examples) {
    EXPECT_NEAR(peak_position(1, 1, +1), 0.0, 1e-15);
    EXPECT_NEAR(peak_position(1, 2, -1), -1.0, 1e-15);
    for (int k = 1; k < 30; ++k)
        EXPECT_DOUBLE_EQ(peak_position(k, 1, -1), -2.0 * std::cos(std::numbers::pi * k / (k + 1)));
    EXPECT_THROW(peak_position(1, 1, 0), std::invalid_argument);
}

TEST(PeakSeries, S1Head) {
    const auto s = s1_series(3, 0.7);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s.peaks[0].label, rational(1, 2));
    EXPECT_EQ(s.peaks[1].label, rational(2, 3));
    EXPECT_EQ(s.peaks[2].label, rational(3, 4));
    EXPECT_NEAR(s.peaks[0].intensity, 1.372549, 1e-6);
    EXPECT_NEAR(s.peaks[1].intensity, 0.745814, 1e-6);
    EXPECT_NEAR(s.peaks[2].intensity, 0.4513752, 1e-6);
}

TEST(PeakSeries, S2Positions) {
    const auto s = s2_series(4, 0.7);
    EXPECT_EQ(s.peaks[0].label, rational(2, 3));
    EXPECT_EQ(s.peaks[1].label, rational(3, 5));
    EXPECT_NEAR(s.peaks[0].position, -2.0 * std::cos(2.0 * std::numbers::pi / 3.0), 1e-15);
    EXPECT_NEAR(s.peaks[1].position, -2.0 * std::cos(3.0 * std::numbers::pi / 5.0), 1e-15);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto k = static_cast<std::int64_t>(i) + 2;
        EXPECT_EQ(s.peaks[i].label, rational(k, 2 * k - 1));
    }
}

TEST(PeakSeries, MediantStep) {
    const auto s = build_peak_series(rational(1, 2), rational(1, 3), 1, 0.7);
    EXPECT_EQ(s.peaks[0].label, rational(2, 5));
    EXPECT_THROW(build_peak_series(rational(1, 2), rational(1, 2), 3, 0.7), std::invalid_argument);
    EXPECT_THROW(build_peak_series(rational(0, 1), rational(1, 1), 0, 0.7), std::invalid_argument);
}

TEST(PeakSeries, MonotoneReducedAndDecreasing) {
    for (double f : {0.1, 0.5, 0.7, 0.95}) {
        for (const auto& s : {s1_series(60, f), s2_series(60, f)}) {
            for (std::size_t i = 0; i + 1 < s.size(); ++i) {
                EXPECT_GT(s.peaks[i].intensity, s.peaks[i + 1].intensity);
                EXPECT_EQ(std::gcd(s.peaks[i].label.numerator(), s.peaks[i].label.denominator()), 1);
            }
        }
        const auto s1 = s1_series(60, f);
        for (std::size_t i = 0; i + 1 < s1.size(); ++i) EXPECT_LT(s1.peaks[i].position, s1.peaks[i + 1].position);
        const auto s2 = s2_series(60, f);
        for (std::size_t i = 0; i + 1 < s2.size(); ++i) EXPECT_GT(s2.peaks[i].position, s2.peaks[i + 1].position);
    }
}

TEST(PeakSeries, Members) {
    const auto s = s1_series(60, 0.7);
    const auto m = s.members(10, 60);
    EXPECT_EQ(m.size(), 51u);
    EXPECT_EQ(m.peaks.front().label, rational(10, 11));
    EXPECT_THROW(s.members(0, 5), std::out_of_range);
    EXPECT_THROW(s.members(5, 61), std::out_of_range);
}

TEST(Lifshitz, EdgeSlope) {
    for (double f : {0.5, 0.7}) {
        const auto fit = lifshitz_fit(s1_series(60, f).members(10, 60), 2.0);
        const double target = std::numbers::pi * std::log(f);
        EXPECT_NEAR(fit.slope, target, 0.05 * std::abs(target)) << f;
    }
    EXPECT_NEAR(std::numbers::pi * std::log(0.7), -1.1205, 1e-4);
    EXPECT_NEAR(std::numbers::pi * std::log(0.5), -2.1776, 1e-4);
}

TEST(Lifshitz, InteriorSeries) {
    const double f = 0.7;
    const double target = std::numbers::pi * std::log(f);
    const auto s = s2_series(200, f);
    double previous = HUGE_VAL;
    for (std::size_t i : {5u, 20u, 80u, 199u}) {
        const double v = std::log(s.peaks[i].intensity) * std::abs(s.peaks[i].position);
        const double gap = std::abs(v - target);
        EXPECT_LT(gap, previous);
        previous = gap;
    }
    EXPECT_LT(previous, 0.01 * std::abs(target));
    const auto fit = lifshitz_fit(s.members(10, 200), 0.0);
    EXPECT_NEAR(fit.slope, target, 0.05 * std::abs(target));
}

TEST(Lifshitz, Errors) {
    EXPECT_THROW(lifshitz_fit(s1_series(2, 0.7), 2.0), std::invalid_argument);
    EXPECT_THROW(lifshitz_fit(s1_series(5, 0.7), peak_position(1, 1, -1)), std::domain_error);
}
