#pragma once

/**
 * @file figures.hpp
 * @brief Figure-reproduction datasets behind the command-line tool.
 *
 * Every builder takes a fully validated `run_config` and returns a
 * `dataset` whose metadata echoes the whole configuration.
 */

#include "chain_spectra.hpp"
#include "dataset.hpp"
#include "dyson_borwein.hpp"
#include "ensemble_oracle.hpp"
#include "lattice_bridge.hpp"
#include "modular_eta.hpp"
#include "rational.hpp"
#include "thomae.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace popcorn {

struct run_config {
    std::string command;
    double f = 0.7;
    double y = 2e-3;
    double eps = 1e-6;
    int n_max = 1000;
    std::int64_t q_max = 40;
    double grid_min = -2.0;
    double grid_max = 2.0;
    int grid_points = 4001;
    std::uint64_t seed = 1;
    int depth = 60;
    std::int64_t size = 20000;  // oracle: vertices per sample
    int seeds = 100;            // oracle: number of samples
    output_format format = output_format::csv;
    std::string out;            // empty: standard output
};

/// Defaults reproduce the figures; flags override them.
inline run_config default_config(const std::string& command) {
    run_config c;
    c.command = command;
    if (command == "popcorn") {
        c.q_max = 50;
    } else if (command == "spectral-density") {
        // f = 0.7, y = 2e-3, n_max = 1000 on [-2, 2] x 4001
    } else if (command == "bridge") {
        c.eps = 1e-6;
        c.q_max = 40;
    } else if (command == "dyson") {
        c.f = 0.5;
        c.n_max = 100000;
        c.grid_min = -1.0 + 1e-6;
        c.grid_max = 3.0 - 1e-6;
        c.grid_points = 801;
    } else if (command == "lifshitz") {
        c.depth = 60;
    } else if (command == "oracle") {
        c.grid_min = -2.001;
        c.grid_max = 2.001;
        c.grid_points = 2001;
    } else {
        throw std::invalid_argument("unknown command: " + command);
    }
    return c;
}

/// Range checks; throws std::invalid_argument naming the offending flag.
inline void validate(const run_config& c) {
    auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
    const std::string& cmd = c.command;
    if (cmd == "popcorn" || cmd == "bridge") {
        if (c.q_max < 1) fail("--qmax must be >= 1");
        if (c.q_max > 100000) fail("--qmax must be <= 100000");
    }
    if (cmd == "bridge" && !(c.eps > 0.0 && c.eps <= 1e-3)) fail("--eps must lie in (0, 1e-3]");
    if (cmd == "bridge" && c.eps < 1e-10) fail("--eps must be >= 1e-10");
    if (cmd == "spectral-density" || cmd == "lifshitz" || cmd == "dyson") {
        if (!(c.f > 0.0 && c.f < 1.0)) fail("--f must lie in (0, 1)");
    }
    if (cmd == "oracle" && !(c.f >= 0.0 && c.f <= 1.0)) fail("--f must lie in [0, 1]");
    if (cmd == "spectral-density") {
        if (!(c.y > 0.0)) fail("--y must be > 0");
        if (c.n_max < 1) fail("--nmax must be >= 1");
    }
    if (cmd == "dyson" && c.n_max < 1) fail("--nmax must be >= 1");
    if (cmd == "spectral-density" || cmd == "dyson" || cmd == "oracle") {
        if (c.grid_points < 2) fail("--grid-points must be >= 2");
        if (!(c.grid_max > c.grid_min)) fail("--grid-max must exceed --grid-min");
    }
    if (cmd == "dyson" && !(c.grid_min > -1.0 && c.grid_max < 3.0)) fail("dyson grid must lie inside (-1, 3)");
    if (cmd == "lifshitz" && c.depth < 12) fail("--depth must be >= 12 (fits use members 10..depth)");
    if (cmd == "oracle") {
        if (c.size < 1) fail("--size must be >= 1");
        if (c.seeds < 1) fail("--seeds must be >= 1");
    }
}

inline nlohmann::ordered_json config_json(const run_config& c) {
    nlohmann::ordered_json j;
    j["command"] = c.command;
    j["f"] = c.f;
    j["y"] = c.y;
    j["eps"] = c.eps;
    j["nmax"] = c.n_max;
    j["qmax"] = c.q_max;
    j["grid_min"] = c.grid_min;
    j["grid_max"] = c.grid_max;
    j["grid_points"] = c.grid_points;
    j["seed"] = c.seed;
    j["depth"] = c.depth;
    j["size"] = c.size;
    j["seeds"] = c.seeds;
    j["format"] = c.format == output_format::csv ? "csv" : "json";
    return j;
}

inline dataset make_dataset(const run_config& c, std::vector<std::string> columns) {
    dataset d;
    d.columns = std::move(columns);
    d.meta["command"] = c.command;
    d.meta["config"] = config_json(c);
    d.meta["version"] = std::string(library_version);
    d.meta["prng"] = std::string(prng_identifier);
    return d;
}

/// (x, g(x)) for every reduced p/q in the open interval with q <= q_max.
inline dataset cmd_popcorn(const run_config& c) {
    auto d = make_dataset(c, {"x", "g"});
    const auto farey = farey_sequence<std::int64_t>(c.q_max);
    for (std::size_t i = 1; i + 1 < farey.size(); ++i) d.add_row({farey[i].to_double(), popcorn(farey[i])});
    return d;
}

inline dataset cmd_spectral_density(const run_config& c) {
    auto d = make_dataset(c, {"lambda", "rho"});
    const chain_ensemble ens{c.f, c.y, c.n_max};
    const auto grid = spectral_density_grid(uniform_grid(c.grid_min, c.grid_max, c.grid_points), ens);
    for (std::size_t i = 0; i < grid.lambda.size(); ++i) d.add_row({grid.lambda[i], grid.density[i]});
    d.meta["tail_bound"] = ens.tail_bound();
    return d;
}

/// -ln|eta(x + i eps)| against pi g(x)^2 / (12 eps) at rational x.
inline dataset cmd_bridge(const run_config& c) {
    auto d = make_dataset(c, {"x", "neg_log_eta", "pi_g2_over_12eps", "residual"});
    const auto farey = farey_sequence<std::int64_t>(c.q_max);
    for (std::size_t i = 1; i + 1 < farey.size(); ++i) {
        const auto& r = farey[i];
        const auto q = static_cast<double>(r.denominator());
        const double neg = -log_abs_eta(modular_point{r, c.eps}).log_abs;
        const double term = std::numbers::pi / (12.0 * c.eps * q * q);
        d.add_row({r.to_double(), neg, term, neg - term});
    }
    return d;
}

inline dataset cmd_dyson(const run_config& c) {
    auto d = make_dataset(c, {"lambda", "N"});
    const dyson_chain chain{c.f, c.n_max};
    for (double lambda : uniform_grid(c.grid_min, c.grid_max, c.grid_points))
        d.add_row({lambda, integrated_dos(lambda, chain)});
    d.meta["limit_lower"] = c.f / (1.0 + c.f);
    d.meta["limit_upper"] = 1.0;
    return d;
}

/// Both peak series with their tail regressions over members 10..depth.
inline dataset cmd_lifshitz(const run_config& c) {
    auto d = make_dataset(c, {"series", "k", "label_p", "label_q", "lambda", "intensity", "fit_slope", "target_slope"});
    const double target = std::numbers::pi * std::log(c.f);
    const auto s1 = s1_series(c.depth, c.f);
    const auto s2 = s2_series(c.depth, c.f);
    const auto fit1 = lifshitz_fit(s1.members(10, s1.size()), 2.0);
    const auto fit2 = lifshitz_fit(s2.members(10, s2.size()), 0.0);
    auto emit = [&](int id, const peak_series& s, const lifshitz_result& fit, int k_offset) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto& pk = s.peaks[i];
            d.add_row({static_cast<double>(id), static_cast<double>(i + 1 + k_offset),
                       static_cast<double>(pk.label.numerator()), static_cast<double>(pk.label.denominator()),
                       pk.position, pk.intensity, fit.slope, target});
        }
    };
    emit(1, s1, fit1, 0);  // k = member index
    emit(2, s2, fit2, 1);  // k' = member index + 1
    d.meta["s1_slope"] = fit1.slope;
    d.meta["s1_residual"] = fit1.residual;
    d.meta["s2_slope"] = fit2.slope;
    d.meta["s2_residual"] = fit2.residual;
    d.meta["target_slope"] = target;
    return d;
}

/// Analytic eigenvalue fraction per bin from all peak labels with non-negligible weight.
inline std::vector<double> analytic_bin_masses(const histogram& bins, double f) {
    std::vector<double> mass(bins.bins(), 0.0);
    if (f <= 0.0) {
        const auto i = bins.bin_of(0.0);
        if (i < mass.size()) mass[i] = 1.0;
        return mass;
    }
    if (f >= 1.0) return mass;  // a single infinite chain: no discrete peaks
    const double lf = std::log(f);
    const auto b_max = static_cast<std::int64_t>(std::min(5000.0, std::ceil(std::log(1e-18) / lf) + 2.0));
    for (std::int64_t b = 2; b <= b_max; ++b)
        for (std::int64_t a = 1; a < b; ++a) {
            if (detail::gcd(a, b) != 1) continue;
            const auto i = bins.bin_of(peak_position(a, b - a, +1));
            if (i < mass.size()) mass[i] += analytic_peak_mass(a, b - a, f);
        }
    return mass;
}

inline dataset cmd_oracle(const run_config& c) {
    auto d = make_dataset(c, {"lambda", "empirical_mass", "analytic_mass"});
    const histogram bins(c.grid_min, c.grid_max, static_cast<std::size_t>(c.grid_points));
    const auto h = pooled_density(c.size, c.f, c.seed, c.seeds, bins);
    const auto analytic = analytic_bin_masses(bins, c.f);
    for (std::size_t i = 0; i < h.bins(); ++i) d.add_row({h.center(i), h.mass(i), analytic[i]});
    d.meta["eigenvalues"] = h.total;
    d.meta["outside_bins"] = h.outside;
    return d;
}

inline dataset run_command(const run_config& c) {
    validate(c);
    if (c.command == "popcorn") return cmd_popcorn(c);
    if (c.command == "spectral-density") return cmd_spectral_density(c);
    if (c.command == "bridge") return cmd_bridge(c);
    if (c.command == "dyson") return cmd_dyson(c);
    if (c.command == "lifshitz") return cmd_lifshitz(c);
    if (c.command == "oracle") return cmd_oracle(c);
    throw std::invalid_argument("unknown command: " + c.command);
}

}  // namespace popcorn
