#include <popcorn/figures.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace popcorn;

namespace {

std::string csv_of(const dataset& d) {
    std::ostringstream os;
    write_csv(os, d);
    return os.str();
}

std::size_t column(const dataset& d, const std::string& name) {
    for (std::size_t i = 0; i < d.columns.size(); ++i)
        if (d.columns[i] == name) return i;
    throw std::out_of_range(name);
}

}  // namespace

TEST(Serialisation, NumberFormat) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.33333333333333331");
    EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Serialisation, CsvLayout) {
    dataset d;
    d.columns = {"a", "b"};
    d.add_row({1.0, -2.5});
    d.add_row({0.25, 1e-20});
    EXPECT_EQ(csv_of(d), "a,b\n1,-2.5\n0.25,9.9999999999999995e-21\n");
    EXPECT_THROW(d.add_row({1.0}), std::logic_error);
}

TEST(Serialisation, JsonLayout) {
    auto d = make_dataset(default_config("popcorn"), {"x", "g"});
    d.add_row({0.5, 0.5});
    const auto j = to_json(d);
    EXPECT_EQ(j["meta"]["version"], "1.0.0");
    EXPECT_EQ(j["meta"]["config"]["command"], "popcorn");
    EXPECT_EQ(j["meta"]["config"]["qmax"], 50);
    EXPECT_TRUE(j["meta"].contains("prng"));
    EXPECT_EQ(j["rows"][0]["x"], 0.5);
    std::ostringstream os;
    write_json(os, d);
    EXPECT_EQ(nlohmann::ordered_json::parse(os.str()), j);
}

TEST(Config, Defaults) {
    const auto sd = default_config("spectral-density");
    EXPECT_EQ(sd.f, 0.7);
    EXPECT_EQ(sd.y, 2e-3);
    EXPECT_EQ(sd.n_max, 1000);
    EXPECT_EQ(sd.grid_points, 4001);
    EXPECT_EQ(default_config("bridge").eps, 1e-6);
    EXPECT_THROW(default_config("plot"), std::invalid_argument);
}

TEST(Config, RangeChecks) {
    auto bad = [](const std::string& cmd, auto mutate) {
        auto c = default_config(cmd);
        mutate(c);
        return c;
    };
    EXPECT_THROW(validate(bad("spectral-density", [](auto& c) { c.f = 1.0; })), std::invalid_argument);
    EXPECT_THROW(validate(bad("spectral-density", [](auto& c) { c.y = 0.0; })), std::invalid_argument);
    EXPECT_THROW(validate(bad("spectral-density", [](auto& c) { c.grid_points = 1; })), std::invalid_argument);
    EXPECT_THROW(validate(bad("spectral-density", [](auto& c) { c.grid_max = c.grid_min; })), std::invalid_argument);
    EXPECT_THROW(validate(bad("bridge", [](auto& c) { c.eps = 0.1; })), std::invalid_argument);
    EXPECT_THROW(validate(bad("popcorn", [](auto& c) { c.q_max = 0; })), std::invalid_argument);
    EXPECT_THROW(validate(bad("dyson", [](auto& c) { c.grid_min = -1.0; })), std::invalid_argument);
    EXPECT_THROW(validate(bad("lifshitz", [](auto& c) { c.depth = 5; })), std::invalid_argument);
    EXPECT_THROW(validate(bad("oracle", [](auto& c) { c.seeds = 0; })), std::invalid_argument);
    EXPECT_NO_THROW(validate(bad("oracle", [](auto& c) { c.f = 0.0; })));
}

TEST(CmdPopcorn, Rows) {
    auto c = default_config("popcorn");
    c.q_max = 3;
    const auto d = run_command(c);
    EXPECT_EQ(d.columns, (std::vector<std::string>{"x", "g"}));
    ASSERT_EQ(d.rows.size(), 3u);
    EXPECT_DOUBLE_EQ(d.rows[0][0], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(d.rows[0][1], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(d.rows[1][1], 0.5);
    EXPECT_DOUBLE_EQ(d.rows[2][1], 1.0 / 3.0);
    c.q_max = 1;
    EXPECT_TRUE(run_command(c).rows.empty());
    c.q_max = 5;
    EXPECT_EQ(run_command(c).rows.size(), 9u);
}

TEST(CmdSpectralDensity, PeaksAndSymmetry) {
    auto c = default_config("spectral-density");
    c.grid_points = 801;  // spacing 0.005 keeps 0 and +-1 on the grid
    const auto d = run_command(c);
    EXPECT_EQ(d.columns, (std::vector<std::string>{"lambda", "rho"}));
    std::size_t best = 0;
    for (std::size_t i = 0; i < d.rows.size(); ++i)
        if (d.rows[i][1] > d.rows[best][1]) best = i;
    EXPECT_EQ(d.rows[best][0], 0.0);
    EXPECT_NEAR(d.rows[best][1], 1.37, 0.01);
    EXPECT_NEAR(d.rows[600][0], 1.0, 1e-12);
    EXPECT_NEAR(d.rows[600][1], 0.746, 0.01);
    for (std::size_t i = 0; i < d.rows.size(); ++i)
        EXPECT_NEAR(d.rows[i][1], d.rows[d.rows.size() - 1 - i][1], 1e-9);
}

TEST(CmdBridge, Columns) {
    auto c = default_config("bridge");
    c.q_max = 10;
    const auto d = run_command(c);
    EXPECT_EQ(d.columns, (std::vector<std::string>{"x", "neg_log_eta", "pi_g2_over_12eps", "residual"}));
    for (const auto& row : d.rows) {
        const auto r = detect_rational(row[0], 10, 1e-12);
        ASSERT_TRUE(r.has_value());
        const auto q = static_cast<double>(r->denominator());
        EXPECT_EQ(row[2], std::numbers::pi / (12.0 * c.eps * q * q));
        EXPECT_NEAR(row[3], 0.5 * std::log(q * c.eps), 1e-3);
        if (q == 2) {
            EXPECT_NEAR(row[1], std::numbers::pi / 48e-6 - 6.56, 0.01);
        }
    }
}

TEST(CmdDyson, Endpoints) {
    const auto d = run_command(default_config("dyson"));
    EXPECT_EQ(d.columns, (std::vector<std::string>{"lambda", "N"}));
    EXPECT_NEAR(d.rows.front()[1], 0.5 / 1.5, 1e-5);
    EXPECT_NEAR(d.rows.back()[1], 1.0, 1e-5);
}

TEST(CmdLifshitz, Slope) {
    const auto d = run_command(default_config("lifshitz"));
    const auto slope = column(d, "fit_slope");
    const auto target = column(d, "target_slope");
    EXPECT_NEAR(d.rows[0][target], -1.1205, 1e-4);
    EXPECT_NEAR(d.rows[0][slope], -1.1205, 0.05 * 1.1205);
    EXPECT_EQ(d.rows.size(), 120u);
}

TEST(CmdOracle, DisconnectedChain) {
    auto c = default_config("oracle");
    c.f = 0.0;
    c.size = 100;
    c.seeds = 1;
    const auto d = run_command(c);
    EXPECT_EQ(d.columns, (std::vector<std::string>{"lambda", "empirical_mass", "analytic_mass"}));
    double total = 0.0;
    for (const auto& row : d.rows) {
        total += row[1];
        if (row[1] > 0.0) {
            EXPECT_NEAR(row[0], 0.0, 1e-12);
        }
    }
    EXPECT_DOUBLE_EQ(total, 1.0);
}

TEST(CmdOracle, Deterministic) {
    auto c = default_config("oracle");
    c.size = 3000;
    c.seeds = 3;
    EXPECT_EQ(csv_of(run_command(c)), csv_of(run_command(c)));
    auto other = c;
    other.seed = 2;
    EXPECT_NE(csv_of(run_command(c)), csv_of(run_command(other)));
}
