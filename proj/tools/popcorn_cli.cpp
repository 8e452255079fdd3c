// popcorn: figure-data emitter.
//
//   popcorn <subcommand> [--f F] [--y Y] [--eps E] [--nmax N] [--qmax Q]
//           [--grid-min A] [--grid-max B] [--grid-points P] [--seed S]
//           [--depth D] [--size N] [--seeds K] [--format csv|json] [--out PATH]

#include <popcorn/figures.hpp>

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

void add_flags(CLI::App* sub, popcorn::run_config& c) {
    sub->add_option("--f", c.f, "damping factor / bond probability")->capture_default_str();
    sub->add_option("--y", c.y, "Lorentzian regularisation")->capture_default_str();
    sub->add_option("--eps", c.eps, "imaginary part of the eta argument")->capture_default_str();
    sub->add_option("--nmax", c.n_max, "chain-length / series cap")->capture_default_str();
    sub->add_option("--qmax", c.q_max, "largest denominator")->capture_default_str();
    sub->add_option("--grid-min", c.grid_min)->capture_default_str();
    sub->add_option("--grid-max", c.grid_max)->capture_default_str();
    sub->add_option("--grid-points", c.grid_points)->capture_default_str();
    sub->add_option("--seed", c.seed, "first PRNG seed")->capture_default_str();
    sub->add_option("--depth", c.depth, "peak-series depth")->capture_default_str();
    sub->add_option("--size", c.size, "vertices per Monte-Carlo sample")->capture_default_str();
    sub->add_option("--seeds", c.seeds, "number of Monte-Carlo samples")->capture_default_str();
    const std::map<std::string, popcorn::output_format> formats{{"csv", popcorn::output_format::csv},
                                                                 {"json", popcorn::output_format::json}};
    sub->add_option("--format", c.format, "csv or json")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--out", c.out, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Figure data for the popcorn-function spectra"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(popcorn::library_version));

    const char* names[] = {"popcorn", "spectral-density", "bridge", "dyson", "lifshitz", "oracle"};
    const char* help[] = {"(x, g(x)) at reduced rationals",
                          "regularised spectral density on a grid",
                          "-ln|eta(x + i eps)| against the popcorn term",
                          "integrated density of states of the binary-mass chain",
                          "edge and interior peak series with tail fits",
                          "Monte-Carlo histogram with analytic overlay"};
    std::map<std::string, popcorn::run_config> configs;
    for (int i = 0; i < 6; ++i) {
        configs[names[i]] = popcorn::default_config(names[i]);
        add_flags(app.add_subcommand(names[i], help[i]), configs[names[i]]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const auto& c = configs.at(app.get_subcommands().front()->get_name());
    try {
        const auto data = popcorn::run_command(c);
        if (c.out.empty()) {
            popcorn::write_dataset(std::cout, data, c.format);
            std::cout.flush();
            if (!std::cout) throw std::runtime_error("failed writing to standard output");
        } else {
            // Render fully first so a failure never leaves a partial file.
            std::ostringstream buf;
            popcorn::write_dataset(buf, data, c.format);
            std::ofstream out(c.out, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open " + c.out);
            out << buf.str();
            out.close();
            if (!out) throw std::runtime_error("failed writing " + c.out);
        }
    } catch (const std::exception& e) {
        std::cerr << "popcorn " << c.command << ": " << e.what() << '\n';
        return 2;
    }
    return 0;
}
