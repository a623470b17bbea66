// Command-line driver: run policy comparisons, parameter sweeps, and generate
// synthetic traces.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavsim/uavsim.hpp"

namespace {

enum ExitCode { ok = 0, config_failure = 1, data_failure = 2, contract_failure = 3 };

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    for (const auto& item : uavsim::detail::split_list(csv, ',')) {
        double v = 0;
        if (!uavsim::detail::parse_number(item, v)) throw uavsim::config_error("--values: '" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw uavsim::config_error("--values: empty list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV data-collection simulator for grid-partitioned wildlife sensor networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    unsigned workers = 1;
    std::optional<int> dump_q_every;

    auto* run = app.add_subcommand("run", "Compare the configured policies over n_runs seeds");
    run->add_option("--config", config_path, "Experiment file")->required();
    run->add_option("--seed", seed, "Base seed (overrides [sim] base_seed)");
    run->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
    run->add_option("--workers", workers, "Parallel runs")->check(CLI::PositiveNumber);
    run->add_option("--dump-q-every", dump_q_every, "Write MDP Q-table snapshots every N rounds");

    std::string axis;
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "Sweep epsilon or grid size for the first configured policy");
    sweep->add_option("--config", config_path, "Experiment file")->required();
    sweep->add_option("--axis", axis, "epsilon or grid")->required();
    sweep->add_option("--values", values, "Comma-separated values (grid: cells per side)")->required();
    sweep->add_option("--seed", seed, "Base seed (overrides [sim] base_seed)");
    sweep->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
    sweep->add_option("--workers", workers, "Parallel runs")->check(CLI::PositiveNumber);

    uavsim::GenOptions gen_opts;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Write a synthetic hotspot trace CSV");
    gen->add_option("--seed", gen_opts.seed, "Generator seed");
    gen->add_option("--animals", gen_opts.animals, "Number of animals");
    gen->add_option("--hotspots", gen_opts.hotspots, "Number of hotspots");
    gen->add_option("--rounds", gen_opts.rounds, "Last round to sample");
    gen->add_option("--interval", gen_opts.sample_interval, "Rounds between fixes");
    gen->add_option("--width", gen_opts.width, "Area width in meters");
    gen->add_option("--height", gen_opts.height, "Area height in meters");
    gen->add_option("--stddev", gen_opts.stddev, "RMS spread around a hotspot in meters");
    gen->add_option("--switch-prob", gen_opts.switch_prob, "Per-fix probability of moving to another hotspot");
    gen->add_option("--min-dwell", gen_opts.min_dwell, "Rounds at a hotspot before a move is possible");
    gen->add_option("--out", gen_out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_failure;
    }

    try {
        if (*gen) {
            gen_opts.out = gen_out;
            const auto n = uavsim::cmd_gen(gen_opts);
            std::cout << "wrote " << n << " samples to " << gen_out << '\n';
            return ok;
        }

        auto spec = uavsim::parse_experiment_file(config_path);
        if (seed) spec.sim.base_seed = *seed;
        if (out_dir) spec.output_dir = *out_dir;
        uavsim::RunOptions opts{workers, dump_q_every};

        if (*run) {
            uavsim::cmd_run(spec, opts, std::cout);
        } else {
            uavsim::cmd_sweep(spec, uavsim::parse_sweep_axis(axis), parse_values(values), opts, std::cout);
        }
        return ok;
    } catch (const uavsim::data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return data_failure;
    } catch (const uavsim::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_failure;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return contract_failure;
    }
}
