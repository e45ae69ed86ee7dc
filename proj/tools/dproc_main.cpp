// Command-line front end: `run` executes a configured experiment, `oracle`
// answers exact small-instance queries, `predict` evaluates the closed-form
// model. Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dproc/analytics.hpp"
#include "dproc/harness.hpp"
#include "dproc/oracle.hpp"

namespace {

std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::string token;
    for (char c : text) {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stoll(token));
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) out.push_back(std::stoll(token));
    return out;
}

int run_command(const std::string& config_path, dproc::harness::ExperimentConfig cfg,
                const std::string& kind_name, const std::string& mode_name,
                const std::string& cs, const std::string& ct, const std::string& cm,
                bool has_kind) {
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config file: " << config_path << "\n";
            return 2;
        }
        nlohmann::json doc = nlohmann::json::parse(in);
        dproc::harness::ExperimentConfig from_file =
            dproc::harness::ExperimentConfig::from_json(doc);
        // Flags given on the command line take precedence over the file.
        if (has_kind) from_file.kind = dproc::harness::kind_from_string(kind_name);
        if (cfg.n) from_file.n = cfg.n;
        if (cfg.trials != 1) from_file.trials = cfg.trials;
        from_file.base_seed = cfg.base_seed;
        if (!cfg.output_path.empty()) from_file.output_path = cfg.output_path;
        cfg = from_file;
    } else {
        if (!has_kind) {
            std::cerr << "--kind is required (or use --config)\n";
            return 1;
        }
        cfg.kind = dproc::harness::kind_from_string(kind_name);
    }
    if (!mode_name.empty())
        cfg.mode = mode_name == "faithful" ? dproc::BinMode::faithful
                                           : dproc::BinMode::accelerated;
    if (!cs.empty()) cfg.checkpoints_s = parse_list(cs);
    if (!ct.empty()) cfg.checkpoints_t = parse_list(ct);
    if (!cm.empty()) cfg.checkpoints_m = parse_list(cm);

    const dproc::harness::AggregateReport report = dproc::harness::run_experiment(cfg);
    std::cout << report.summary.dump(2) << "\n";
    std::cout << report.to_csv();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and verification toolkit for the degree-capped random graph process"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "run a Monte Carlo experiment");
    dproc::harness::ExperimentConfig cfg;
    std::string kind_name, mode_name, config_path, cs, ct, cm;
    run->add_option("--kind", kind_name,
                    "equivalence|degree-profile|tail-poisson|tail-moments|saturation|badballs|"
                    "survival|indept-check");
    run->add_option("--config", config_path, "JSON config file (flags override)");
    run->add_option("--n", cfg.n, "number of vertices / bins");
    run->add_option("--d", cfg.d, "degree cap");
    run->add_option("--trials", cfg.trials, "independent trials");
    run->add_option("--seed", cfg.base_seed, "base seed (per-trial seeds are derived)");
    run->add_option("--mode", mode_name, "bin sampler mode: faithful|accelerated");
    run->add_option("--checkpoints-s", cs, "comma-separated edge counts");
    run->add_option("--checkpoints-t", ct, "comma-separated deficits");
    run->add_option("--checkpoints-m", cm, "comma-separated ball counts (faithful mode)");
    run->add_option("--out", cfg.output_path, "per-trial record file (JSONL/CSV)");
    run->add_option("--format", cfg.format, "jsonl|csv");
    run->add_option("--workers", cfg.workers, "worker threads (default $DPROC_WORKERS)");
    run->add_option("--eps", cfg.epsilon, "indept-check deficit exponent offset");
    run->add_option("--window", cfg.window_width, "degree-profile window width");
    run->add_option("--z", cfg.z, "Wilson interval z");

    // --- oracle ---
    auto* oracle_cmd = app.add_subcommand("oracle", "exact small-instance queries");
    std::uint32_t on = 4, od = 2;
    std::string query = "nonsat", json_out;
    std::int64_t oracle_s = 0;
    std::size_t budget = 10'000'000;
    oracle_cmd->add_option("--n", on, "vertices")->required();
    oracle_cmd->add_option("--d", od, "degree cap")->required();
    oracle_cmd->add_option("--query", query, "nonsat|outcomes|degrees");
    oracle_cmd->add_option("--s", oracle_s, "edge count for --query degrees");
    oracle_cmd->add_option("--budget", budget, "state budget");
    oracle_cmd->add_option("--json", json_out, "write the distribution as JSON");

    // --- predict ---
    auto* predict = app.add_subcommand("predict", "closed-form model values");
    std::uint32_t pn = 0, pd = 2;
    double ps = -1;
    std::int64_t pt = -1;
    predict->add_option("--n", pn, "vertices")->required();
    predict->add_option("--d", pd, "degree cap")->required();
    predict->add_option("--s", ps, "edge count: prints the inverse map and occupancy");
    predict->add_option("--t", pt, "deficit: prints late degree rates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed())
            return run_command(config_path, cfg, kind_name, mode_name, cs, ct, cm,
                               run->count("--kind") > 0);

        if (oracle_cmd->parsed()) {
            if (query == "nonsat") {
                const auto p = dproc::oracle::exact_nonsaturation_probability(on, od, budget);
                std::printf("nonsaturation probability: %s = %.12g\n",
                            dproc::oracle::rational_string(p).c_str(),
                            dproc::oracle::rational_double(p));
            } else if (query == "outcomes") {
                const auto dist = dproc::oracle::exact_outcome_distribution(on, od, budget);
                std::cout << dproc::oracle::to_json(dist, 2) << "\n";
                if (!json_out.empty()) {
                    std::ofstream out(json_out);
                    out << dproc::oracle::to_json(dist, 2) << "\n";
                }
                return 0;
            } else if (query == "degrees") {
                const auto dist =
                    dproc::oracle::exact_degree_count_distribution(on, od, oracle_s, budget);
                std::printf("reach probability at s=%lld: %s\n",
                            static_cast<long long>(oracle_s),
                            dproc::oracle::rational_string(dist.reach_probability).c_str());
                for (const auto& [counts, mass] : dist.entries) {
                    std::string text;
                    for (std::size_t i = 0; i < counts.size(); ++i) {
                        if (i) text.push_back(',');
                        text += std::to_string(counts[i]);
                    }
                    std::printf("D=(%s): %s = %.12g\n", text.c_str(),
                                dproc::oracle::rational_string(mass).c_str(),
                                dproc::oracle::rational_double(mass));
                }
            } else {
                std::cerr << "unknown query: " << query << "\n";
                return 1;
            }
            if (!json_out.empty() && query == "nonsat") {
                const auto dist = dproc::oracle::exact_outcome_distribution(on, od, budget);
                std::ofstream out(json_out);
                out << dproc::oracle::to_json(dist, 2) << "\n";
            }
            return 0;
        }

        if (predict->parsed()) {
            const dproc::AnalyticModel model(pn, pd);
            std::printf("n=%u d=%u log n=%.12g\n", pn, pd, model.log_n());
            if (ps >= 0) {
                const double x = model.ell_inverse(ps);
                std::printf("ell_inverse(%.12g) = %.12g (mu = %.12g)\n", ps, x, x / pn);
                std::printf("ell(x) = %.12g, tau(x) = %.12g\n", model.ell(x), model.tau(x));
                for (std::uint32_t i = 0; i < pd; ++i)
                    std::printf("beta_%u = %.12g\n", i, model.beta(x, i));
                const double lambda = x / pn;
                for (std::uint32_t i = 0; i <= pd; ++i)
                    std::printf("truncated_poisson(%u) = %.12g\n", i,
                                model.truncated_poisson_pmf(lambda, i));
            }
            if (pt >= 0) {
                for (std::uint32_t j = 0; j + 2 <= pd; ++j)
                    std::printf("late_degree_rate(j=%u, t=%lld) = %.12g\n", j,
                                static_cast<long long>(pt),
                                model.late_degree_rate(j, static_cast<double>(pt)));
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
