#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dproc/bin_process.hpp"
#include "dproc/trajectory.hpp"

namespace dproc::harness {

enum class ExperimentKind {
    equivalence,
    degree_profile,
    tail_poisson,
    tail_moments,
    saturation,
    badballs,
    survival,
    indept_check,
};

std::string to_string(ExperimentKind kind);
ExperimentKind kind_from_string(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::saturation;
    std::uint32_t n = 0;
    std::uint32_t d = 2;
    std::uint64_t trials = 1;
    std::uint64_t base_seed = 1;
    BinMode mode = BinMode::accelerated;  // bin-process experiments
    std::vector<std::int64_t> checkpoints_s;
    std::vector<std::int64_t> checkpoints_t;
    std::vector<std::int64_t> checkpoints_m;
    std::string output_path;        // per-trial records; empty disables file output
    std::string format = "jsonl";   // per-trial record format: jsonl | csv
    std::uint32_t workers = 0;      // 0: $DPROC_WORKERS, then hardware count
    double epsilon = 0.2;           // indept-check: deficit floor((log n)^(1-epsilon))
    double window_width = 5.0;      // degree-profile window w
    double z = 1.96;                // Wilson intervals
    bool check_invariants = true;

    void validate() const;

    static ExperimentConfig from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

struct AggregateReport {
    ExperimentKind kind = ExperimentKind::saturation;
    nlohmann::json summary;  // scalar metrics, config echo, rng metadata
    std::vector<std::string> table_header;
    std::vector<std::vector<std::string>> table_rows;
    ViolationCounters violations;

    std::string to_csv() const;
};

// Runs all trials of the experiment (parallel, deterministically seeded),
// writes per-trial records and the aggregate table when an output path is
// set, and returns the aggregate. Identical configs produce byte-identical
// outputs for any worker count.
AggregateReport run_experiment(const ExperimentConfig& config);

std::uint32_t resolve_workers(std::uint32_t requested, std::uint64_t trials);

nlohmann::json record_to_json(const TrajectoryRecord& record, ExperimentKind kind);
std::string record_csv_header();
std::vector<std::string> record_to_csv_rows(const TrajectoryRecord& record, ExperimentKind kind);

}  // namespace dproc::harness
