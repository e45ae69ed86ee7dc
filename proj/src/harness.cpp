#include "dproc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "dproc/analytics.hpp"
#include "dproc/graph_process.hpp"
#include "dproc/oracle.hpp"
#include "dproc/stats.hpp"

namespace dproc::harness {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string join_i64(const std::vector<std::int64_t>& values, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out.push_back(sep);
        out += std::to_string(values[i]);
    }
    return out;
}

// Seed salts per sampler so the three samplers of the equivalence experiment
// draw from unrelated streams. Fixed, documented constants; the graph
// sampler's salt is zero so single-sampler experiments use base_seed as is.
constexpr std::uint64_t salt_graph = 0;
constexpr std::uint64_t salt_bin_faithful = 0x62696e2d66ull;
constexpr std::uint64_t salt_bin_accelerated = 0x62696e2d61ull;

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::equivalence: return "equivalence";
        case ExperimentKind::degree_profile: return "degree-profile";
        case ExperimentKind::tail_poisson: return "tail-poisson";
        case ExperimentKind::tail_moments: return "tail-moments";
        case ExperimentKind::saturation: return "saturation";
        case ExperimentKind::badballs: return "badballs";
        case ExperimentKind::survival: return "survival";
        case ExperimentKind::indept_check: return "indept-check";
    }
    return "?";
}

ExperimentKind kind_from_string(const std::string& name) {
    for (ExperimentKind kind :
         {ExperimentKind::equivalence, ExperimentKind::degree_profile, ExperimentKind::tail_poisson,
          ExperimentKind::tail_moments, ExperimentKind::saturation, ExperimentKind::badballs,
          ExperimentKind::survival, ExperimentKind::indept_check})
        if (to_string(kind) == name) return kind;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (format != "jsonl" && format != "csv")
        throw std::invalid_argument("format must be jsonl or csv");
    if (!checkpoints_m.empty() && mode != BinMode::faithful)
        throw std::invalid_argument("ball-count checkpoints require faithful mode");
    const std::int64_t cap = static_cast<std::int64_t>(d) * n / 2;
    for (std::int64_t s : checkpoints_s)
        if (s < 0 || s > cap) throw std::invalid_argument("edge-count checkpoint out of range");
    for (std::int64_t t : checkpoints_t)
        if (t < 0 || t > cap) throw std::invalid_argument("deficit checkpoint out of range");
    switch (kind) {
        case ExperimentKind::equivalence:
            if (n > oracle::max_oracle_vertices)
                throw std::invalid_argument("equivalence requires n <= 11 (exact reference)");
            break;
        case ExperimentKind::degree_profile:
        case ExperimentKind::tail_poisson:
        case ExperimentKind::tail_moments:
        case ExperimentKind::survival:
        case ExperimentKind::indept_check:
            if (n < 3) throw std::invalid_argument("this experiment requires n >= 3");
            break;
        default: break;
    }
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("epsilon must be in (0,1)");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
    ExperimentConfig cfg;
    cfg.kind = kind_from_string(doc.at("kind").get<std::string>());
    cfg.n = doc.at("n").get<std::uint32_t>();
    cfg.d = doc.at("d").get<std::uint32_t>();
    cfg.trials = doc.value("trials", std::uint64_t{1});
    if (doc.contains("base_seed")) {
        const auto& seed = doc["base_seed"];
        cfg.base_seed = seed.is_string() ? std::stoull(seed.get<std::string>())
                                         : seed.get<std::uint64_t>();
    }
    if (doc.contains("mode")) {
        const std::string mode = doc["mode"].get<std::string>();
        if (mode == "faithful")
            cfg.mode = BinMode::faithful;
        else if (mode == "accelerated")
            cfg.mode = BinMode::accelerated;
        else
            throw std::invalid_argument("mode must be faithful or accelerated");
    }
    cfg.checkpoints_s = doc.value("checkpoints_s", std::vector<std::int64_t>{});
    cfg.checkpoints_t = doc.value("checkpoints_t", std::vector<std::int64_t>{});
    cfg.checkpoints_m = doc.value("checkpoints_m", std::vector<std::int64_t>{});
    cfg.output_path = doc.value("output", std::string{});
    cfg.format = doc.value("format", std::string{"jsonl"});
    cfg.workers = doc.value("workers", std::uint32_t{0});
    cfg.epsilon = doc.value("epsilon", 0.2);
    cfg.window_width = doc.value("window_width", 5.0);
    cfg.z = doc.value("z", 1.96);
    cfg.check_invariants = doc.value("check_invariants", true);
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json doc;
    doc["kind"] = to_string(kind);
    doc["n"] = n;
    doc["d"] = d;
    doc["trials"] = trials;
    doc["base_seed"] = std::to_string(base_seed);
    doc["mode"] = dproc::to_string(mode);
    doc["checkpoints_s"] = checkpoints_s;
    doc["checkpoints_t"] = checkpoints_t;
    doc["checkpoints_m"] = checkpoints_m;
    doc["output"] = output_path;
    doc["format"] = format;
    doc["epsilon"] = epsilon;
    doc["window_width"] = window_width;
    doc["z"] = z;
    doc["check_invariants"] = check_invariants;
    return doc;
}

std::uint32_t resolve_workers(std::uint32_t requested, std::uint64_t trials) {
    std::uint32_t workers = requested;
    if (workers == 0) {
        if (const char* env = std::getenv("DPROC_WORKERS")) workers = std::atoi(env);
    }
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<std::uint32_t>(
        std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, trials)));
}

nlohmann::json record_to_json(const TrajectoryRecord& rec, ExperimentKind kind) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["type"] = "trial";
    doc["kind"] = to_string(kind);
    doc["sampler"] = rec.sampler;
    doc["trial"] = rec.trial;
    doc["seed"] = std::to_string(rec.seed);
    doc["n"] = rec.n;
    doc["d"] = rec.d;
    doc["final_edges"] = rec.final_edges;
    doc["saturated"] = rec.saturated;
    doc["unsaturated_degrees"] = rec.unsaturated_degrees;
    doc["final_degree_counts"] = rec.final_degree_counts;
    doc["last_below_cap"] = rec.last_below_cap;
    if (rec.final_balls) doc["final_balls"] = *rec.final_balls;
    if (rec.bad_balls_final) doc["bad_balls_final"] = *rec.bad_balls_final;
    if (rec.final_edge_list) doc["final_edge_list"] = *rec.final_edge_list;
    doc["violations"] = {
        {"unsat_bounds", rec.violations.unsat_bounds},
        {"occupancy_degree_gap", rec.violations.occupancy_degree_gap},
        {"ball_partition", rec.violations.ball_partition},
        {"edge_identity", rec.violations.edge_identity},
        {"edge_identity_adjusted", rec.violations.edge_identity_adjusted},
        {"edge_identity_checks", rec.violations.edge_identity_checks},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const CheckpointRow& row : rec.checkpoints) {
        nlohmann::json r;
        r["trigger"] = dproc::to_string(row.trigger);
        r["reached"] = row.reached;
        r["s"] = row.s;
        r["t"] = row.t;
        if (row.reached) {
            r["degree_counts"] = row.degree_counts;
            r["unsaturated_edges"] = row.unsaturated_edges;
            r["critical_edges"] = row.critical_edges;
        }
        if (row.m_first) r["m_first"] = *row.m_first;
        if (row.m_last) r["m_last"] = *row.m_last;
        if (row.y_counts) r["y_counts"] = *row.y_counts;
        if (row.bad_balls) r["bad_balls"] = *row.bad_balls;
        if (row.bad_in_unsat) r["bad_in_unsat"] = *row.bad_in_unsat;
        if (row.waiting_present) r["waiting_present"] = *row.waiting_present;
        if (row.capped_occupancy) r["capped_occupancy"] = *row.capped_occupancy;
        if (row.unsat_overflow) r["unsat_overflow"] = *row.unsat_overflow;
        rows.push_back(std::move(r));
    }
    doc["checkpoints"] = std::move(rows);
    return doc;
}

std::string record_csv_header() {
    return "trial,seed,sampler,kind,n,d,final_edges,saturated,unsaturated_degrees,"
           "last_below_cap,final_balls,bad_balls_final,trigger,reached,s,t,m_first,m_last,"
           "degree_counts,y_counts,bad_balls,bad_in_unsat,waiting_present,capped_occupancy,"
           "unsat_overflow,unsaturated_edges,critical_edges";
}

std::vector<std::string> record_to_csv_rows(const TrajectoryRecord& rec, ExperimentKind kind) {
    std::string prefix = std::to_string(rec.trial) + ',' + std::to_string(rec.seed) + ',' +
                         rec.sampler + ',' + to_string(kind) + ',' + std::to_string(rec.n) + ',' +
                         std::to_string(rec.d) + ',' + std::to_string(rec.final_edges) + ',' +
                         (rec.saturated ? "1" : "0") + ',';
    {
        std::string degrees;
        for (std::size_t i = 0; i < rec.unsaturated_degrees.size(); ++i) {
            if (i) degrees.push_back(';');
            degrees += std::to_string(rec.unsaturated_degrees[i]);
        }
        prefix += degrees + ',' + join_i64(rec.last_below_cap) + ',';
    }
    prefix += (rec.final_balls ? std::to_string(*rec.final_balls) : "") + ',';
    prefix += (rec.bad_balls_final ? std::to_string(*rec.bad_balls_final) : "");

    auto opt = [](const std::optional<std::int64_t>& v) {
        return v ? std::to_string(*v) : std::string{};
    };
    std::vector<std::string> lines;
    if (rec.checkpoints.empty()) {
        lines.push_back(prefix + ",,,,,,,,,,,,,,");
        return lines;
    }
    for (const CheckpointRow& row : rec.checkpoints) {
        std::string line = prefix + ',' + dproc::to_string(row.trigger) + ',' +
                           (row.reached ? "1" : "0") + ',' + std::to_string(row.s) + ',' +
                           std::to_string(row.t) + ',' + opt(row.m_first) + ',' +
                           opt(row.m_last) + ',';
        line += (row.reached ? join_i64(row.degree_counts) : std::string{}) + ',';
        line += (row.y_counts ? join_i64(*row.y_counts) : std::string{}) + ',';
        line += opt(row.bad_balls) + ',' + opt(row.bad_in_unsat) + ',' +
                opt(row.waiting_present) + ',' + opt(row.capped_occupancy) + ',' +
                opt(row.unsat_overflow) + ',';
        line += row.reached ? std::to_string(row.unsaturated_edges) : std::string{};
        line += ',';
        line += row.reached ? std::to_string(row.critical_edges) : std::string{};
        lines.push_back(std::move(line));
    }
    return lines;
}

namespace {

void write_record(std::ostream* sink, const TrajectoryRecord& rec, const ExperimentConfig& cfg) {
    if (!sink) return;
    if (cfg.format == "jsonl") {
        *sink << record_to_json(rec, cfg.kind).dump() << '\n';
    } else {
        for (const std::string& line : record_to_csv_rows(rec, cfg.kind)) *sink << line << '\n';
    }
}

// Runs config.trials trials on a worker pool. Each worker handles one
// contiguous block of trial indices and appends records to its own shard
// file, so both the merged record stream and the block-ordered accumulator
// reduction are independent of scheduling and worker count.
template <typename Acc, typename PerTrial>
Acc run_trials(const ExperimentConfig& cfg, std::uint64_t seed_salt, const std::string& shard_tag,
               std::vector<std::string>* shards, PerTrial per_trial) {
    const std::uint64_t trials = cfg.trials;
    const std::uint32_t workers = resolve_workers(cfg.workers, trials);
    std::vector<Acc> accs(workers);
    std::vector<std::string> shard_paths(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                std::ofstream shard;
                std::ostream* sink = nullptr;
                if (!cfg.output_path.empty()) {
                    shard_paths[w] =
                        cfg.output_path + ".shard-" + shard_tag + "-" + std::to_string(w);
                    shard.open(shard_paths[w], std::ios::binary | std::ios::trunc);
                    if (!shard) throw std::runtime_error("cannot open " + shard_paths[w]);
                    sink = &shard;
                }
                const std::uint64_t lo = trials * w / workers;
                const std::uint64_t hi = trials * (w + 1) / workers;
                for (std::uint64_t i = lo; i < hi; ++i) {
                    try {
                        per_trial(accs[w], i, trial_seed(cfg.base_seed ^ seed_salt, i), sink);
                    } catch (const std::exception& e) {
                        throw std::runtime_error("trial " + std::to_string(i) + ": " + e.what());
                    }
                }
                if (sink) {
                    shard.flush();
                    if (!shard) throw std::runtime_error("write failed: " + shard_paths[w]);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (std::uint32_t w = 0; w < workers; ++w) {
        if (!shard_paths[w].empty() && shards) shards->push_back(shard_paths[w]);
        if (errors[w]) std::rethrow_exception(errors[w]);
    }
    Acc merged = std::move(accs[0]);
    for (std::uint32_t w = 1; w < workers; ++w) merged.merge(std::move(accs[w]));
    return merged;
}

void assemble_output(const ExperimentConfig& cfg, const std::vector<std::string>& shards,
                     bool complete, const std::string& error) {
    if (cfg.output_path.empty()) return;
    std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + cfg.output_path);
    if (cfg.format == "csv") out << record_csv_header() << '\n';
    for (const std::string& shard : shards) {
        std::ifstream in(shard, std::ios::binary);
        out << in.rdbuf();
        in.close();
        std::remove(shard.c_str());
    }
    if (cfg.format == "jsonl") {
        nlohmann::json footer;
        footer["schema_version"] = 1;
        footer["type"] = "footer";
        footer["kind"] = to_string(cfg.kind);
        footer["trials"] = cfg.trials;
        footer["complete"] = complete;
        if (!error.empty()) footer["error"] = error;
        out << footer.dump() << '\n';
    } else {
        out << "#footer,complete=" << (complete ? "1" : "0") << ",trials=" << cfg.trials;
        if (!error.empty()) out << ",error=" << error;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + cfg.output_path);
}

nlohmann::json violations_json(const ViolationCounters& v) {
    return {
        {"unsat_bounds", v.unsat_bounds},
        {"occupancy_degree_gap", v.occupancy_degree_gap},
        {"ball_partition", v.ball_partition},
        {"edge_identity", v.edge_identity},
        {"edge_identity_adjusted", v.edge_identity_adjusted},
        {"edge_identity_checks", v.edge_identity_checks},
    };
}

nlohmann::json rng_metadata() {
    return {
        {"engine", "mt19937_64"},
        {"uniform_int", "threshold-rejection modulo"},
        {"uniform_real", "(x >> 11 + 1) * 2^-53, in (0,1]"},
        {"geometric", "floor(log(u)/log1p(-p)) on one variate"},
        {"trial_seed", "splitmix64(base_seed ^ salt ^ splitmix64(trial + 1))"},
        {"sampler_salts",
         {{"graph", salt_graph}, {"bin-faithful", salt_bin_faithful},
          {"bin-accelerated", salt_bin_accelerated}}},
    };
}

// ---- per-kind accumulators -------------------------------------------------

struct SaturationAcc {
    std::uint64_t trials = 0;
    std::uint64_t nonsat = 0;
    std::map<std::size_t, std::uint64_t> unsat_k;  // final unsaturated-vertex counts
    ViolationCounters violations;
    void merge(SaturationAcc&& o) {
        trials += o.trials;
        nonsat += o.nonsat;
        for (const auto& [k, c] : o.unsat_k) unsat_k[k] += c;
        violations.merge(o.violations);
    }
};

struct MaskCountAcc {
    std::unordered_map<oracle::EdgeMask, std::uint64_t> counts;
    ViolationCounters violations;
    void merge(MaskCountAcc&& o) {
        for (const auto& [mask, c] : o.counts) counts[mask] += c;
        violations.merge(o.violations);
    }
};

struct ProfileCell {
    std::uint64_t inside = 0;
    std::uint64_t count = 0;
    unsigned __int128 sum = 0;
    unsigned __int128 sumsq = 0;
};

struct DegreeProfileAcc {
    std::vector<ProfileCell> cells;  // [s_index * d + j]
    std::uint64_t unreached = 0;
    ViolationCounters violations;
    void merge(DegreeProfileAcc&& o) {
        if (cells.size() < o.cells.size()) cells.resize(o.cells.size());
        for (std::size_t i = 0; i < o.cells.size(); ++i) {
            cells[i].inside += o.cells[i].inside;
            cells[i].count += o.cells[i].count;
            cells[i].sum += o.cells[i].sum;
            cells[i].sumsq += o.cells[i].sumsq;
        }
        unreached += o.unreached;
        violations.merge(o.violations);
    }
};

struct TailAcc {
    std::vector<stats::EmpiricalPmf> pmf;  // [t_index * (d-1) + j]
    std::uint64_t unreached = 0;
    ViolationCounters violations;
    void merge(TailAcc&& o) {
        if (pmf.size() < o.pmf.size()) pmf.resize(o.pmf.size());
        for (std::size_t i = 0; i < o.pmf.size(); ++i) pmf[i].merge(o.pmf[i]);
        unreached += o.unreached;
        violations.merge(o.violations);
    }
};

struct SurvivalAcc {
    std::vector<std::uint64_t> below;  // [t_index * (d-1) + j]
    std::uint64_t trials = 0;
    ViolationCounters violations;
    void merge(SurvivalAcc&& o) {
        if (below.size() < o.below.size()) below.resize(o.below.size());
        for (std::size_t i = 0; i < o.below.size(); ++i) below[i] += o.below[i];
        trials += o.trials;
        violations.merge(o.violations);
    }
};

struct BadBallsAcc {
    std::uint64_t trials = 0;
    std::uint64_t sum_bf = 0;
    unsigned __int128 sumsq_bf = 0;
    std::vector<std::int64_t> sum_btilde;   // per t index
    std::vector<std::uint64_t> reached;     // per t index
    ViolationCounters violations;
    void merge(BadBallsAcc&& o) {
        trials += o.trials;
        sum_bf += o.sum_bf;
        sumsq_bf += o.sumsq_bf;
        if (sum_btilde.size() < o.sum_btilde.size()) {
            sum_btilde.resize(o.sum_btilde.size());
            reached.resize(o.reached.size());
        }
        for (std::size_t i = 0; i < o.sum_btilde.size(); ++i) {
            sum_btilde[i] += o.sum_btilde[i];
            reached[i] += o.reached[i];
        }
        violations.merge(o.violations);
    }
};

struct IndeptAcc {
    std::vector<std::uint64_t> with_edge;  // per t index
    std::vector<std::uint64_t> reached;
    std::uint64_t trials = 0;
    ViolationCounters violations;
    void merge(IndeptAcc&& o) {
        if (with_edge.size() < o.with_edge.size()) {
            with_edge.resize(o.with_edge.size());
            reached.resize(o.reached.size());
        }
        for (std::size_t i = 0; i < o.with_edge.size(); ++i) {
            with_edge[i] += o.with_edge[i];
            reached[i] += o.reached[i];
        }
        trials += o.trials;
        violations.merge(o.violations);
    }
};

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Fills kind-specific default checkpoints so the config is self-contained.
ExperimentConfig prepared(ExperimentConfig cfg) {
    const std::int64_t cap = static_cast<std::int64_t>(cfg.d) * cfg.n / 2;
    switch (cfg.kind) {
        case ExperimentKind::degree_profile:
            if (cfg.checkpoints_s.empty())
                cfg.checkpoints_s = {cap / 2, cap * 4 / 5, cap * 19 / 20};
            cfg.checkpoints_s = sorted_unique(cfg.checkpoints_s);
            break;
        case ExperimentKind::tail_poisson:
        case ExperimentKind::tail_moments:
            if (cfg.checkpoints_t.empty())
                cfg.checkpoints_t = {static_cast<std::int64_t>(
                    std::ceil(2.0 * std::log(static_cast<double>(cfg.n))))};
            cfg.checkpoints_t = sorted_unique(cfg.checkpoints_t);
            break;
        case ExperimentKind::survival:
            if (cfg.checkpoints_t.empty()) {
                const AnalyticModel model(cfg.n, cfg.d);
                const double scale = std::pow(model.log_n(), cfg.d - 1) /
                                     (2.0 * AnalyticModel::falling_factorial(cfg.d - 1, cfg.d - 1));
                for (double f : {0.5, 1.0, 2.0, 4.0}) {
                    const std::int64_t t =
                        std::max<std::int64_t>(1, std::llround(f * scale));
                    if (t <= cap) cfg.checkpoints_t.push_back(t);
                }
            }
            cfg.checkpoints_t = sorted_unique(cfg.checkpoints_t);
            break;
        case ExperimentKind::badballs:
            if (cfg.checkpoints_t.empty())
                for (std::int64_t t : {1, 10, 100, 1000})
                    if (t <= cap) cfg.checkpoints_t.push_back(t);
            cfg.checkpoints_t = sorted_unique(cfg.checkpoints_t);
            break;
        case ExperimentKind::indept_check:
            if (cfg.checkpoints_t.empty()) {
                const double log_n = std::log(static_cast<double>(cfg.n));
                const std::int64_t t =
                    static_cast<std::int64_t>(std::floor(std::pow(log_n, 1.0 - cfg.epsilon)));
                cfg.checkpoints_t = {std::max<std::int64_t>(1, std::min(t, cap))};
            }
            cfg.checkpoints_t = sorted_unique(cfg.checkpoints_t);
            break;
        default: break;
    }
    return cfg;
}

AggregateReport saturation_report(const ExperimentConfig& cfg, const SaturationAcc& acc) {
    AggregateReport report;
    report.kind = cfg.kind;
    report.violations = acc.violations;
    const double p_hat = static_cast<double>(acc.nonsat) / static_cast<double>(acc.trials);
    const stats::Interval wilson = stats::wilson_interval(acc.nonsat, acc.trials, cfg.z);
    report.summary["trials"] = acc.trials;
    report.summary["nonsaturated"] = acc.nonsat;
    report.summary["p_hat"] = p_hat;
    report.summary["wilson_lo"] = wilson.lo;
    report.summary["wilson_hi"] = wilson.hi;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [k, c] : acc.unsat_k) hist[std::to_string(k)] = c;
    report.summary["final_unsaturated_histogram"] = hist;
    report.table_header = {"n", "d", "trials", "nonsaturated", "p_hat", "wilson_lo", "wilson_hi"};
    report.table_rows.push_back({std::to_string(cfg.n), std::to_string(cfg.d),
                                 std::to_string(acc.trials), std::to_string(acc.nonsat),
                                 fmt(p_hat), fmt(wilson.lo), fmt(wilson.hi)});
    return report;
}

}  // namespace

std::string AggregateReport::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < table_header.size(); ++i) {
        if (i) out.push_back(',');
        out += table_header[i];
    }
    out.push_back('\n');
    for (const auto& row : table_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += row[i];
        }
        out.push_back('\n');
    }
    return out;
}

AggregateReport run_experiment(const ExperimentConfig& raw_config) {
    raw_config.validate();
    const ExperimentConfig cfg = prepared(raw_config);
    std::vector<std::string> shards;
    AggregateReport report;
    report.kind = cfg.kind;

    RunOptions options;
    options.checkpoints_s = cfg.checkpoints_s;
    options.checkpoints_t = cfg.checkpoints_t;
    options.checkpoints_m = cfg.checkpoints_m;
    options.check_invariants = cfg.check_invariants;

    try {
        switch (cfg.kind) {
            case ExperimentKind::saturation: {
                const SaturationAcc acc = run_trials<SaturationAcc>(
                    cfg, salt_graph, "g", &shards,
                    [&](SaturationAcc& a, std::uint64_t trial, std::uint64_t seed,
                        std::ostream* sink) {
                        thread_local std::unique_ptr<GraphProcess> process;
                        if (!process || process->graph().vertex_count() != cfg.n ||
                            process->graph().degree_cap() != cfg.d)
                            process = std::make_unique<GraphProcess>(cfg.n, cfg.d, seed);
                        else
                            process->reset(seed);
                        TrajectoryRecord rec = process->run(options);
                        rec.trial = trial;
                        ++a.trials;
                        if (!rec.saturated) ++a.nonsat;
                        ++a.unsat_k[rec.unsaturated_degrees.size()];
                        a.violations.merge(rec.violations);
                        write_record(sink, rec, cfg);
                    });
                report = saturation_report(cfg, acc);
                break;
            }
            case ExperimentKind::equivalence: {
                const oracle::ExactDistribution exact =
                    oracle::exact_outcome_distribution(cfg.n, cfg.d);
                struct SamplerSpec {
                    const char* name;
                    std::uint64_t salt;
                };
                const SamplerSpec samplers[] = {{"graph", salt_graph},
                                                {"bin-faithful", salt_bin_faithful},
                                                {"bin-accelerated", salt_bin_accelerated}};
                report.table_header = {"sampler",  "edges",    "prob_num", "prob_den",
                                       "expected", "observed", "z"};
                double max_abs_z = 0.0;
                std::uint64_t unknown_states = 0;
                nlohmann::json per_sampler = nlohmann::json::object();
                for (const SamplerSpec& sampler : samplers) {
                    const bool is_graph = sampler.salt == salt_graph;
                    const BinMode mode = sampler.salt == salt_bin_faithful
                                             ? BinMode::faithful
                                             : BinMode::accelerated;
                    MaskCountAcc acc = run_trials<MaskCountAcc>(
                        cfg, sampler.salt, sampler.name, &shards,
                        [&](MaskCountAcc& a, std::uint64_t trial, std::uint64_t seed,
                            std::ostream* sink) {
                            TrajectoryRecord rec;
                            const DegreeCappedGraph* final_graph = nullptr;
                            thread_local std::unique_ptr<GraphProcess> graph_process;
                            thread_local std::unique_ptr<BinProcess> bin_faithful;
                            thread_local std::unique_ptr<BinProcess> bin_accelerated;
                            if (is_graph) {
                                if (!graph_process ||
                                    graph_process->graph().vertex_count() != cfg.n ||
                                    graph_process->graph().degree_cap() != cfg.d)
                                    graph_process =
                                        std::make_unique<GraphProcess>(cfg.n, cfg.d, seed);
                                else
                                    graph_process->reset(seed);
                                rec = graph_process->run(options);
                                final_graph = &graph_process->graph();
                            } else {
                                auto& slot = mode == BinMode::faithful ? bin_faithful
                                                                       : bin_accelerated;
                                if (!slot || slot->graph().vertex_count() != cfg.n ||
                                    slot->graph().degree_cap() != cfg.d)
                                    slot = std::make_unique<BinProcess>(cfg.n, cfg.d, seed, mode);
                                else
                                    slot->reset(seed);
                                rec = slot->run(options);
                                final_graph = &slot->graph();
                            }
                            rec.trial = trial;
                            oracle::EdgeMask mask = 0;
                            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
                            for (std::uint32_t v = 0; v < cfg.n; ++v)
                                for (std::uint32_t k = 0; k < final_graph->degree(v); ++k) {
                                    const std::uint32_t w = final_graph->neighbors(v)[k];
                                    if (w > v) {
                                        mask |= oracle::EdgeMask{1} << oracle::pair_index(v, w);
                                        edges.emplace_back(v, w);
                                    }
                                }
                            rec.final_edge_list = std::move(edges);
                            ++a.counts[mask];
                            a.violations.merge(rec.violations);
                            write_record(sink, rec, cfg);
                        });
                    report.violations.merge(acc.violations);
                    double sampler_max_z = 0.0;
                    const double t_count = static_cast<double>(cfg.trials);
                    std::uint64_t matched = 0;
                    for (const auto& [mask, mass] : exact.entries) {
                        const double p = oracle::rational_double(mass);
                        const auto it = acc.counts.find(mask);
                        const std::uint64_t observed = it == acc.counts.end() ? 0 : it->second;
                        matched += observed;
                        const double sigma = std::sqrt(p * (1.0 - p) / t_count);
                        double z = 0.0;
                        if (sigma > 0.0)
                            z = (static_cast<double>(observed) / t_count - p) / sigma;
                        else if (observed != cfg.trials * (p == 1.0 ? 1 : 0))
                            z = std::numeric_limits<double>::infinity();
                        sampler_max_z = std::max(sampler_max_z, std::abs(z));
                        std::string edge_text;
                        for (const auto& [eu, ev] : oracle::mask_edges(mask, cfg.n)) {
                            if (!edge_text.empty()) edge_text.push_back(';');
                            edge_text += std::to_string(eu) + "-" + std::to_string(ev);
                        }
                        report.table_rows.push_back(
                            {sampler.name, edge_text,
                             oracle::rational_string(boost::multiprecision::numerator(mass)),
                             oracle::rational_string(boost::multiprecision::denominator(mass)),
                             fmt(p * t_count), std::to_string(observed), fmt(z)});
                    }
                    // Any final graph outside the exact support is a failure
                    // of the sampler, not sampling noise.
                    const std::uint64_t unknown = cfg.trials - matched;
                    unknown_states += unknown;
                    max_abs_z = std::max(max_abs_z, sampler_max_z);
                    per_sampler[sampler.name] = {{"max_abs_z", sampler_max_z},
                                                 {"off_support_trials", unknown}};
                }
                report.summary["per_sampler"] = per_sampler;
                report.summary["max_abs_z"] = max_abs_z;
                report.summary["off_support_trials"] = unknown_states;
                report.summary["terminal_classes"] = exact.entries.size();
                report.summary["exact_nonsaturation"] = oracle::rational_string(
                    oracle::exact_nonsaturation_probability(cfg.n, cfg.d));
                break;
            }
            case ExperimentKind::degree_profile: {
                const AnalyticModel model(cfg.n, cfg.d);
                const std::vector<std::int64_t>& s_list = cfg.checkpoints_s;
                std::vector<double> beta_table(s_list.size() * cfg.d);
                std::vector<double> x_table(s_list.size());
                for (std::size_t si = 0; si < s_list.size(); ++si) {
                    x_table[si] = model.ell_inverse(static_cast<double>(s_list[si]));
                    for (std::uint32_t j = 0; j < cfg.d; ++j)
                        beta_table[si * cfg.d + j] = model.beta(x_table[si], j);
                }
                std::unordered_map<std::int64_t, std::size_t> s_index;
                for (std::size_t si = 0; si < s_list.size(); ++si) s_index[s_list[si]] = si;
                DegreeProfileAcc acc = run_trials<DegreeProfileAcc>(
                    cfg, salt_graph, "g", &shards,
                    [&](DegreeProfileAcc& a, std::uint64_t trial, std::uint64_t seed,
                        std::ostream* sink) {
                        if (a.cells.empty()) a.cells.resize(s_list.size() * cfg.d);
                        thread_local std::unique_ptr<GraphProcess> process;
                        if (!process || process->graph().vertex_count() != cfg.n ||
                            process->graph().degree_cap() != cfg.d)
                            process = std::make_unique<GraphProcess>(cfg.n, cfg.d, seed);
                        else
                            process->reset(seed);
                        TrajectoryRecord rec = process->run(options);
                        rec.trial = trial;
                        for (const CheckpointRow& row : rec.checkpoints) {
                            if (row.trigger != CheckpointTrigger::edge_count) continue;
                            if (!row.reached) {
                                ++a.unreached;
                                continue;
                            }
                            const std::size_t si = s_index.at(row.s);
                            for (std::uint32_t j = 0; j < cfg.d; ++j) {
                                ProfileCell& cell = a.cells[si * cfg.d + j];
                                const double beta = beta_table[si * cfg.d + j];
                                const double value =
                                    static_cast<double>(row.degree_counts[j]);
                                if (std::abs(value - beta) <=
                                    cfg.window_width * std::sqrt(beta))
                                    ++cell.inside;
                                ++cell.count;
                                const std::uint64_t v =
                                    static_cast<std::uint64_t>(row.degree_counts[j]);
                                cell.sum += v;
                                cell.sumsq += static_cast<unsigned __int128>(v) * v;
                            }
                        }
                        a.violations.merge(rec.violations);
                        write_record(sink, rec, cfg);
                    });
                report.violations = acc.violations;
                report.table_header = {"s",        "x",      "j",          "beta",
                                       "coverage", "mean",   "sample_std", "std_limit",
                                       "window_w", "trials"};
                nlohmann::json cells = nlohmann::json::array();
                for (std::size_t si = 0; si < s_list.size(); ++si)
                    for (std::uint32_t j = 0; j < cfg.d; ++j) {
                        const ProfileCell& cell = acc.cells.empty() ? ProfileCell{}
                                                                    : acc.cells[si * cfg.d + j];
                        const double beta = beta_table[si * cfg.d + j];
                        const double count = static_cast<double>(cell.count);
                        const double mean =
                            cell.count ? static_cast<double>(cell.sum) / count : 0.0;
                        double sample_var = 0.0;
                        if (cell.count > 1) {
                            const double sumsq = static_cast<double>(cell.sumsq);
                            sample_var =
                                (sumsq - count * mean * mean) / (count - 1.0);
                        }
                        const double sample_std = std::sqrt(std::max(0.0, sample_var));
                        const double coverage =
                            cell.count ? static_cast<double>(cell.inside) / count : 0.0;
                        report.table_rows.push_back(
                            {std::to_string(s_list[si]), fmt(x_table[si]), std::to_string(j),
                             fmt(beta), fmt(coverage), fmt(mean), fmt(sample_std),
                             fmt(3.0 * std::sqrt(beta)), fmt(cfg.window_width),
                             std::to_string(cell.count)});
                        cells.push_back({{"s", s_list[si]},
                                         {"j", j},
                                         {"beta", beta},
                                         {"coverage", coverage},
                                         {"mean", mean},
                                         {"sample_std", sample_std},
                                         {"trials", cell.count}});
                    }
                report.summary["cells"] = std::move(cells);
                report.summary["unreached_rows"] = acc.unreached;
                break;
            }
            case ExperimentKind::tail_poisson:
            case ExperimentKind::tail_moments: {
                const AnalyticModel model(cfg.n, cfg.d);
                const std::vector<std::int64_t>& t_list = cfg.checkpoints_t;
                const std::uint32_t j_count = cfg.d - 1;
                std::unordered_map<std::int64_t, std::size_t> t_index;
                for (std::size_t ti = 0; ti < t_list.size(); ++ti) t_index[t_list[ti]] = ti;
                TailAcc acc = run_trials<TailAcc>(
                    cfg, salt_graph, "g", &shards,
                    [&](TailAcc& a, std::uint64_t trial, std::uint64_t seed,
                        std::ostream* sink) {
                        if (a.pmf.empty()) a.pmf.resize(t_list.size() * j_count);
                        thread_local std::unique_ptr<GraphProcess> process;
                        if (!process || process->graph().vertex_count() != cfg.n ||
                            process->graph().degree_cap() != cfg.d)
                            process = std::make_unique<GraphProcess>(cfg.n, cfg.d, seed);
                        else
                            process->reset(seed);
                        TrajectoryRecord rec = process->run(options);
                        rec.trial = trial;
                        for (const CheckpointRow& row : rec.checkpoints) {
                            if (row.trigger != CheckpointTrigger::deficit) continue;
                            if (!row.reached) {
                                ++a.unreached;
                                continue;
                            }
                            const std::size_t ti = t_index.at(row.t);
                            for (std::uint32_t j = 0; j < j_count; ++j)
                                a.pmf[ti * j_count + j].add(row.degree_counts[j]);
                        }
                        a.violations.merge(rec.violations);
                        write_record(sink, rec, cfg);
                    });
                report.violations = acc.violations;
                nlohmann::json cells = nlohmann::json::array();
                if (cfg.kind == ExperimentKind::tail_poisson) {
                    report.table_header = {"t", "j", "rate", "tv_distance", "trials"};
                    for (std::size_t ti = 0; ti < t_list.size(); ++ti)
                        for (std::uint32_t j = 0; j < j_count; ++j) {
                            const stats::EmpiricalPmf& pmf =
                                acc.pmf.empty() ? stats::EmpiricalPmf{}
                                                : acc.pmf[ti * j_count + j];
                            const double rate = model.late_degree_rate(
                                j, static_cast<double>(t_list[ti]));
                            double tv = 1.0;
                            if (pmf.total() > 0) {
                                const auto [table, tail] =
                                    AnalyticModel::poisson_pmf_table(rate);
                                tv = stats::tv_distance(pmf, table, tail);
                            }
                            report.table_rows.push_back({std::to_string(t_list[ti]),
                                                         std::to_string(j), fmt(rate), fmt(tv),
                                                         std::to_string(pmf.total())});
                            cells.push_back({{"t", t_list[ti]},
                                             {"j", j},
                                             {"rate", rate},
                                             {"tv_distance", tv},
                                             {"trials", pmf.total()}});
                        }
                } else {
                    report.table_header = {"t",      "j",        "k",    "rate_pow_k",
                                           "moment", "ratio",    "trials"};
                    for (std::size_t ti = 0; ti < t_list.size(); ++ti)
                        for (std::uint32_t j = 0; j < j_count; ++j)
                            for (std::uint32_t k : {1u, 2u}) {
                                const stats::EmpiricalPmf& pmf =
                                    acc.pmf.empty() ? stats::EmpiricalPmf{}
                                                    : acc.pmf[ti * j_count + j];
                                const double rate = model.late_degree_rate(
                                    j, static_cast<double>(t_list[ti]));
                                const double target = std::pow(rate, k);
                                const double moment =
                                    pmf.total() ? pmf.factorial_moment(k) : 0.0;
                                const double ratio = target > 0 ? moment / target : 0.0;
                                report.table_rows.push_back(
                                    {std::to_string(t_list[ti]), std::to_string(j),
                                     std::to_string(k), fmt(target), fmt(moment), fmt(ratio),
                                     std::to_string(pmf.total())});
                                cells.push_back({{"t", t_list[ti]},
                                                 {"j", j},
                                                 {"k", k},
                                                 {"rate_pow_k", target},
                                                 {"moment", moment},
                                                 {"ratio", ratio},
                                                 {"trials", pmf.total()}});
                            }
                }
                report.summary["cells"] = std::move(cells);
                report.summary["unreached_rows"] = acc.unreached;
                break;
            }
            case ExperimentKind::survival: {
                const AnalyticModel model(cfg.n, cfg.d);
                const std::vector<std::int64_t>& t_list = cfg.checkpoints_t;
                const std::uint32_t j_count = cfg.d - 1;
                const std::int64_t cap = static_cast<std::int64_t>(cfg.d) * cfg.n / 2;
                SurvivalAcc acc = run_trials<SurvivalAcc>(
                    cfg, salt_graph, "g", &shards,
                    [&](SurvivalAcc& a, std::uint64_t trial, std::uint64_t seed,
                        std::ostream* sink) {
                        if (a.below.empty()) a.below.resize(t_list.size() * j_count, 0);
                        thread_local std::unique_ptr<GraphProcess> process;
                        if (!process || process->graph().vertex_count() != cfg.n ||
                            process->graph().degree_cap() != cfg.d)
                            process = std::make_unique<GraphProcess>(cfg.n, cfg.d, seed);
                        else
                            process->reset(seed);
                        // The deficit targets exist only to pin the t grid;
                        // the survival statistic itself uses last_below_cap.
                        TrajectoryRecord rec = process->run(options);
                        rec.trial = trial;
                        ++a.trials;
                        for (std::size_t ti = 0; ti < t_list.size(); ++ti)
                            for (std::uint32_t j = 0; j < j_count; ++j)
                                if (rec.last_below_cap[j] < cap - t_list[ti])
                                    ++a.below[ti * j_count + j];
                        a.violations.merge(rec.violations);
                        write_record(sink, rec, cfg);
                    });
                report.violations = acc.violations;
                report.table_header = {"t", "j", "rate", "p_hat", "exp_minus_rate", "abs_error",
                                       "trials"};
                nlohmann::json cells = nlohmann::json::array();
                for (std::size_t ti = 0; ti < t_list.size(); ++ti)
                    for (std::uint32_t j = 0; j < j_count; ++j) {
                        const double rate =
                            model.late_degree_rate(j, static_cast<double>(t_list[ti]));
                        const double p_hat =
                            acc.trials ? static_cast<double>(acc.below[ti * j_count + j]) /
                                             static_cast<double>(acc.trials)
                                       : 0.0;
                        const double target = std::exp(-rate);
                        report.table_rows.push_back(
                            {std::to_string(t_list[ti]), std::to_string(j), fmt(rate), fmt(p_hat),
                             fmt(target), fmt(std::abs(p_hat - target)),
                             std::to_string(acc.trials)});
                        cells.push_back({{"t", t_list[ti]},
                                         {"j", j},
                                         {"rate", rate},
                                         {"p_hat", p_hat},
                                         {"exp_minus_rate", target},
                                         {"abs_error", std::abs(p_hat - target)}});
                    }
                report.summary["cells"] = std::move(cells);
                break;
            }
            case ExperimentKind::badballs: {
                const std::vector<std::int64_t>& t_list = cfg.checkpoints_t;
                std::unordered_map<std::int64_t, std::size_t> t_index;
                for (std::size_t ti = 0; ti < t_list.size(); ++ti) t_index[t_list[ti]] = ti;
                const std::uint64_t salt =
                    cfg.mode == BinMode::faithful ? salt_bin_faithful : salt_bin_accelerated;
                BadBallsAcc acc = run_trials<BadBallsAcc>(
                    cfg, salt, "b", &shards,
                    [&](BadBallsAcc& a, std::uint64_t trial, std::uint64_t seed,
                        std::ostream* sink) {
                        if (a.sum_btilde.empty()) {
                            a.sum_btilde.resize(t_list.size(), 0);
                            a.reached.resize(t_list.size(), 0);
                        }
                        thread_local std::unique_ptr<BinProcess> process;
                        if (!process || process->graph().vertex_count() != cfg.n ||
                            process->graph().degree_cap() != cfg.d ||
                            process->mode() != cfg.mode)
                            process = std::make_unique<BinProcess>(cfg.n, cfg.d, seed, cfg.mode);
                        else
                            process->reset(seed);
                        TrajectoryRecord rec = process->run(options);
                        rec.trial = trial;
                        ++a.trials;
                        a.sum_bf += static_cast<std::uint64_t>(*rec.bad_balls_final);
                        a.sumsq_bf += static_cast<unsigned __int128>(*rec.bad_balls_final) *
                                      static_cast<unsigned __int128>(*rec.bad_balls_final);
                        for (const CheckpointRow& row : rec.checkpoints) {
                            if (row.trigger != CheckpointTrigger::deficit || !row.reached)
                                continue;
                            const std::size_t ti = t_index.at(row.t);
                            a.sum_btilde[ti] += *row.bad_in_unsat;
                            ++a.reached[ti];
                        }
                        a.violations.merge(rec.violations);
                        write_record(sink, rec, cfg);
                    });
                report.violations = acc.violations;
                const double mean_bf =
                    acc.trials ? static_cast<double>(acc.sum_bf) / static_cast<double>(acc.trials)
                               : 0.0;
                report.summary["trials"] = acc.trials;
                report.summary["mean_bad_final"] = mean_bf;
                report.summary["mean_bad_final_over_log_n"] =
                    mean_bf / std::log(static_cast<double>(cfg.n));
                report.table_header = {"t", "mean_bad_in_unsat", "reached", "trials"};
                nlohmann::json cells = nlohmann::json::array();
                for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
                    const std::uint64_t reached = acc.reached.empty() ? 0 : acc.reached[ti];
                    const double mean =
                        reached ? static_cast<double>(acc.sum_btilde[ti]) /
                                      static_cast<double>(reached)
                                : 0.0;
                    report.table_rows.push_back({std::to_string(t_list[ti]), fmt(mean),
                                                 std::to_string(reached),
                                                 std::to_string(acc.trials)});
                    cells.push_back(
                        {{"t", t_list[ti]}, {"mean_bad_in_unsat", mean}, {"reached", reached}});
                }
                report.summary["cells"] = std::move(cells);
                break;
            }
            case ExperimentKind::indept_check: {
                const std::vector<std::int64_t>& t_list = cfg.checkpoints_t;
                std::unordered_map<std::int64_t, std::size_t> t_index;
                for (std::size_t ti = 0; ti < t_list.size(); ++ti) t_index[t_list[ti]] = ti;
                IndeptAcc acc = run_trials<IndeptAcc>(
                    cfg, salt_graph, "g", &shards,
                    [&](IndeptAcc& a, std::uint64_t trial, std::uint64_t seed,
                        std::ostream* sink) {
                        if (a.with_edge.empty()) {
                            a.with_edge.resize(t_list.size(), 0);
                            a.reached.resize(t_list.size(), 0);
                        }
                        thread_local std::unique_ptr<GraphProcess> process;
                        if (!process || process->graph().vertex_count() != cfg.n ||
                            process->graph().degree_cap() != cfg.d)
                            process = std::make_unique<GraphProcess>(cfg.n, cfg.d, seed);
                        else
                            process->reset(seed);
                        TrajectoryRecord rec = process->run(options);
                        rec.trial = trial;
                        ++a.trials;
                        for (const CheckpointRow& row : rec.checkpoints) {
                            if (row.trigger != CheckpointTrigger::deficit || !row.reached)
                                continue;
                            const std::size_t ti = t_index.at(row.t);
                            ++a.reached[ti];
                            if (row.unsaturated_edges > 0) ++a.with_edge[ti];
                        }
                        a.violations.merge(rec.violations);
                        write_record(sink, rec, cfg);
                    });
                report.violations = acc.violations;
                report.table_header = {"t", "trials", "reached", "with_unsat_edge", "frequency"};
                nlohmann::json cells = nlohmann::json::array();
                for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
                    const std::uint64_t reached = acc.reached.empty() ? 0 : acc.reached[ti];
                    const std::uint64_t with_edge = acc.with_edge.empty() ? 0 : acc.with_edge[ti];
                    const double freq =
                        acc.trials ? static_cast<double>(with_edge) /
                                         static_cast<double>(acc.trials)
                                   : 0.0;
                    report.table_rows.push_back({std::to_string(t_list[ti]),
                                                 std::to_string(acc.trials),
                                                 std::to_string(reached),
                                                 std::to_string(with_edge), fmt(freq)});
                    cells.push_back({{"t", t_list[ti]},
                                     {"reached", reached},
                                     {"with_unsat_edge", with_edge},
                                     {"frequency", freq}});
                }
                report.summary["cells"] = std::move(cells);
                report.summary["trials"] = acc.trials;
                break;
            }
        }
    } catch (const std::exception& e) {
        assemble_output(cfg, shards, false, e.what());
        throw;
    }

    assemble_output(cfg, shards, true, "");
    report.summary["kind"] = to_string(cfg.kind);
    report.summary["config"] = cfg.to_json();
    report.summary["rng"] = rng_metadata();
    report.summary["violations"] = violations_json(report.violations);
    if (!cfg.output_path.empty()) {
        const std::string aggregate_path = cfg.output_path + ".aggregate.csv";
        std::ofstream aggregate(aggregate_path, std::ios::binary | std::ios::trunc);
        if (!aggregate) throw std::runtime_error("cannot open " + aggregate_path);
        aggregate << report.to_csv();
        if (!aggregate) throw std::runtime_error("write failed: " + aggregate_path);
    }
    return report;
}

}  // namespace dproc::harness
