#include <cstdio>
#include <fstream>
#include <sstream>

#include <stdexcept>
#include <doctest.h>
#include <nlohmann/json.hpp>

#include "dproc/harness.hpp"

using namespace dproc::harness;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ExperimentConfig small_saturation(const std::string& out) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::saturation;
    cfg.n = 60;
    cfg.d = 3;
    cfg.trials = 24;
    cfg.base_seed = 777;
    cfg.output_path = out;
    return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("kind names round trip") {
    for (ExperimentKind kind :
         {ExperimentKind::equivalence, ExperimentKind::degree_profile, ExperimentKind::tail_poisson,
          ExperimentKind::tail_moments, ExperimentKind::saturation, ExperimentKind::badballs,
          ExperimentKind::survival, ExperimentKind::indept_check})
        CHECK(kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(kind_from_string("nope"), std::invalid_argument);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::saturation;
    cfg.n = 1;
    cfg.d = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n = 10;
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.trials = 1;
    cfg.checkpoints_m = {3};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // accelerated + m-checkpoints
    cfg.mode = dproc::BinMode::faithful;
    CHECK_NOTHROW(cfg.validate());
    cfg.kind = ExperimentKind::equivalence;
    cfg.n = 12;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // beyond the exact reference
}

TEST_CASE("config json round trip") {
    ExperimentConfig cfg = small_saturation("");
    cfg.base_seed = 0xFFFFFFFFFFFFFFFFull;  // full 64-bit survives the string field
    const ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
    CHECK(back.kind == cfg.kind);
    CHECK(back.n == cfg.n);
    CHECK(back.base_seed == cfg.base_seed);
    CHECK(back.format == cfg.format);
}

TEST_CASE("saturation at n=2 is certain") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::saturation;
    cfg.n = 2;
    cfg.d = 2;
    cfg.trials = 10;
    cfg.base_seed = 1;
    const AggregateReport report = run_experiment(cfg);
    CHECK(report.summary["p_hat"] == 1.0);
    CHECK(report.summary["nonsaturated"] == 10);
    CHECK(report.violations.total() == 0);
}

TEST_CASE("records are byte-identical across repeats and worker counts") {
    const std::string out1 = "/tmp/dproc_test_records_1.jsonl";
    const std::string out2 = "/tmp/dproc_test_records_2.jsonl";
    ExperimentConfig cfg1 = small_saturation(out1);
    cfg1.workers = 1;
    ExperimentConfig cfg2 = small_saturation(out2);
    cfg2.workers = 2;
    const AggregateReport r1 = run_experiment(cfg1);
    const AggregateReport r2 = run_experiment(cfg2);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(r1.to_csv() == r2.to_csv());
    CHECK(r1.summary["p_hat"] == r2.summary["p_hat"]);

    const AggregateReport r3 = run_experiment(cfg1);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(r3.to_csv() == r1.to_csv());
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("jsonl schema and footer") {
    const std::string out = "/tmp/dproc_test_schema.jsonl";
    ExperimentConfig cfg = small_saturation(out);
    run_experiment(cfg);
    std::ifstream in(out);
    REQUIRE(in);
    std::string line;
    std::size_t trials = 0;
    bool footer_seen = false;
    std::uint64_t expected_trial = 0;
    while (std::getline(in, line)) {
        const nlohmann::json doc = nlohmann::json::parse(line);
        CHECK(doc["schema_version"] == 1);
        REQUIRE(!footer_seen);  // footer terminates the file
        if (doc["type"] == "footer") {
            footer_seen = true;
            CHECK(doc["complete"] == true);
            CHECK(doc["trials"] == cfg.trials);
            continue;
        }
        CHECK(doc["type"] == "trial");
        CHECK(doc["trial"] == expected_trial++);
        CHECK(doc["sampler"] == "graph");
        CHECK(doc.contains("seed"));
        CHECK(doc["final_edges"].get<std::int64_t>() >= 0);
        ++trials;
    }
    CHECK(trials == cfg.trials);
    CHECK(footer_seen);
    std::remove(out.c_str());
}

TEST_CASE("csv format writes a header and one line per checkpoint") {
    const std::string out = "/tmp/dproc_test_records.csv";
    ExperimentConfig cfg = small_saturation(out);
    cfg.format = "csv";
    cfg.checkpoints_s = {0, 30};
    run_experiment(cfg);
    std::ifstream in(out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == record_csv_header());
    std::size_t rows = 0;
    bool footer = false;
    while (std::getline(in, line)) {
        if (line.rfind("#footer", 0) == 0) {
            footer = true;
            break;
        }
        ++rows;
    }
    CHECK(rows == cfg.trials * 2);  // two checkpoint rows per trial
    CHECK(footer);
    std::remove(out.c_str());
}

TEST_CASE("equivalence on the forced triangle") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::equivalence;
    cfg.n = 3;
    cfg.d = 2;
    cfg.trials = 400;
    cfg.base_seed = 5;
    const AggregateReport report = run_experiment(cfg);
    CHECK(report.summary["max_abs_z"] == 0.0);
    CHECK(report.summary["off_support_trials"] == 0);
    CHECK(report.summary["terminal_classes"] == 1);
    CHECK(report.summary["exact_nonsaturation"] == "0");
    CHECK(report.violations.total() == 0);
}

TEST_CASE("survival, badballs and indept smoke runs") {
    {
        ExperimentConfig cfg;
        cfg.kind = ExperimentKind::survival;
        cfg.n = 300;
        cfg.d = 2;
        cfg.trials = 50;
        cfg.base_seed = 2;
        const AggregateReport report = run_experiment(cfg);
        CHECK(!report.table_rows.empty());
        for (const auto& cell : report.summary["cells"]) {
            const double p_hat = cell["p_hat"];
            CHECK(p_hat >= 0.0);
            CHECK(p_hat <= 1.0);
        }
    }
    {
        ExperimentConfig cfg;
        cfg.kind = ExperimentKind::badballs;
        cfg.n = 300;
        cfg.d = 2;
        cfg.trials = 50;
        cfg.base_seed = 3;
        const AggregateReport report = run_experiment(cfg);
        CHECK(report.summary["mean_bad_final"].get<double>() >= 0.0);
        CHECK(report.violations.unsat_bounds == 0);
        CHECK(report.violations.ball_partition == 0);
        CHECK(report.violations.occupancy_degree_gap == 0);
        CHECK(report.violations.edge_identity_adjusted == 0);
    }
    {
        ExperimentConfig cfg;
        cfg.kind = ExperimentKind::indept_check;
        cfg.n = 300;
        cfg.d = 2;
        cfg.trials = 50;
        cfg.base_seed = 4;
        const AggregateReport report = run_experiment(cfg);
        REQUIRE(report.table_rows.size() == 1);
        const double freq = report.summary["cells"][0]["frequency"];
        CHECK(freq >= 0.0);
        CHECK(freq <= 1.0);
    }
}

TEST_CASE("tail experiments agree between kinds on shared statistics") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::tail_moments;
    cfg.n = 2000;
    cfg.d = 2;
    cfg.trials = 400;
    cfg.base_seed = 9;
    const AggregateReport moments = run_experiment(cfg);
    REQUIRE(!moments.summary["cells"].empty());
    // k=1 moment is the plain mean of D_0 at the deficit checkpoint.
    const double mean = moments.summary["cells"][0]["moment"];
    CHECK(mean >= 0.0);

    cfg.kind = ExperimentKind::tail_poisson;
    const AggregateReport poisson = run_experiment(cfg);
    const double tv = poisson.summary["cells"][0]["tv_distance"];
    CHECK(tv >= 0.0);
    CHECK(tv <= 1.0);
}

TEST_CASE("degree profile coverage on a mid-size instance") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::degree_profile;
    cfg.n = 2000;
    cfg.d = 3;
    cfg.trials = 60;
    cfg.base_seed = 13;
    const AggregateReport report = run_experiment(cfg);
    for (const auto& cell : report.summary["cells"]) {
        if (cell["beta"].get<double>() < 1000.0) continue;
        CHECK(cell["coverage"].get<double>() >= 0.9);  // loose smoke bound
    }
    CHECK(report.summary["unreached_rows"] == 0);
}

}  // TEST_SUITE
