// Config schema enforcement, canonical serialization, experiment file
// emission, byte-identical reruns, and fingerprint verification.
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pmimo/csv.hpp"
#include "pmimo/experiment.hpp"

using namespace pmimo;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

bool message_contains(const ConfigError& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("experiment names round trip") {
    for (ExperimentKind kind :
         {ExperimentKind::Beampattern, ExperimentKind::SinrCurve, ExperimentKind::MvdrPattern,
          ExperimentKind::VerifyProp1, ExperimentKind::VerifyProp2, ExperimentKind::HkCurves}) {
        CHECK(experiment_from_name(experiment_name(kind)) == kind);
    }
    CHECK_THROWS_AS(experiment_from_name("nope"), ConfigError);
    CHECK(scheme_from_name(scheme_name(PartitionScheme::NonOverlapped)) ==
          PartitionScheme::NonOverlapped);
    CHECK(beamformer_from_name("mvdr") == RxBeamformer::Mvdr);
}

TEST_CASE("verification experiments default to the fine grid") {
    CHECK(default_config(ExperimentKind::VerifyProp1).grid_resolution_deg == 0.02);
    CHECK(default_config(ExperimentKind::VerifyProp2).grid_resolution_deg == 0.02);
    CHECK(default_config(ExperimentKind::Beampattern).grid_resolution_deg == 0.1);
}

TEST_CASE("canonical json round trips and fixes the fingerprint") {
    ExperimentConfig cfg = default_config(ExperimentKind::Beampattern);
    const std::string canon = cfg.canonical_json();
    ExperimentConfig back = config_from_json(canon);
    CHECK(back.canonical_json() == canon);
    CHECK(cfg.scenario_hash() == fnv1a64(canon));
    // threads is execution machinery and must not alter the fingerprint.
    ExperimentConfig threaded = cfg;
    threaded.threads = 8;
    CHECK(threaded.canonical_json() == canon);
}

TEST_CASE("config parser names offending fields") {
    CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(config_from_json("[1,2]"), ConfigError);

    try {
        config_from_json(R"({"experiment":"beampattern","bogus":1})");
        FAIL("unknown key accepted");
    } catch (const ConfigError& e) {
        CHECK(message_contains(e, "bogus"));
    }

    try {
        config_from_json(R"({"array":{"m_tx":"ten"}})");
        FAIL("ill-typed field accepted");
    } catch (const ConfigError& e) {
        CHECK(message_contains(e, "array.m_tx"));
    }

    try {
        config_from_json(R"({"array":{"m_tx":10,"extra":1}})");
        FAIL("unknown nested key accepted");
    } catch (const ConfigError& e) {
        CHECK(message_contains(e, "array.extra"));
    }

    CHECK_THROWS_AS(
        config_from_json(
            R"({"interference":{"points":[-30],"distributed":{"theta_lo_deg":-40,"theta_hi_deg":-20,"n_patches":3}}})"),
        ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"partition":{"scheme":"diagonal"}})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"partition":{"k_subarrays":11}})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"target":{"theta_deg":95.0}})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"runs":0})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"threads":0})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"grid_resolution_deg":0.5})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"snr_sweep_db":{"start":0,"stop":10,"step":0}})"),
                    ConfigError);
    CHECK_THROWS_AS(
        config_from_json(R"({"partition":{"scheme":"non_overlapped","k_subarrays":3}})"),
        ConfigError);
}

TEST_CASE("a forced experiment kind overrides the file") {
    ExperimentConfig cfg =
        config_from_json(R"({"experiment":"beampattern"})", ExperimentKind::SinrCurve);
    CHECK(cfg.experiment == ExperimentKind::SinrCurve);
}

TEST_CASE("beampattern experiment emits four tables and reruns byte-identically") {
    ExperimentConfig cfg = default_config(ExperimentKind::Beampattern);
    TempDir a("pmimo_exp_a"), b("pmimo_exp_b");
    ExperimentResult ra = run_experiment(cfg, a.path);
    ExperimentResult rb = run_experiment(cfg, b.path);
    std::vector<std::string> names;
    for (const auto& f : ra.files) names.push_back(f.filename().string());
    CHECK(names == std::vector<std::string>{"beampattern_ph.csv", "beampattern_mimo.csv",
                                            "beampattern_phmimo.csv", "beampattern_overall.csv"});
    REQUIRE(ra.files.size() == rb.files.size());
    for (std::size_t i = 0; i < ra.files.size(); ++i) {
        CHECK(slurp(ra.files[i]) == slurp(rb.files[i]));
    }

    // Emitted patterns carry the fingerprint of their exact configuration.
    for (const auto& f : ra.files) {
        VerifyOutcome v = verify_csv(f);
        CHECK(v.ok);
    }
}

TEST_CASE("sinr experiment emits identical rows for any thread count") {
    ExperimentConfig cfg = default_config(ExperimentKind::SinrCurve);
    cfg.runs = 40;
    cfg.sweep = {0.0, 10.0, 5.0};
    cfg.threads = 1;
    TempDir a("pmimo_exp_t1"), b("pmimo_exp_t4");
    run_experiment(cfg, a.path);
    cfg.threads = 4;
    run_experiment(cfg, b.path);
    CHECK(slurp(a.path / "sinr_curve.csv") == slurp(b.path / "sinr_curve.csv"));
}

TEST_CASE("verification experiments report passing tables") {
    ExperimentConfig cfg = default_config(ExperimentKind::VerifyProp1);
    cfg.m_tx = 6;
    cfg.n_rx = 4;
    cfg.grid_resolution_deg = 0.1;
    TempDir dir("pmimo_exp_prop1");
    ExperimentResult res = run_experiment(cfg, dir.path);
    REQUIRE(res.tables.size() == 1);
    const ResultTable& t = res.tables[0].table;
    CHECK(res.tables[0].filename == "prop1_report.csv");
    REQUIRE(t.rows.size() == 6);
    for (const auto& row : t.rows) {
        CHECK(row[3] == 1.0);       // pass flag
        CHECK(row[2] < 1e-10);      // max abs diff
    }
}

TEST_CASE("tampered files fail verification") {
    ExperimentConfig cfg = default_config(ExperimentKind::HkCurves);
    TempDir dir("pmimo_exp_tamper");
    ExperimentResult res = run_experiment(cfg, dir.path);
    REQUIRE(res.files.size() == 1);
    const auto path = res.files[0];
    CHECK(verify_csv(path).ok);

    std::string text = slurp(path);
    const auto pos = text.find("\"m_tx\":10");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 9, "\"m_tx\":11");
    {
        std::ofstream out(path, std::ios::binary);
        out << text;
    }
    VerifyOutcome bad = verify_csv(path);
    CHECK(!bad.ok);
    CHECK(!bad.message.empty());

    CHECK(!verify_csv(dir.path / "missing.csv").ok);
}

TEST_CASE("experiment output directories never hold partial results") {
    ExperimentConfig cfg = default_config(ExperimentKind::Beampattern);
    TempDir dir("pmimo_exp_partial");
    std::filesystem::create_directories(dir.path);
    // Pre-create a directory where the last file must land: the write fails
    // after earlier tables succeeded, and those must be cleaned up again.
    std::filesystem::create_directories(dir.path / "beampattern_overall.csv");
    CHECK_THROWS(run_experiment(cfg, dir.path));
    CHECK(!std::filesystem::exists(dir.path / "beampattern_ph.csv"));
    CHECK(!std::filesystem::exists(dir.path / "beampattern_mimo.csv"));
    CHECK(!std::filesystem::exists(dir.path / "beampattern_phmimo.csv"));
}
