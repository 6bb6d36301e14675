#include "pmimo/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "pmimo/beamforming.hpp"
#include "pmimo/beampattern.hpp"
#include "pmimo/units.hpp"

namespace pmimo {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
// Pinned acceptance tolerance for the pattern-identity verifications.
constexpr double kPropTolerance = 1e-10;

[[noreturn]] void fail_field(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* name : allowed) {
            if (item.key() == name) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail_field(prefix.empty() ? item.key() : prefix + "." + item.key(), "unknown field");
        }
    }
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail_field(path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail_field(path, "expected an integer");
    return v.get<int>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    fail_field(path, "expected a non-negative integer");
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail_field(path, "expected a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail_field(path, "expected a string");
    return v.get<std::string>();
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Beampattern: return "beampattern";
        case ExperimentKind::SinrCurve: return "sinr-curve";
        case ExperimentKind::MvdrPattern: return "mvdr-pattern";
        case ExperimentKind::VerifyProp1: return "verify-prop1";
        case ExperimentKind::VerifyProp2: return "verify-prop2";
        case ExperimentKind::HkCurves: return "hk-curves";
    }
    throw std::invalid_argument("unknown experiment kind");
}

ExperimentKind experiment_from_name(const std::string& name) {
    if (name == "beampattern") return ExperimentKind::Beampattern;
    if (name == "sinr-curve") return ExperimentKind::SinrCurve;
    if (name == "mvdr-pattern") return ExperimentKind::MvdrPattern;
    if (name == "verify-prop1") return ExperimentKind::VerifyProp1;
    if (name == "verify-prop2") return ExperimentKind::VerifyProp2;
    if (name == "hk-curves") return ExperimentKind::HkCurves;
    throw ConfigError("experiment: unknown experiment '" + name + "'");
}

std::string scheme_name(PartitionScheme scheme) {
    switch (scheme) {
        case PartitionScheme::FullyOverlapped: return "fully-overlapped";
        case PartitionScheme::NonOverlapped: return "non-overlapped";
        case PartitionScheme::WholeArray: return "whole-array";
    }
    throw std::invalid_argument("unknown partition scheme");
}

PartitionScheme scheme_from_name(const std::string& name) {
    if (name == "fully-overlapped") return PartitionScheme::FullyOverlapped;
    if (name == "non-overlapped") return PartitionScheme::NonOverlapped;
    if (name == "whole-array") return PartitionScheme::WholeArray;
    throw ConfigError("partition.scheme: unknown scheme '" + name + "'");
}

std::string beamformer_name(RxBeamformer beamformer) {
    return beamformer == RxBeamformer::Mvdr ? "mvdr" : "conventional";
}

RxBeamformer beamformer_from_name(const std::string& name) {
    if (name == "conventional") return RxBeamformer::ConventionalRx;
    if (name == "mvdr") return RxBeamformer::Mvdr;
    throw ConfigError("beamformer: unknown beamformer '" + name + "'");
}

ArrayConfig ExperimentConfig::array_config() const { return ArrayConfig(m_tx, n_rx, d_tx, d_rx); }

Partition ExperimentConfig::partition() const { return Partition::make(scheme, m_tx, k_subarrays); }

Scenario ExperimentConfig::scenario_for(const Partition& part, double snr_db_point) const {
    Scenario sc{array_config(),
                part,
                Target{deg2rad(theta_s_deg), noise_power * from_db(snr_db_point)},
                {},
                std::nullopt,
                noise_power,
                snapshot_count,
                runs,
                seed};
    const double interferer_power =
        noise_power * from_db(tie_inr_to_snr ? snr_db_point : inr_db);
    if (distributed) {
        sc.distributed = DistributedInterference{deg2rad(distributed->theta_lo_deg),
                                                 deg2rad(distributed->theta_hi_deg),
                                                 interferer_power, distributed->n_patches};
    } else {
        for (double theta_deg : interferer_theta_deg) {
            sc.interferers.push_back({deg2rad(theta_deg), interferer_power});
        }
    }
    return sc;
}

std::string ExperimentConfig::canonical_json() const {
    json j;
    j["array"] = {{"m_tx", m_tx}, {"n_rx", n_rx}, {"d_tx", d_tx}, {"d_rx", d_rx}};
    j["partition"] = {{"scheme", scheme_name(scheme)}, {"k_subarrays", k_subarrays}};
    j["target"] = {{"theta_deg", theta_s_deg}, {"snr_db", snr_db}};
    json interference;
    interference["inr_db"] = inr_db;
    interference["tie_inr_to_snr"] = tie_inr_to_snr;
    if (distributed) {
        interference["distributed"] = {{"theta_lo_deg", distributed->theta_lo_deg},
                                       {"theta_hi_deg", distributed->theta_hi_deg},
                                       {"n_patches", distributed->n_patches}};
    } else {
        interference["points"] = interferer_theta_deg;
    }
    j["interference"] = std::move(interference);
    j["experiment"] = experiment_name(experiment);
    j["beamformer"] = beamformer_name(beamformer);
    j["noise_power"] = noise_power;
    j["snapshot_count"] = snapshot_count;
    j["diagonal_load"] = diagonal_load;
    j["runs"] = runs;
    j["seed"] = seed;
    j["grid_resolution_deg"] = grid_resolution_deg;
    j["snr_sweep_db"] = {{"start", sweep.start_db}, {"stop", sweep.stop_db}, {"step", sweep.step_db}};
    // threads is deliberately absent: results are byte-identical for any
    // thread count, so it is execution machinery, not part of the scenario.
    // nlohmann objects iterate key-sorted, so the dump is canonical.
    return j.dump();
}

std::uint64_t ExperimentConfig::scenario_hash() const { return fnv1a64(canonical_json()); }

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.experiment = kind;
    if (kind == ExperimentKind::VerifyProp1 || kind == ExperimentKind::VerifyProp2) {
        cfg.grid_resolution_deg = 0.02;
    }
    return cfg;
}

ExperimentConfig config_from_json(const std::string& json_text,
                                  std::optional<ExperimentKind> forced) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    check_keys(j, "",
               {"experiment", "array", "partition", "target", "interference", "noise_power",
                "snapshot_count", "diagonal_load", "runs", "seed", "grid_resolution_deg",
                "snr_sweep_db", "beamformer", "threads"});

    ExperimentKind kind = ExperimentKind::Beampattern;
    if (forced) {
        kind = *forced;
    } else if (j.contains("experiment")) {
        kind = experiment_from_name(as_string(j.at("experiment"), "experiment"));
    }
    ExperimentConfig cfg = default_config(kind);

    if (j.contains("array")) {
        const json& a = j.at("array");
        if (!a.is_object()) fail_field("array", "expected an object");
        check_keys(a, "array", {"m_tx", "n_rx", "d_tx", "d_rx"});
        if (a.contains("m_tx")) cfg.m_tx = as_int(a.at("m_tx"), "array.m_tx");
        if (a.contains("n_rx")) cfg.n_rx = as_int(a.at("n_rx"), "array.n_rx");
        if (a.contains("d_tx")) cfg.d_tx = as_number(a.at("d_tx"), "array.d_tx");
        if (a.contains("d_rx")) cfg.d_rx = as_number(a.at("d_rx"), "array.d_rx");
    }
    if (j.contains("partition")) {
        const json& p = j.at("partition");
        if (!p.is_object()) fail_field("partition", "expected an object");
        check_keys(p, "partition", {"scheme", "k_subarrays"});
        if (p.contains("scheme")) cfg.scheme = scheme_from_name(as_string(p.at("scheme"), "partition.scheme"));
        if (p.contains("k_subarrays")) cfg.k_subarrays = as_int(p.at("k_subarrays"), "partition.k_subarrays");
    }
    if (j.contains("target")) {
        const json& t = j.at("target");
        if (!t.is_object()) fail_field("target", "expected an object");
        check_keys(t, "target", {"theta_deg", "snr_db"});
        if (t.contains("theta_deg")) cfg.theta_s_deg = as_number(t.at("theta_deg"), "target.theta_deg");
        if (t.contains("snr_db")) cfg.snr_db = as_number(t.at("snr_db"), "target.snr_db");
    }
    if (j.contains("interference")) {
        const json& i = j.at("interference");
        if (!i.is_object()) fail_field("interference", "expected an object");
        check_keys(i, "interference", {"points", "distributed", "inr_db", "tie_inr_to_snr"});
        if (i.contains("points") && i.contains("distributed")) {
            fail_field("interference", "give either points or distributed, not both");
        }
        if (i.contains("points")) {
            const json& pts = i.at("points");
            if (!pts.is_array()) fail_field("interference.points", "expected an array of angles");
            cfg.interferer_theta_deg.clear();
            cfg.distributed.reset();
            for (std::size_t n = 0; n < pts.size(); ++n) {
                cfg.interferer_theta_deg.push_back(
                    as_number(pts[n], "interference.points[" + std::to_string(n) + "]"));
            }
        }
        if (i.contains("distributed")) {
            const json& d = i.at("distributed");
            if (!d.is_object()) fail_field("interference.distributed", "expected an object");
            check_keys(d, "interference.distributed", {"theta_lo_deg", "theta_hi_deg", "n_patches"});
            DistributedSpec spec{-50.0, -20.0, 61};
            if (d.contains("theta_lo_deg")) spec.theta_lo_deg = as_number(d.at("theta_lo_deg"), "interference.distributed.theta_lo_deg");
            if (d.contains("theta_hi_deg")) spec.theta_hi_deg = as_number(d.at("theta_hi_deg"), "interference.distributed.theta_hi_deg");
            if (d.contains("n_patches")) spec.n_patches = as_int(d.at("n_patches"), "interference.distributed.n_patches");
            cfg.distributed = spec;
            cfg.interferer_theta_deg.clear();
        }
        if (i.contains("inr_db")) cfg.inr_db = as_number(i.at("inr_db"), "interference.inr_db");
        if (i.contains("tie_inr_to_snr")) cfg.tie_inr_to_snr = as_bool(i.at("tie_inr_to_snr"), "interference.tie_inr_to_snr");
    }
    if (j.contains("noise_power")) cfg.noise_power = as_number(j.at("noise_power"), "noise_power");
    if (j.contains("snapshot_count")) cfg.snapshot_count = as_int(j.at("snapshot_count"), "snapshot_count");
    if (j.contains("diagonal_load")) cfg.diagonal_load = as_number(j.at("diagonal_load"), "diagonal_load");
    if (j.contains("runs")) cfg.runs = as_int(j.at("runs"), "runs");
    if (j.contains("seed")) cfg.seed = as_u64(j.at("seed"), "seed");
    if (j.contains("grid_resolution_deg")) {
        cfg.grid_resolution_deg = as_number(j.at("grid_resolution_deg"), "grid_resolution_deg");
    }
    if (j.contains("snr_sweep_db")) {
        const json& s = j.at("snr_sweep_db");
        if (!s.is_object()) fail_field("snr_sweep_db", "expected an object");
        check_keys(s, "snr_sweep_db", {"start", "stop", "step"});
        if (s.contains("start")) cfg.sweep.start_db = as_number(s.at("start"), "snr_sweep_db.start");
        if (s.contains("stop")) cfg.sweep.stop_db = as_number(s.at("stop"), "snr_sweep_db.stop");
        if (s.contains("step")) cfg.sweep.step_db = as_number(s.at("step"), "snr_sweep_db.step");
    }
    if (j.contains("beamformer")) {
        cfg.beamformer = beamformer_from_name(as_string(j.at("beamformer"), "beamformer"));
    }
    if (j.contains("threads")) cfg.threads = as_int(j.at("threads"), "threads");

    try {
        cfg.array_config();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("array: ") + e.what());
    }
    try {
        cfg.partition();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("partition.k_subarrays: ") + e.what());
    }
    if (!(std::abs(cfg.theta_s_deg) <= 90.0)) fail_field("target.theta_deg", "must lie in [-90, 90]");
    for (std::size_t n = 0; n < cfg.interferer_theta_deg.size(); ++n) {
        if (!(std::abs(cfg.interferer_theta_deg[n]) <= 90.0)) {
            fail_field("interference.points[" + std::to_string(n) + "]", "must lie in [-90, 90]");
        }
    }
    if (cfg.distributed) {
        if (!(cfg.distributed->theta_lo_deg >= -90.0 && cfg.distributed->theta_hi_deg <= 90.0 &&
              cfg.distributed->theta_lo_deg <= cfg.distributed->theta_hi_deg)) {
            fail_field("interference.distributed", "sector must be ordered and lie in [-90, 90]");
        }
        if (cfg.distributed->n_patches < 1) {
            fail_field("interference.distributed.n_patches", "must be >= 1");
        }
    }
    if (!(cfg.noise_power > 0.0)) fail_field("noise_power", "must be > 0");
    if (cfg.snapshot_count < 1) fail_field("snapshot_count", "must be >= 1");
    if (!(cfg.diagonal_load >= 0.0)) fail_field("diagonal_load", "must be >= 0");
    if (cfg.runs < 1) fail_field("runs", "must be >= 1");
    if (cfg.threads < 1) fail_field("threads", "must be >= 1");
    if (!(cfg.grid_resolution_deg > 0.0 && cfg.grid_resolution_deg <= 0.1)) {
        fail_field("grid_resolution_deg", "must lie in (0, 0.1] degrees");
    }
    if (!(cfg.sweep.step_db > 0.0)) fail_field("snr_sweep_db.step", "must be > 0");
    if (!(cfg.sweep.start_db <= cfg.sweep.stop_db)) {
        fail_field("snr_sweep_db.start", "must not exceed snr_sweep_db.stop");
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<ExperimentKind> forced) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str(), forced);
}

namespace {

struct ModeSetup {
    std::string name;
    Partition part;
    std::vector<CVector> tx_weights;
};

// The three systems every experiment compares: phased array (K = 1),
// element-level MIMO (K = M) and the configured tradeoff partition.
std::vector<ModeSetup> radar_modes(const ExperimentConfig& c, const ArrayConfig& cfg,
                                   double theta_s) {
    std::vector<ModeSetup> modes;
    Partition ph = Partition::fully_overlapped(cfg.m_tx, 1);
    Partition mimo = Partition::fully_overlapped(cfg.m_tx, cfg.m_tx);
    Partition user = c.partition();
    modes.push_back({"ph", ph, conventional_tx_weights(cfg, ph, theta_s)});
    modes.push_back({"mimo", mimo, conventional_tx_weights(cfg, mimo, theta_s)});
    modes.push_back({"phmimo", user, conventional_tx_weights(cfg, user, theta_s)});
    return modes;
}

ResultTable stamped_table(const ExperimentConfig& c) {
    ResultTable t;
    t.metadata = {{"pmimo_version", kVersion},
                  {"experiment", experiment_name(c.experiment)},
                  {"config", c.canonical_json()},
                  {"scenario_hash", to_hex(c.scenario_hash())},
                  {"seed", std::to_string(c.seed)}};
    return t;
}

std::vector<EmittedTable> build_beampattern(const ExperimentConfig& c) {
    const ArrayConfig cfg = c.array_config();
    const double theta_s = deg2rad(c.theta_s_deg);
    const AngleGrid grid = AngleGrid::uniform(deg2rad(c.grid_resolution_deg), theta_s);
    std::vector<EmittedTable> out;
    std::vector<std::vector<double>> overall;
    for (const ModeSetup& mode : radar_modes(c, cfg, theta_s)) {
        const ComponentPatterns comps = component_patterns(cfg, mode.part, theta_s, grid);
        const BeampatternCurve g = overall_pattern(cfg, mode.part, mode.tx_weights, theta_s, grid);
        ResultTable t = stamped_table(c);
        t.metadata.emplace_back("radar_mode", mode.name);
        t.columns = {"theta_deg", "C_db", "D_db", "R_db", "G_db"};
        t.rows.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            t.rows.push_back({rad2deg(grid.angles[i]), to_db(comps.transmit.values[i]),
                              to_db(comps.diversity.values[i]), to_db(comps.receive.values[i]),
                              to_db(g.values[i])});
        }
        out.push_back({"beampattern_" + mode.name + ".csv", std::move(t)});
        overall.push_back(g.values);
    }
    ResultTable t = stamped_table(c);
    t.columns = {"theta_deg", "G_ph_db", "G_mimo_db", "G_phmimo_db"};
    t.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.rows.push_back({rad2deg(grid.angles[i]), to_db(overall[0][i]), to_db(overall[1][i]),
                          to_db(overall[2][i])});
    }
    out.push_back({"beampattern_overall.csv", std::move(t)});
    return out;
}

std::vector<EmittedTable> build_sinr_curve(const ExperimentConfig& c) {
    const ArrayConfig cfg = c.array_config();
    const double theta_s = deg2rad(c.theta_s_deg);
    const std::vector<ModeSetup> modes = radar_modes(c, cfg, theta_s);
    const bool mvdr = c.beamformer == RxBeamformer::Mvdr;

    ResultTable t = stamped_table(c);
    t.columns = mvdr ? std::vector<std::string>{"snr_db", "ph_optimal_db", "mimo_optimal_db",
                                                "phmimo_optimal_db", "ph_mvdr_db", "mimo_mvdr_db",
                                                "phmimo_mvdr_db"}
                     : std::vector<std::string>{"snr_db", "ph_analytic_db", "mimo_analytic_db",
                                                "phmimo_analytic_db", "ph_mc_db", "mimo_mc_db",
                                                "phmimo_mc_db"};
    std::uint64_t point = 0;
    for (double snr = c.sweep.start_db; snr <= c.sweep.stop_db + 0.5 * c.sweep.step_db;
         snr += c.sweep.step_db, ++point) {
        std::vector<double> row(7, 0.0);
        row[0] = snr;
        for (std::size_t m = 0; m < modes.size(); ++m) {
            const ModeSetup& mode = modes[m];
            const Scenario sc = c.scenario_for(mode.part, snr);
            double closed;
            if (mvdr) {
                closed = optimal_sinr(sc, mode.tx_weights);
            } else {
                closed = analytic_sinr(sc, mode.tx_weights,
                                       virtual_steering(mode.tx_weights, cfg, mode.part, theta_s));
            }
            MonteCarloOptions opt{mvdr ? RxBeamformer::Mvdr : RxBeamformer::ConventionalRx,
                                  c.diagonal_load, c.threads, point};
            row[1 + m] = to_db(closed);
            row[4 + m] = to_db(monte_carlo_sinr(sc, mode.tx_weights, opt));
        }
        t.rows.push_back(std::move(row));
    }
    std::vector<EmittedTable> out;
    out.push_back({"sinr_curve.csv", std::move(t)});
    return out;
}

std::vector<EmittedTable> build_mvdr_pattern(const ExperimentConfig& c) {
    const ArrayConfig cfg = c.array_config();
    const double theta_s = deg2rad(c.theta_s_deg);
    const AngleGrid grid = AngleGrid::uniform(deg2rad(c.grid_resolution_deg), theta_s);
    std::vector<std::vector<double>> curves;
    for (const ModeSetup& mode : radar_modes(c, cfg, theta_s)) {
        const Scenario sc = c.scenario_for(mode.part, c.snr_db);
        const CVector u_s = virtual_steering(mode.tx_weights, cfg, mode.part, theta_s);
        const auto interferers = sc.effective_interferers();
        std::vector<CVector> u_i;
        u_i.reserve(interferers.size());
        for (const auto& interferer : interferers) {
            u_i.push_back(virtual_steering(mode.tx_weights, cfg, mode.part, interferer.theta));
        }
        RunRng rng(c.seed, 0, 0);
        std::vector<CVector> snapshots;
        snapshots.reserve(static_cast<std::size_t>(c.snapshot_count));
        for (int s = 0; s < c.snapshot_count; ++s) {
            snapshots.push_back(training_snapshot(sc, interferers, u_i, rng));
        }
        const CVector w = mvdr_weights(sample_covariance(snapshots, c.diagonal_load), u_s);
        curves.push_back(mvdr_pattern(cfg, mode.part, mode.tx_weights, w, theta_s, grid).values);
    }
    ResultTable t = stamped_table(c);
    t.columns = {"theta_deg", "G_ph_db", "G_mimo_db", "G_phmimo_db"};
    t.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.rows.push_back(
            {rad2deg(grid.angles[i]), to_db(curves[0][i]), to_db(curves[1][i]), to_db(curves[2][i])});
    }
    std::vector<EmittedTable> out;
    out.push_back({"mvdr_pattern.csv", std::move(t)});
    return out;
}

std::vector<EmittedTable> build_prop1(const ExperimentConfig& c) {
    const ArrayConfig cfg = c.array_config();
    const double theta_s = deg2rad(c.theta_s_deg);
    const AngleGrid grid = AngleGrid::uniform(deg2rad(c.grid_resolution_deg), theta_s);
    const SwapSymmetryReport report = verify_proposition1(cfg, theta_s, grid);
    ResultTable t = stamped_table(c);
    t.metadata.emplace_back("tolerance", format_double(kPropTolerance));
    t.columns = {"k", "k_conjugate", "max_abs_diff", "pass"};
    for (int k = 1; k <= report.m_tx; ++k) {
        const double dev = report.max_abs_diff[static_cast<std::size_t>(k - 1)];
        t.rows.push_back({static_cast<double>(k), static_cast<double>(report.m_tx - k + 1), dev,
                          dev <= kPropTolerance ? 1.0 : 0.0});
    }
    std::vector<EmittedTable> out;
    out.push_back({"prop1_report.csv", std::move(t)});
    return out;
}

std::vector<EmittedTable> build_prop2(const ExperimentConfig& c) {
    const ArrayConfig cfg = c.array_config();
    const double theta_s = deg2rad(c.theta_s_deg);
    const AngleGrid grid = AngleGrid::uniform(deg2rad(c.grid_resolution_deg), theta_s);
    const SidelobeOrderReport report = verify_proposition2(cfg, theta_s, grid);
    ResultTable t = stamped_table(c);
    t.metadata.emplace_back("zeta1", format_double(report.zeta1));
    t.metadata.emplace_back("gamma_reference", format_double(3.0 / (2.0 * kPi)));
    t.metadata.emplace_back("ordered_below_phased_array",
                            report.ordered_below_phased_array ? "true" : "false");
    t.metadata.emplace_back("zeta_product_below_zeta1",
                            report.zeta_product_below_zeta1 ? "true" : "false");
    t.metadata.emplace_back("alpha1_bounded", report.alpha1_bounded ? "true" : "false");
    t.columns = {"k", "peak_sidelobe_db", "alpha1", "zeta2", "zeta3", "gamma",
                 "below_phased_array"};
    const double baseline = report.entries.front().peak_sidelobe;
    for (const SidelobeOrderEntry& entry : report.entries) {
        t.rows.push_back({static_cast<double>(entry.k), to_db(entry.peak_sidelobe), entry.alpha1,
                          entry.zeta2, entry.zeta3, entry.gamma,
                          entry.peak_sidelobe <= baseline * (1.0 + 1e-9) ? 1.0 : 0.0});
    }
    std::vector<EmittedTable> out;
    out.push_back({"prop2_report.csv", std::move(t)});
    return out;
}

std::vector<EmittedTable> build_hk_curves(const ExperimentConfig& c) {
    const ArrayConfig cfg = c.array_config();
    const double theta_s = deg2rad(c.theta_s_deg);
    const AngleGrid grid = AngleGrid::uniform(deg2rad(c.grid_resolution_deg), theta_s);
    std::vector<double> omegas(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        omegas[i] = 2.0 * kPi * cfg.d_tx * std::sin(grid.angles[i]);
    }
    std::vector<std::vector<double>> hk;
    hk.reserve(static_cast<std::size_t>(cfg.m_tx));
    for (int k = 1; k <= cfg.m_tx; ++k) hk.push_back(hk_function(cfg.m_tx, k, omegas));

    ResultTable t = stamped_table(c);
    t.columns = {"theta_deg", "omega"};
    for (int k = 1; k <= cfg.m_tx; ++k) t.columns.push_back("h" + std::to_string(k) + "_db");
    t.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{rad2deg(grid.angles[i]), omegas[i]};
        for (int k = 1; k <= cfg.m_tx; ++k) {
            // Amplitude curve: 20 log10.
            row.push_back(20.0 * std::log10(hk[static_cast<std::size_t>(k - 1)][i]));
        }
        t.rows.push_back(std::move(row));
    }
    std::vector<EmittedTable> out;
    out.push_back({"hk_curves.csv", std::move(t)});
    return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<EmittedTable> tables;
    switch (config.experiment) {
        case ExperimentKind::Beampattern: tables = build_beampattern(config); break;
        case ExperimentKind::SinrCurve: tables = build_sinr_curve(config); break;
        case ExperimentKind::MvdrPattern: tables = build_mvdr_pattern(config); break;
        case ExperimentKind::VerifyProp1: tables = build_prop1(config); break;
        case ExperimentKind::VerifyProp2: tables = build_prop2(config); break;
        case ExperimentKind::HkCurves: tables = build_hk_curves(config); break;
    }

    ExperimentResult result;
    try {
        for (const EmittedTable& emitted : tables) {
            const std::filesystem::path path = out_dir / emitted.filename;
            emit_csv(emitted.table, path);
            result.files.push_back(path);
        }
    } catch (...) {
        // Never leave a partial result set behind.
        for (const auto& path : result.files) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
        throw;
    }
    result.tables = std::move(tables);
    return result;
}

VerifyOutcome verify_csv(const std::filesystem::path& path) {
    try {
        const ResultTable table = read_csv(path);
        const std::string* config_text = nullptr;
        const std::string* stored_hash = nullptr;
        for (const auto& [key, value] : table.metadata) {
            if (key == "config") config_text = &value;
            if (key == "scenario_hash") stored_hash = &value;
        }
        if (!config_text || !stored_hash) {
            return {false, path.string() + ": missing config/scenario_hash metadata"};
        }
        const std::string recomputed = to_hex(fnv1a64(*config_text));
        if (recomputed != *stored_hash) {
            return {false, path.string() + ": scenario hash mismatch (stored " + *stored_hash +
                               ", recomputed " + recomputed + ")"};
        }
        return {true, path.string() + ": ok"};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

}  // namespace pmimo
