// Command-line front end: one subcommand per experiment plus `verify` for
// checking the integrity stamp of emitted CSV files.
#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pmimo/experiment.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<double> grid_deg;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON experiment config; defaults apply when omitted")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "Output directory for CSV files (default: .)");
    cmd->add_option("--seed", opts.seed, "Override the config seed");
    cmd->add_option("--runs", opts.runs, "Override the Monte-Carlo run count");
    cmd->add_option("--grid-deg", opts.grid_deg, "Override the angle grid resolution in degrees");
}

int run_kind(pmimo::ExperimentKind kind, const CommonOptions& opts) {
    pmimo::ExperimentConfig config =
        opts.config_path.empty() ? pmimo::default_config(kind)
                                 : pmimo::load_config(opts.config_path, kind);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.runs) config.runs = *opts.runs;
    if (opts.grid_deg) config.grid_resolution_deg = *opts.grid_deg;

    const pmimo::ExperimentResult result = pmimo::run_experiment(config, opts.out_dir);
    for (const auto& file : result.files) std::printf("wrote %s\n", file.string().c_str());

    // The verification experiments also get a human-readable verdict.
    if (kind == pmimo::ExperimentKind::VerifyProp1) {
        bool all_pass = true;
        for (const auto& row : result.tables.front().table.rows) {
            const bool pass = row[3] != 0.0;
            all_pass = all_pass && pass;
            std::printf("K=%d vs K=%d: max |G_K - G_conj| = %s -> %s\n", static_cast<int>(row[0]),
                        static_cast<int>(row[1]), pmimo::format_double(row[2]).c_str(),
                        pass ? "PASS" : "FAIL");
        }
        return all_pass ? 0 : 1;
    }
    if (kind == pmimo::ExperimentKind::VerifyProp2) {
        const auto& table = result.tables.front().table;
        bool all_pass = true;
        for (const auto& row : table.rows) {
            const bool pass = row[6] != 0.0;
            all_pass = all_pass && pass;
            std::printf("K=%d: peak sidelobe %s dB (alpha1=%s) -> %s\n", static_cast<int>(row[0]),
                        pmimo::format_double(row[1]).c_str(), pmimo::format_double(row[2]).c_str(),
                        pass ? "PASS" : "FAIL");
        }
        for (const auto& [key, value] : table.metadata) {
            if (key == "zeta1" || key == "gamma_reference" || key == "zeta_product_below_zeta1" ||
                key == "alpha1_bounded") {
                std::printf("%s: %s\n", key.c_str(), value.c_str());
                if ((key == "zeta_product_below_zeta1" || key == "alpha1_bounded") &&
                    value != "true") {
                    all_pass = false;
                }
            }
        }
        return all_pass ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phased-MIMO radar beampattern and SINR experiments"};
    app.require_subcommand(1);

    struct SubcommandSpec {
        pmimo::ExperimentKind kind;
        const char* description;
    };
    const std::vector<SubcommandSpec> kinds = {
        {pmimo::ExperimentKind::Beampattern,
         "Transmit/diversity/receive/overall beampatterns for PH, MIMO and PH-MIMO"},
        {pmimo::ExperimentKind::SinrCurve, "Output SINR versus SNR, analytic and Monte-Carlo"},
        {pmimo::ExperimentKind::MvdrPattern, "MVDR receive beampattern per radar mode"},
        {pmimo::ExperimentKind::VerifyProp1,
         "Check the K <-> M-K+1 overall-beampattern symmetry on a dense grid"},
        {pmimo::ExperimentKind::VerifyProp2,
         "Check the sidelobe ordering against the phased-array baseline"},
        {pmimo::ExperimentKind::HkCurves, "Aperture-tradeoff envelope curves H_K"},
    };

    std::vector<CommonOptions> opts(kinds.size());
    int exit_code = 0;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        CLI::App* cmd =
            app.add_subcommand(pmimo::experiment_name(kinds[i].kind), kinds[i].description);
        add_common_options(cmd, opts[i]);
        cmd->callback([&, i] { exit_code = run_kind(kinds[i].kind, opts[i]); });
    }

    std::vector<std::string> verify_files;
    CLI::App* verify = app.add_subcommand("verify", "Re-check the scenario hash of result CSVs");
    verify->add_option("files", verify_files, "CSV files to verify")
        ->required()
        ->check(CLI::ExistingFile);
    verify->callback([&] {
        for (const auto& file : verify_files) {
            const pmimo::VerifyOutcome outcome = pmimo::verify_csv(file);
            std::printf("%s\n", outcome.message.c_str());
            if (!outcome.ok) exit_code = 1;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return exit_code;
}
