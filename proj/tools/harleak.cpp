// harleak: leakage-aware evaluation harness for activity recognition.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "harleak/error.hpp"
#include "harleak/harness.hpp"
#include "harleak/ingest.hpp"
#include "harleak/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool quiet = false;
};

harleak::ExperimentConfig load(const Common& opts) {
    auto cfg = harleak::load_config(opts.config);
    if (opts.seed) cfg.override_seed(*opts.seed);
    if (!opts.out.empty()) cfg.output_dir = opts.out;
    if (cfg.output_dir.empty()) cfg.output_dir = "harleak-out";
    return cfg;
}

template <typename Report>
void finish(const Report& report, const harleak::ExperimentConfig& cfg, const Common& opts) {
    harleak::write_outputs(report, cfg.output_dir);
    if (!opts.quiet) {
        std::cout << harleak::render_report(report.to_json());
        std::cout << "outputs: " << cfg.output_dir.string() << "\n";
    }
}

void add_common(CLI::App* cmd, Common& opts) {
    cmd->add_option("--config", opts.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", opts.seed, "override every seed in the config");
    cmd->add_option("--out", opts.out, "output directory");
    cmd->add_flag("--quiet", opts.quiet, "suppress the summary on stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harleak - sliding-window leakage audit and biased/unbiased evaluation"};
    app.require_subcommand(1);

    Common opts;
    auto* run_cmd = app.add_subcommand("run", "train and evaluate one split");
    auto* compare_cmd = app.add_subcommand("compare", "evaluate a biased and an unbiased split side by side");
    auto* audit_cmd = app.add_subcommand("audit", "segment and split only; report train/test overlap");
    for (auto* cmd : {run_cmd, compare_cmd, audit_cmd}) add_common(cmd, opts);
    std::optional<std::size_t> audit_split;
    audit_cmd->add_option("--split", audit_split, "which of the config's splits to audit (0-based)");

    std::string synth_kind;
    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic dataset to disk");
    synth_cmd->add_option("kind", synth_kind, "ambient | body")->required()->check(CLI::IsMember({"ambient", "body"}));
    synth_cmd->add_option("--config", opts.config, "generator settings (JSON object)")->check(CLI::ExistingFile);
    synth_cmd->add_option("--seed", opts.seed, "generator seed");
    synth_cmd->add_option("--out", opts.out, "output directory")->required();
    synth_cmd->add_flag("--quiet", opts.quiet);

    std::string report_path;
    auto* inspect_cmd = app.add_subcommand("inspect", "pretty-print a report.json or audit.json");
    inspect_cmd->add_option("report", report_path)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run_cmd) {
            const auto cfg = load(opts);
            finish(harleak::run(cfg), cfg, opts);
        } else if (*compare_cmd) {
            const auto cfg = load(opts);
            finish(harleak::compare(cfg), cfg, opts);
        } else if (*audit_cmd) {
            auto cfg = load(opts);
            if (audit_split) {
                if (*audit_split >= cfg.splits.size())
                    harleak::throw_config("--split " + std::to_string(*audit_split) + " but the config has " +
                                          std::to_string(cfg.splits.size()) + " split(s)");
                cfg.splits = {cfg.splits[*audit_split]};
            } else if (cfg.splits.size() > 1) {
                harleak::throw_config("config has " + std::to_string(cfg.splits.size()) +
                                      " splits; choose one with --split");
            }
            finish(harleak::audit(cfg), cfg, opts);
        } else if (*synth_cmd) {
            json settings = json::object();
            if (!opts.config.empty()) {
                try {
                    settings = json::parse(harleak::read_text_file(opts.config));
                } catch (const json::exception& e) {
                    harleak::throw_config("synth config: " + std::string(e.what()));
                }
            }
            if (opts.seed) settings["seed"] = *opts.seed;
            fs::path manifest;
            try {
                manifest = synth_kind == "ambient"
                               ? harleak::write_synthetic_dataset(harleak::ambient_config_from_json(settings), opts.out)
                               : harleak::write_synthetic_dataset(harleak::body_config_from_json(settings), opts.out);
            } catch (const json::exception& e) {
                harleak::throw_config("synth config: " + std::string(e.what()));
            }
            if (!opts.quiet) std::cout << "wrote " << manifest.string() << "\n";
        } else if (*inspect_cmd) {
            json doc;
            try {
                doc = json::parse(harleak::read_text_file(report_path));
            } catch (const json::exception& e) {
                harleak::throw_format(report_path + ": " + e.what());
            }
            std::cout << harleak::render_report(doc);
        }
    } catch (const harleak::Error& e) {
        std::cerr << "harleak: " << harleak::to_string(e.kind()) << ": " << e.what() << "\n";
        return harleak::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "harleak: internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
