#include "qnid/config.hpp"
#include "qnid/errors.hpp"
#include "qnid/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

// exit codes: 0 success, 1 usage/config, 2 data, 3 model/convergence
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitModel = 3;

void print_outcomes(const std::vector<qnid::ModelOutcome>& outcomes) {
    for (const auto& o : outcomes) {
        if (o.ok) {
            std::printf("%-14s accuracy=%.4f attack_recall=%.4f%s\n", o.name.c_str(),
                        o.report.accuracy, o.report.attack.recall,
                        o.converged ? "" : " [convergence warning]");
        } else {
            std::printf("%-14s FAILED: %s\n", o.name.c_str(), o.error.c_str());
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid quantum-classical intrusion detection pipeline"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    std::string config_path;
    std::vector<std::string> overrides;
    std::string seed_override;
    std::string out_override;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--seed", seed_override, "master seed override");
    app.add_option("--out", out_override, "output directory override");
    app.add_option("--set", overrides, "config override key=value (repeatable)");

    auto* preprocess = app.add_subcommand("preprocess", "ingest CSVs, fit encoders and scaler");
    auto* baseline = app.add_subcommand("baseline", "classical models on the full split");
    auto* small = app.add_subcommand("small-sample", "classical models on the seeded subset");
    auto* quantum = app.add_subcommand("quantum", "quantum embedding + SVM on the subset");
    auto* report = app.add_subcommand("report", "merge available reports into one table");
    auto* verify = app.add_subcommand("verify-manifest", "re-hash recorded artifacts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        qnid::ExperimentConfig cfg =
            config_path.empty() ? qnid::ExperimentConfig{} : qnid::load_config(config_path);
        if (!seed_override.empty()) qnid::apply_override(cfg, "seed=" + seed_override);
        if (!out_override.empty()) qnid::apply_override(cfg, "out=" + out_override);
        for (const auto& kv : overrides) qnid::apply_override(cfg, kv);

        if (preprocess->parsed()) {
            auto r = qnid::cmd_preprocess(cfg);
            std::printf("preprocess: %zu train rows, %zu test rows -> %s/preprocess\n",
                        r.train_rows, r.test_rows, cfg.out_dir.c_str());
        } else if (baseline->parsed()) {
            auto outcomes = qnid::cmd_baseline(cfg);
            print_outcomes(outcomes);
            for (const auto& o : outcomes) {
                if (!o.ok) return kExitModel;
            }
        } else if (small->parsed()) {
            auto outcomes = qnid::cmd_small_sample(cfg);
            print_outcomes(outcomes);
            for (const auto& o : outcomes) {
                if (!o.ok) return kExitModel;
            }
        } else if (quantum->parsed()) {
            auto outcome = qnid::cmd_quantum(cfg);
            print_outcomes({outcome});
        } else if (report->parsed()) {
            auto r = qnid::cmd_report(cfg);
            std::printf("%s", r.text.c_str());
            std::printf("(%zu of 7 model rows present)\n", r.rows);
        } else if (verify->parsed()) {
            auto bad = qnid::cmd_verify_manifest(cfg);
            if (bad.empty()) {
                std::printf("manifest ok: all artifacts match\n");
            } else {
                for (const auto& b : bad) std::fprintf(stderr, "manifest problem: %s\n", b.c_str());
                return kExitData;
            }
        }
        return kExitOk;
    } catch (const qnid::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitUsage;
    } catch (const qnid::data_error& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const qnid::model_error& e) {
        std::fprintf(stderr, "model error: %s\n", e.what());
        return kExitModel;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
