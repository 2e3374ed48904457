#include "qnid/config.hpp"

#include "qnid/errors.hpp"
#include "qnid/rng.hpp"
#include "qnid/util.hpp"

#include <fstream>

namespace qnid {

std::uint64_t ExperimentConfig::stage_seed(std::string_view stage) const {
    return derive_seed(master_seed, stage);
}

std::uint64_t ExperimentConfig::effective_weight_seed() const {
    return weight_seed ? *weight_seed : stage_seed("weights");
}

namespace {

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "data.train_csv") cfg.train_csv = value;
        else if (key == "data.test_csv") cfg.test_csv = value;
        else if (key == "out") cfg.out_dir = value;
        else if (key == "seed") cfg.master_seed = parse_u64(value, key);
        else if (key == "data.scaler_fit") {
            if (value != "joint" && value != "train") {
                throw config_error("data.scaler_fit must be 'joint' or 'train'");
            }
            cfg.scaler_fit = value;
        } else if (key == "subset.size") cfg.subset_size = parse_u64(value, key);
        else if (key == "subset.stratified") {
            if (value != "true" && value != "false") {
                throw config_error("subset.stratified must be 'true' or 'false'");
            }
            cfg.stratified = value == "true";
        } else if (key == "split.fraction") cfg.split_fraction = parse_double(value, key);
        else if (key == "circuit.depth") cfg.circuit_depth = parse_u64(value, key);
        else if (key == "circuit.angle_scale") cfg.angle_scale = parse_double(value, key);
        else if (key == "circuit.weight_seed") cfg.weight_seed = parse_u64(value, key);
        else if (key == "quantum.threads") {
            cfg.quantum_threads = static_cast<unsigned>(parse_u64(value, key));
        } else if (key == "quantum.kernel") {
            if (value != "linear" && value != "rbf") {
                throw config_error("quantum.kernel must be 'linear' or 'rbf'");
            }
            cfg.quantum_kernel = value;
        } else if (key == "svm.C") cfg.svm_c = parse_double(value, key);
        else if (key == "svm.tol") cfg.svm_tol = parse_double(value, key);
        else if (key == "svm.max_passes") {
            cfg.svm_max_passes = static_cast<int>(parse_u64(value, key));
        } else if (key == "svm.gamma") {
            cfg.svm_gamma = value == "scale" ? 0.0 : parse_double(value, key);
        } else if (key == "svm.class_weight") {
            if (value != "none" && value != "balanced") {
                throw config_error("svm.class_weight must be 'none' or 'balanced'");
            }
            cfg.svm_class_weight = value;
        } else if (key == "logreg.lr") cfg.logreg_lr = parse_double(value, key);
        else if (key == "logreg.epochs") {
            cfg.logreg_epochs = static_cast<int>(parse_u64(value, key));
        } else if (key == "baseline.rbf_subsample") {
            cfg.rbf_subsample = parse_u64(value, key);
        } else if (key == "report.decimals") {
            cfg.report_decimals = static_cast<int>(parse_u64(value, key));
        } else if (key == "baseline.models") {
            cfg.baseline_models.clear();
            for (const auto& m : split(value, ',')) {
                std::string name(trim(m));
                if (name != "logreg" && name != "svm_linear" && name != "svm_rbf") {
                    throw config_error("baseline.models: unknown model '" + name + "'");
                }
                cfg.baseline_models.push_back(name);
            }
        } else {
            throw config_error("unknown config key '" + key + "'");
        }
    } catch (const data_error& e) {
        throw config_error("config key '" + key + "': " + e.what());
    }
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0)) {
        throw config_error("split.fraction must be in (0, 1)");
    }
    if (cfg.subset_size < 2) throw config_error("subset.size must be >= 2");
    if (cfg.circuit_depth < 1) throw config_error("circuit.depth must be >= 1");
    if (!(cfg.svm_c > 0.0)) throw config_error("svm.C must be > 0");
    if (!(cfg.svm_tol > 0.0)) throw config_error("svm.tol must be > 0");
    if (cfg.svm_max_passes < 1) throw config_error("svm.max_passes must be >= 1");
    if (cfg.svm_gamma < 0.0) throw config_error("svm.gamma must be 'scale' or > 0");
    if (!(cfg.logreg_lr > 0.0)) throw config_error("logreg.lr must be > 0");
    if (cfg.logreg_epochs < 1) throw config_error("logreg.epochs must be >= 1");
    if (cfg.rbf_subsample < 2) throw config_error("baseline.rbf_subsample must be >= 2");
    if (cfg.baseline_models.empty()) throw config_error("baseline.models must not be empty");
    if (cfg.report_decimals < 1 || cfg.report_decimals > 12) {
        throw config_error("report.decimals must be in [1, 12]");
    }
}

} // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;
        std::size_t eq = v.find('=');
        if (eq == std::string_view::npos) {
            throw config_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        set_key(cfg, std::string(trim(v.substr(0, eq))), std::string(trim(v.substr(eq + 1))));
    }
    validate(cfg);
    return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    std::string_view v = trim(assignment);
    std::size_t eq = v.find('=');
    if (eq == std::string_view::npos) {
        throw config_error("override '" + assignment + "': expected key=value");
    }
    set_key(cfg, std::string(trim(v.substr(0, eq))), std::string(trim(v.substr(eq + 1))));
    validate(cfg);
}

std::map<std::string, std::string> config_snapshot(const ExperimentConfig& cfg) {
    std::map<std::string, std::string> kv;
    kv["data.train_csv"] = cfg.train_csv;
    kv["data.test_csv"] = cfg.test_csv;
    kv["out"] = cfg.out_dir;
    kv["seed"] = std::to_string(cfg.master_seed);
    kv["data.scaler_fit"] = cfg.scaler_fit;
    kv["subset.size"] = std::to_string(cfg.subset_size);
    kv["subset.stratified"] = cfg.stratified ? "true" : "false";
    kv["split.fraction"] = format_double(cfg.split_fraction);
    kv["circuit.depth"] = std::to_string(cfg.circuit_depth);
    kv["circuit.angle_scale"] = format_double(cfg.angle_scale);
    kv["circuit.weight_seed"] = std::to_string(cfg.effective_weight_seed());
    kv["quantum.threads"] = std::to_string(cfg.quantum_threads);
    kv["quantum.kernel"] = cfg.quantum_kernel;
    kv["svm.C"] = format_double(cfg.svm_c);
    kv["svm.tol"] = format_double(cfg.svm_tol);
    kv["svm.max_passes"] = std::to_string(cfg.svm_max_passes);
    kv["svm.gamma"] = cfg.svm_gamma == 0.0 ? "scale" : format_double(cfg.svm_gamma);
    kv["svm.class_weight"] = cfg.svm_class_weight;
    kv["logreg.lr"] = format_double(cfg.logreg_lr);
    kv["logreg.epochs"] = std::to_string(cfg.logreg_epochs);
    kv["baseline.rbf_subsample"] = std::to_string(cfg.rbf_subsample);
    kv["report.decimals"] = std::to_string(cfg.report_decimals);
    std::string models;
    for (const auto& m : cfg.baseline_models) {
        if (!models.empty()) models += ",";
        models += m;
    }
    kv["baseline.models"] = models;
    return kv;
}

} // namespace qnid
