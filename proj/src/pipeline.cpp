#include "qnid/pipeline.hpp"

#include "qnid/circuit.hpp"
#include "qnid/dataset.hpp"
#include "qnid/errors.hpp"
#include "qnid/flow.hpp"
#include "qnid/kernel.hpp"
#include "qnid/logreg.hpp"
#include "qnid/manifest.hpp"
#include "qnid/preprocess.hpp"
#include "qnid/svm.hpp"
#include "qnid/util.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

namespace qnid {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestFile = "manifest.txt";
constexpr const char* kTrainFeatures = "preprocess/train_features.csv";
constexpr const char* kTestFeatures = "preprocess/test_features.csv";
constexpr const char* kPreprocessMeta = "preprocess/meta.txt";

class StageTimer {
  public:
    StageTimer() : start_(std::chrono::steady_clock::now()) {}
    long long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

RunManifest open_manifest(const ExperimentConfig& cfg) {
    const std::string path = cfg.out_dir + "/" + kManifestFile;
    RunManifest m = fs::exists(path) ? RunManifest::load(path) : RunManifest{};
    for (const auto& [key, value] : config_snapshot(cfg)) m.set("config." + key, value);
    return m;
}

void close_manifest(const ExperimentConfig& cfg, RunManifest& m, const std::string& stage,
                    const StageTimer& timer) {
    m.set("timing." + stage + "_ms", std::to_string(timer.elapsed_ms()));
    m.save(cfg.out_dir + "/" + kManifestFile);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write file: " + path);
    f << content;
}

void require_preprocessed(const ExperimentConfig& cfg) {
    for (const char* rel : {kTrainFeatures, kTestFeatures}) {
        if (!fs::exists(cfg.out_dir + "/" + rel)) {
            throw data_error("preprocessing output missing: " + cfg.out_dir + "/" + rel +
                             " (run the preprocess stage first)");
        }
    }
}

// Combined corpus in a fixed order (train rows then test rows) so the
// seeded subset is identical for the small-sample and quantum stages.
Dataset load_combined_corpus(const ExperimentConfig& cfg) {
    Dataset train = load_dataset(cfg.out_dir + "/" + kTrainFeatures);
    Dataset test = load_dataset(cfg.out_dir + "/" + kTestFeatures);
    Dataset all;
    all.features = std::move(train.features);
    all.labels = std::move(train.labels);
    all.features.insert(all.features.end(), test.features.begin(), test.features.end());
    all.labels.insert(all.labels.end(), test.labels.begin(), test.labels.end());
    all.sources = {cfg.out_dir + "/" + kTrainFeatures, cfg.out_dir + "/" + kTestFeatures};
    all.tag = "combined";
    return all;
}

KernelSpec make_rbf(const ExperimentConfig& cfg, const std::vector<std::vector<double>>& X) {
    return KernelSpec::rbf(cfg.svm_gamma > 0.0 ? cfg.svm_gamma : gamma_scale(X));
}

// "balanced" rescales each class cap by n / (2 * n_class)
ClassWeights make_class_weights(const ExperimentConfig& cfg, const std::vector<int>& y) {
    if (cfg.svm_class_weight != "balanced") return {};
    std::size_t n1 = 0;
    for (int label : y) n1 += label == 1 ? 1 : 0;
    const std::size_t n0 = y.size() - n1;
    const double n = static_cast<double>(y.size());
    return {n / (2.0 * static_cast<double>(n0)), n / (2.0 * static_cast<double>(n1))};
}

MetricsReport evaluate_predictions(const std::vector<int>& y_true,
                                   const std::vector<int>& y_pred) {
    return summarize(confusion(y_true, y_pred));
}

void write_report_files(const ExperimentConfig& cfg, RunManifest& m, const std::string& dir,
                        const std::string& model, const MetricsReport& report) {
    const std::string base = dir + "/" + model;
    write_file(cfg.out_dir + "/" + base + "_report.txt",
               render_report_text(report, cfg.report_decimals));
    write_file(cfg.out_dir + "/" + base + "_report.kv", render_report_kv(report));
    write_file(cfg.out_dir + "/" + base + "_confusion.csv", render_confusion_csv(report.cm));
    m.record_artifact(cfg.out_dir, base + "_report.txt");
    m.record_artifact(cfg.out_dir, base + "_report.kv");
    m.record_artifact(cfg.out_dir, base + "_confusion.csv");
}

// Trains one classical model on (X, y) and evaluates on (Xt, yt); persists
// the model file. Failures are captured, not propagated.
ModelOutcome run_classical_model(const ExperimentConfig& cfg, RunManifest& m,
                                 const std::string& dir, const std::string& name,
                                 const std::vector<std::vector<double>>& X,
                                 const std::vector<int>& y,
                                 const std::vector<std::vector<double>>& Xt,
                                 const std::vector<int>& yt, const std::string& seed_tag) {
    ModelOutcome out;
    out.name = name;
    try {
        std::vector<int> pred(Xt.size());
        if (name == "logreg") {
            LogRegModel model = train_logreg(X, y, cfg.logreg_lr, cfg.logreg_epochs,
                                             cfg.stage_seed(seed_tag));
            save_logreg(model, cfg.out_dir + "/" + dir + "/" + name + "_model.txt");
            for (std::size_t i = 0; i < Xt.size(); ++i) pred[i] = predict_logreg(model, Xt[i]).first;
        } else {
            const KernelSpec kernel =
                name == "svm_linear" ? KernelSpec::linear() : make_rbf(cfg, X);
            SvmModel model = train_svm_smo(X, y, cfg.svm_c, kernel, cfg.svm_tol,
                                           cfg.svm_max_passes, cfg.stage_seed(seed_tag),
                                           make_class_weights(cfg, y));
            out.converged = model.converged;
            save_svm(model, cfg.out_dir + "/" + dir + "/" + name + "_model.txt");
            for (std::size_t i = 0; i < Xt.size(); ++i) pred[i] = predict_svm(model, Xt[i]);
        }
        m.record_artifact(cfg.out_dir, dir + "/" + name + "_model.txt");
        out.report = evaluate_predictions(yt, pred);
        write_report_files(cfg, m, dir, name, out.report);
        out.ok = true;
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    m.set("flag." + dir + "." + name,
          out.ok ? (out.converged ? "ok" : "ok_convergence_warning") : "error: " + out.error);
    return out;
}

void check_both_classes(const Dataset& ds, const std::string& what) {
    if (ds.class_count(0) == 0 || ds.class_count(1) == 0) {
        throw model_error(what + " contains a single class; choose a different seed or set "
                                 "subset.stratified=true");
    }
}

std::string comparison_table(const std::vector<std::pair<std::string, MetricsReport>>& rows) {
    // attack-class precision/recall/f1: the positive class drives the analysis
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%-18s %9s %10s %8s %9s\n", "model", "accuracy", "precision",
                  "recall", "f1");
    out += buf;
    for (const auto& [name, r] : rows) {
        std::snprintf(buf, sizeof(buf), "%-18s %9.4f %10.4f %8.4f %9.4f\n", name.c_str(),
                      r.accuracy, r.attack.precision, r.attack.recall, r.attack.f1);
        out += buf;
    }
    return out;
}

} // namespace

PreprocessResult cmd_preprocess(const ExperimentConfig& cfg) {
    StageTimer timer;
    fs::create_directories(cfg.out_dir + "/preprocess");
    RunManifest m = open_manifest(cfg);

    auto train_records = load_csv(cfg.train_csv);
    auto test_records = load_csv(cfg.test_csv);
    m.record_input(cfg.train_csv);
    m.record_input(cfg.test_csv);

    std::vector<FlowRecord> combined = train_records;
    combined.insert(combined.end(), test_records.begin(), test_records.end());
    const CategoryEncoder enc = fit_encoders(combined);

    auto raw_rows = [&](const std::vector<FlowRecord>& records) {
        std::vector<std::vector<double>> rows;
        rows.reserve(records.size());
        for (const auto& r : records) rows.push_back(numeric_features(r, enc));
        return rows;
    };
    auto train_raw = raw_rows(train_records);
    auto test_raw = raw_rows(test_records);

    MinMaxScaler scaler;
    if (cfg.scaler_fit == "joint") {
        auto all = train_raw;
        all.insert(all.end(), test_raw.begin(), test_raw.end());
        scaler = fit_scaler(all);
    } else {
        scaler = fit_scaler(train_raw);
    }

    auto build = [&](const std::vector<FlowRecord>& records,
                     const std::vector<std::vector<double>>& raw, const std::string& source,
                     const std::string& tag) {
        Dataset ds;
        ds.tag = tag;
        ds.sources = {source};
        ds.features.reserve(records.size());
        ds.labels.reserve(records.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            ds.features.push_back(scaler.transform(raw[i]));
            ds.labels.push_back(records[i].label);
        }
        return ds;
    };
    Dataset train = build(train_records, train_raw, cfg.train_csv, "train");
    Dataset test = build(test_records, test_raw, cfg.test_csv, "test");

    save_dataset(train, cfg.out_dir + "/" + kTrainFeatures);
    save_dataset(test, cfg.out_dir + "/" + kTestFeatures);

    std::string meta;
    meta += "train_csv=" + cfg.train_csv + "\n";
    meta += "test_csv=" + cfg.test_csv + "\n";
    meta += "train_digest=" + hex64(fnv1a64_file(cfg.train_csv)) + "\n";
    meta += "test_digest=" + hex64(fnv1a64_file(cfg.test_csv)) + "\n";
    meta += "seed=" + std::to_string(cfg.master_seed) + "\n";
    meta += "scaler_fit=" + cfg.scaler_fit + "\n";
    meta += "train_rows=" + std::to_string(train.size()) + "\n";
    meta += "test_rows=" + std::to_string(test.size()) + "\n";
    for (std::size_t j = 0; j < kFeatureNames.size(); ++j) {
        meta += "feature." + std::to_string(j) + "=" + std::string(kFeatureNames[j]) + "\n";
    }
    auto dump_encoder = [&meta](const char* field, const std::map<std::string, int>& codes) {
        for (const auto& [cat, code] : codes) {
            meta += "encoder." + std::string(field) + "." + cat + "=" + std::to_string(code) + "\n";
        }
    };
    dump_encoder("proto", enc.proto);
    dump_encoder("service", enc.service);
    dump_encoder("state", enc.state);
    for (std::size_t j = 0; j < scaler.min.size(); ++j) {
        meta += "scaler." + std::to_string(j) + ".min=" + format_double(scaler.min[j]) + "\n";
        meta += "scaler." + std::to_string(j) + ".max=" + format_double(scaler.max[j]) + "\n";
    }
    write_file(cfg.out_dir + "/" + kPreprocessMeta, meta);

    m.record_artifact(cfg.out_dir, kTrainFeatures);
    m.record_artifact(cfg.out_dir, kTestFeatures);
    m.record_artifact(cfg.out_dir, kPreprocessMeta);
    close_manifest(cfg, m, "preprocess", timer);
    return {train.size(), test.size()};
}

std::vector<ModelOutcome> cmd_baseline(const ExperimentConfig& cfg) {
    StageTimer timer;
    require_preprocessed(cfg);
    fs::create_directories(cfg.out_dir + "/baseline");
    RunManifest m = open_manifest(cfg);

    Dataset train = load_dataset(cfg.out_dir + "/" + kTrainFeatures);
    Dataset test = load_dataset(cfg.out_dir + "/" + kTestFeatures);
    check_both_classes(train, "training set");

    std::vector<ModelOutcome> outcomes;
    for (const auto& name : cfg.baseline_models) {
        if (name == "svm_rbf" && train.size() > cfg.rbf_subsample) {
            Dataset sub = subsample(train, cfg.rbf_subsample, cfg.stage_seed("rbf_subsample"),
                                    false);
            m.set("flag.baseline.rbf_subsample_rows", std::to_string(sub.size()));
            outcomes.push_back(run_classical_model(cfg, m, "baseline", name, sub.features,
                                                   sub.labels, test.features, test.labels,
                                                   "smo.baseline." + name));
        } else {
            outcomes.push_back(run_classical_model(cfg, m, "baseline", name, train.features,
                                                   train.labels, test.features, test.labels,
                                                   "smo.baseline." + name));
        }
    }

    std::vector<std::pair<std::string, MetricsReport>> ok_rows;
    for (const auto& o : outcomes) {
        if (o.ok) ok_rows.emplace_back(o.name, o.report);
    }
    if (!ok_rows.empty()) {
        write_file(cfg.out_dir + "/baseline/comparison.txt", comparison_table(ok_rows));
        m.record_artifact(cfg.out_dir, "baseline/comparison.txt");
    }
    close_manifest(cfg, m, "baseline", timer);
    return outcomes;
}

std::vector<ModelOutcome> cmd_small_sample(const ExperimentConfig& cfg) {
    StageTimer timer;
    require_preprocessed(cfg);
    fs::create_directories(cfg.out_dir + "/small_sample");
    RunManifest m = open_manifest(cfg);

    Dataset corpus = load_combined_corpus(cfg);
    Dataset subset = subsample(corpus, cfg.subset_size, cfg.stage_seed("subset"), cfg.stratified);
    check_both_classes(subset, "the " + std::to_string(cfg.subset_size) + "-sample subset");
    save_dataset(subset, cfg.out_dir + "/small_sample/subset_features.csv");
    m.record_artifact(cfg.out_dir, "small_sample/subset_features.csv");
    m.set("flag.small_sample.subset_class0", std::to_string(subset.class_count(0)));
    m.set("flag.small_sample.subset_class1", std::to_string(subset.class_count(1)));

    auto [train, test] = split(subset, cfg.split_fraction, cfg.stage_seed("split"));
    check_both_classes(train, "the small-sample training split");

    std::vector<ModelOutcome> outcomes;
    for (const auto& name : cfg.baseline_models) {
        outcomes.push_back(run_classical_model(cfg, m, "small_sample", name, train.features,
                                               train.labels, test.features, test.labels,
                                               "smo.small." + name));
    }

    std::vector<std::pair<std::string, MetricsReport>> ok_rows;
    for (const auto& o : outcomes) {
        if (o.ok) ok_rows.emplace_back(o.name, o.report);
    }
    if (!ok_rows.empty()) {
        write_file(cfg.out_dir + "/small_sample/comparison.txt", comparison_table(ok_rows));
        m.record_artifact(cfg.out_dir, "small_sample/comparison.txt");
    }
    close_manifest(cfg, m, "small_sample", timer);
    return outcomes;
}

ModelOutcome cmd_quantum(const ExperimentConfig& cfg) {
    StageTimer timer;
    require_preprocessed(cfg);
    fs::create_directories(cfg.out_dir + "/quantum");
    RunManifest m = open_manifest(cfg);

    Dataset corpus = load_combined_corpus(cfg);
    const std::size_t n_qubits = corpus.features.front().size();

    Dataset subset = subsample(corpus, cfg.subset_size, cfg.stage_seed("subset"), cfg.stratified);
    check_both_classes(subset, "the " + std::to_string(cfg.subset_size) + "-sample subset");
    auto [train, test] = split(subset, cfg.split_fraction, cfg.stage_seed("split"));
    check_both_classes(train, "the small-sample training split");

    const VqcWeights weights =
        init_weights(n_qubits, cfg.circuit_depth, cfg.effective_weight_seed());
    save_weights(weights, cfg.out_dir + "/quantum/weights.txt");
    m.record_artifact(cfg.out_dir, "quantum/weights.txt");

    auto train_emb = embed_batch(train.features, weights, cfg.angle_scale, cfg.quantum_threads);
    auto test_emb = embed_batch(test.features, weights, cfg.angle_scale, cfg.quantum_threads);
    save_embeddings(train_emb, train.labels, weights, cfg.angle_scale,
                    cfg.out_dir + "/quantum/train_embeddings.csv");
    save_embeddings(test_emb, test.labels, weights, cfg.angle_scale,
                    cfg.out_dir + "/quantum/test_embeddings.csv");
    m.record_artifact(cfg.out_dir, "quantum/train_embeddings.csv");
    m.record_artifact(cfg.out_dir, "quantum/test_embeddings.csv");

    ModelOutcome out;
    out.name = "quantum_svm";
    try {
        const KernelSpec kernel = cfg.quantum_kernel == "linear"
                                      ? KernelSpec::linear()
                                      : make_rbf(cfg, train_emb);
        SvmModel model = train_svm_smo(train_emb, train.labels, cfg.svm_c, kernel, cfg.svm_tol,
                                       cfg.svm_max_passes, cfg.stage_seed("smo.quantum"),
                                       make_class_weights(cfg, train.labels));
        out.converged = model.converged;
        save_svm(model, cfg.out_dir + "/quantum/quantum_svm_model.txt");
        m.record_artifact(cfg.out_dir, "quantum/quantum_svm_model.txt");
        std::vector<int> pred(test_emb.size());
        for (std::size_t i = 0; i < test_emb.size(); ++i) pred[i] = predict_svm(model, test_emb[i]);
        out.report = evaluate_predictions(test.labels, pred);
        write_report_files(cfg, m, "quantum", "quantum_svm", out.report);
        out.ok = true;
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    m.set("flag.quantum.quantum_svm",
          out.ok ? (out.converged ? "ok" : "ok_convergence_warning") : "error: " + out.error);
    close_manifest(cfg, m, "quantum", timer);
    if (!out.ok) throw model_error("quantum stage: " + out.error);
    return out;
}

ComparisonResult cmd_report(const ExperimentConfig& cfg) {
    StageTimer timer;
    fs::create_directories(cfg.out_dir + "/report");
    RunManifest m = open_manifest(cfg);

    // fixed 7-row protocol: 3 full-data, 3 small-sample, 1 quantum
    const std::vector<std::pair<std::string, std::string>> expected = {
        {"full_logreg", "baseline/logreg_report.kv"},
        {"full_svm_linear", "baseline/svm_linear_report.kv"},
        {"full_svm_rbf", "baseline/svm_rbf_report.kv"},
        {"small_logreg", "small_sample/logreg_report.kv"},
        {"small_svm_linear", "small_sample/svm_linear_report.kv"},
        {"small_svm_rbf", "small_sample/svm_rbf_report.kv"},
        {"quantum_svm", "quantum/quantum_svm_report.kv"},
    };

    std::vector<std::pair<std::string, MetricsReport>> rows;
    ComparisonResult result;
    for (const auto& [name, rel] : expected) {
        const std::string path = cfg.out_dir + "/" + rel;
        if (!fs::exists(path)) {
            result.missing.push_back(name);
            continue;
        }
        std::ifstream f(path);
        std::string doc((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        rows.emplace_back(name, parse_report_kv(doc));
    }
    if (rows.empty()) {
        std::string msg = "no experiment outputs found under " + cfg.out_dir +
                          "; expected any of:";
        for (const auto& [name, rel] : expected) msg += "\n  " + cfg.out_dir + "/" + rel;
        throw data_error(msg);
    }

    result.rows = rows.size();
    result.text = comparison_table(rows);
    if (!result.missing.empty()) {
        result.text += "\nabsent experiments:";
        for (const auto& name : result.missing) result.text += " " + name;
        result.text += "\n";
    }

    std::string kv;
    for (const auto& [name, r] : rows) {
        kv += name + ".accuracy=" + format_double(r.accuracy) + "\n";
        kv += name + ".precision=" + format_double(r.attack.precision) + "\n";
        kv += name + ".recall=" + format_double(r.attack.recall) + "\n";
        kv += name + ".f1=" + format_double(r.attack.f1) + "\n";
    }
    write_file(cfg.out_dir + "/report/comparison.txt", result.text);
    write_file(cfg.out_dir + "/report/comparison.kv", kv);
    m.record_artifact(cfg.out_dir, "report/comparison.txt");
    m.record_artifact(cfg.out_dir, "report/comparison.kv");
    close_manifest(cfg, m, "report", timer);
    return result;
}

std::vector<std::string> cmd_verify_manifest(const ExperimentConfig& cfg) {
    const std::string path = cfg.out_dir + "/" + kManifestFile;
    if (!fs::exists(path)) throw data_error("no manifest at " + path);
    return RunManifest::load(path).verify(cfg.out_dir);
}

} // namespace qnid
