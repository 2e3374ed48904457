#include "qnid/circuit.hpp"
#include "qnid/config.hpp"
#include "qnid/dataset.hpp"
#include "qnid/errors.hpp"
#include "qnid/manifest.hpp"
#include "qnid/pipeline.hpp"
#include "qnid/rng.hpp"
#include "qnid/util.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <unistd.h>

using namespace qnid;
namespace fs = std::filesystem;

namespace {

// runs from the repository root (set by ctest) so bundled data resolves
const char* kTrainCsv = "data/synthetic_train.csv";
const char* kTestCsv = "data/synthetic_test.csv";

struct TempOut {
    fs::path path;
    explicit TempOut(const std::string& name)
        : path(fs::temp_directory_path() / (name + "_" + std::to_string(::getpid()))) {
        fs::remove_all(path);
    }
    ~TempOut() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

// fast settings for test runs: small subset, light training
ExperimentConfig test_config(const std::string& out_dir) {
    ExperimentConfig cfg;
    cfg.train_csv = kTrainCsv;
    cfg.test_csv = kTestCsv;
    cfg.out_dir = out_dir;
    cfg.subset_size = 80;
    cfg.logreg_epochs = 300;
    cfg.svm_max_passes = 5;
    cfg.rbf_subsample = 400;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("config parsing, overrides, validation") {
    TempOut out("qnid_cfg");
    fs::create_directories(out.path);
    const std::string cfg_path = (out.path / "run.cfg").string();
    {
        std::ofstream f(cfg_path);
        f << "# comment\n\n";
        f << "seed = 7\n";
        f << "subset.size=120\n";
        f << "circuit.angle_scale=3.14\n";
        f << "svm.gamma=scale\n";
        f << "baseline.models=logreg,svm_linear\n";
    }
    ExperimentConfig cfg = load_config(cfg_path);
    CHECK(cfg.master_seed == 7);
    CHECK(cfg.subset_size == 120);
    CHECK(cfg.angle_scale == 3.14);
    CHECK(cfg.svm_gamma == 0.0);
    CHECK(cfg.baseline_models == std::vector<std::string>{"logreg", "svm_linear"});

    apply_override(cfg, "svm.C=2.5");
    CHECK(cfg.svm_c == 2.5);
    CHECK_THROWS_AS(apply_override(cfg, "nonsense.key=1"), config_error);
    CHECK_THROWS_AS(apply_override(cfg, "split.fraction=1.5"), config_error);
    CHECK_THROWS_AS(apply_override(cfg, "no_equals"), config_error);

    auto snap = config_snapshot(cfg);
    CHECK(snap.at("seed") == "7");
    CHECK(snap.at("svm.C") == "2.5");
    CHECK(snap.count("circuit.weight_seed") == 1);
}

TEST_CASE("stage seeds are deterministic and distinct") {
    ExperimentConfig cfg;
    cfg.master_seed = 42;
    const auto a = cfg.stage_seed("subset");
    const auto b = cfg.stage_seed("split");
    const auto c = cfg.stage_seed("weights");
    CHECK(a == cfg.stage_seed("subset"));
    CHECK(a != b);
    CHECK(b != c);
    CHECK(cfg.effective_weight_seed() == c);
    cfg.weight_seed = 99;
    CHECK(cfg.effective_weight_seed() == 99);

    ExperimentConfig other;
    other.master_seed = 43;
    CHECK(other.stage_seed("subset") != a);
}

TEST_CASE("manifest records and verifies digests") {
    TempOut out("qnid_manifest");
    fs::create_directories(out.path / "sub");
    const std::string file_rel = "sub/a.txt";
    {
        std::ofstream f(out.path / file_rel);
        f << "payload\n";
    }
    RunManifest m;
    m.set("config.seed", "1");
    m.record_artifact(out.str(), file_rel);
    const std::string manifest_path = (out.path / "manifest.txt").string();
    m.save(manifest_path);

    RunManifest loaded = RunManifest::load(manifest_path);
    CHECK(loaded.verify(out.str()).empty());
    CHECK(loaded.artifact_digests().size() == 1);

    // tampering is detected
    {
        std::ofstream f(out.path / file_rel);
        f << "tampered\n";
    }
    auto bad = loaded.verify(out.str());
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("digest mismatch") != std::string::npos);

    fs::remove(out.path / file_rel);
    bad = loaded.verify(out.str());
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("missing") != std::string::npos);
}

TEST_CASE("preprocess writes features, metadata, manifest") {
    TempOut out("qnid_prep");
    ExperimentConfig cfg = test_config(out.str());
    PreprocessResult r = cmd_preprocess(cfg);
    CHECK(r.train_rows == 1000);
    CHECK(r.test_rows == 400);

    Dataset train = load_dataset(out.str() + "/preprocess/train_features.csv");
    CHECK(train.size() == 1000);
    for (const auto& x : train.features) {
        REQUIRE(x.size() == 8);
        for (double v : x) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }

    const std::string meta = slurp(out.str() + "/preprocess/meta.txt");
    CHECK(meta.find("encoder.proto.tcp=") != std::string::npos);
    CHECK(meta.find("scaler.0.min=") != std::string::npos);
    CHECK(meta.find("train_rows=1000") != std::string::npos);

    CHECK(cmd_verify_manifest(cfg).empty());

    // rerun with the same config is byte-identical
    const std::string before = slurp(out.str() + "/preprocess/train_features.csv");
    cmd_preprocess(cfg);
    CHECK(slurp(out.str() + "/preprocess/train_features.csv") == before);
}

TEST_CASE("preprocess surfaces schema errors with context") {
    TempOut out("qnid_prep_bad");
    fs::create_directories(out.path);
    const std::string bad_csv = (out.path / "bad.csv").string();
    {
        std::ofstream f(bad_csv);
        f << "id,dur,proto,state,spkts,dpkts,sbytes,dbytes,label\n";
        f << "1,0.5,tcp,FIN,1,1,1,1,0\n";
    }
    ExperimentConfig cfg = test_config(out.str());
    cfg.train_csv = bad_csv;
    try {
        cmd_preprocess(cfg);
        FAIL("expected data_error");
    } catch (const data_error& e) {
        CHECK(std::string(e.what()).find("service") != std::string::npos);
    }
}

TEST_CASE("stages require preprocessing first") {
    TempOut out("qnid_noprep");
    ExperimentConfig cfg = test_config(out.str());
    CHECK_THROWS_AS(cmd_baseline(cfg), data_error);
    CHECK_THROWS_AS(cmd_small_sample(cfg), data_error);
    CHECK_THROWS_AS(cmd_quantum(cfg), data_error);
}

TEST_CASE("full pipeline on bundled synthetic data") {
    TempOut out("qnid_full");
    ExperimentConfig cfg = test_config(out.str());
    cmd_preprocess(cfg);

    auto baseline = cmd_baseline(cfg);
    REQUIRE(baseline.size() == 3);
    for (const auto& o : baseline) {
        CHECK(o.ok);
        // synthetic classes are separable enough to beat chance
        CHECK(o.report.accuracy > 0.55);
    }

    auto small = cmd_small_sample(cfg);
    REQUIRE(small.size() == 3);
    for (const auto& o : small) CHECK(o.ok);

    ModelOutcome quantum = cmd_quantum(cfg);
    CHECK(quantum.ok);
    CHECK(quantum.name == "quantum_svm");

    // embeddings are bounded expectations
    EmbeddingFile emb = load_embeddings(out.str() + "/quantum/train_embeddings.csv");
    CHECK(emb.n_qubits == 8);
    CHECK(emb.depth == cfg.circuit_depth);
    CHECK(emb.embeddings.size() == 64); // 80 * 0.8
    for (const auto& e : emb.embeddings) {
        for (double v : e) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
    }

    // quantum and small-sample consumed the identical subset
    Dataset subset = load_dataset(out.str() + "/small_sample/subset_features.csv");
    Dataset corpus = load_dataset(out.str() + "/preprocess/train_features.csv");
    Dataset test_part = load_dataset(out.str() + "/preprocess/test_features.csv");
    corpus.features.insert(corpus.features.end(), test_part.features.begin(),
                           test_part.features.end());
    corpus.labels.insert(corpus.labels.end(), test_part.labels.begin(), test_part.labels.end());
    Dataset re = subsample(corpus, cfg.subset_size, cfg.stage_seed("subset"), cfg.stratified);
    CHECK(subset.features == re.features);
    CHECK(subset.labels == re.labels);

    ComparisonResult report = cmd_report(cfg);
    CHECK(report.rows == 7);
    CHECK(report.missing.empty());
    CHECK(report.text.find("quantum_svm") != std::string::npos);

    CHECK(cmd_verify_manifest(cfg).empty());
}

TEST_CASE("baseline continues past a single model failure") {
    TempOut out("qnid_failpolicy");
    fs::create_directories(out.path);
    // constant features scale to all-zero vectors: the rbf gamma heuristic
    // has nothing to work with and must fail, the other models still run
    auto write_const = [&](const std::string& name, int rows) {
        const std::string p = (out.path / name).string();
        std::ofstream f(p);
        f << "id,dur,proto,service,state,spkts,dpkts,sbytes,dbytes,label\n";
        for (int i = 0; i < rows; ++i) {
            f << i << ",1.0,tcp,http,FIN,4,2,512,256," << (i % 2) << "\n";
        }
        return p;
    };
    ExperimentConfig cfg = test_config(out.str() + "/run");
    cfg.train_csv = write_const("train.csv", 40);
    cfg.test_csv = write_const("test.csv", 10);
    cmd_preprocess(cfg);
    auto outcomes = cmd_baseline(cfg);
    REQUIRE(outcomes.size() == 3);
    CHECK(outcomes[0].ok); // logreg
    CHECK(outcomes[1].ok); // svm_linear
    CHECK(!outcomes[2].ok);
    CHECK(outcomes[2].error.find("gamma") != std::string::npos);

    // the failure is recorded in the manifest
    RunManifest m = RunManifest::load(out.str() + "/run/manifest.txt");
    const std::string* flag = m.find("flag.baseline.svm_rbf");
    REQUIRE(flag != nullptr);
    CHECK(flag->find("error") != std::string::npos);
}

TEST_CASE("balanced class weighting lifts minority-class recall") {
    TempOut out("qnid_weighted");
    ExperimentConfig cfg = test_config(out.str());
    cfg.baseline_models = {"svm_rbf"};
    cmd_preprocess(cfg);
    auto plain = cmd_baseline(cfg);
    REQUIRE(plain.size() == 1);
    REQUIRE(plain[0].ok);

    TempOut out2("qnid_weighted2");
    ExperimentConfig wcfg = test_config(out2.str());
    wcfg.baseline_models = {"svm_rbf"};
    wcfg.svm_class_weight = "balanced";
    cmd_preprocess(wcfg);
    auto weighted = cmd_baseline(wcfg);
    REQUIRE(weighted.size() == 1);
    REQUIRE(weighted[0].ok);

    // benign is the minority class in the synthetic corpus
    CHECK(weighted[0].report.benign.recall >= plain[0].report.benign.recall);
}

TEST_CASE("baseline restricted to a single model yields a single report") {
    TempOut out("qnid_single");
    ExperimentConfig cfg = test_config(out.str());
    cfg.baseline_models = {"svm_linear"};
    cmd_preprocess(cfg);
    auto outcomes = cmd_baseline(cfg);
    REQUIRE(outcomes.size() == 1);
    CHECK(outcomes[0].name == "svm_linear");
    CHECK(outcomes[0].ok);
    CHECK(fs::exists(out.path / "baseline/svm_linear_report.kv"));
    CHECK(!fs::exists(out.path / "baseline/logreg_report.kv"));
}

TEST_CASE("comparison kv output parses back to the merged values") {
    TempOut out("qnid_cmp");
    ExperimentConfig cfg = test_config(out.str());
    cmd_preprocess(cfg);
    cmd_baseline(cfg);
    cmd_report(cfg);

    MetricsReport logreg =
        parse_report_kv(slurp(out.str() + "/baseline/logreg_report.kv"));
    const std::string kv = slurp(out.str() + "/report/comparison.kv");
    std::map<std::string, double> values;
    for (const auto& raw : split(kv, '\n')) {
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        REQUIRE(eq != std::string_view::npos);
        values[std::string(line.substr(0, eq))] =
            parse_double(line.substr(eq + 1), "comparison.kv");
    }
    CHECK(values.at("full_logreg.accuracy") == logreg.accuracy);
    CHECK(values.at("full_logreg.precision") == logreg.attack.precision);
    CHECK(values.at("full_logreg.recall") == logreg.attack.recall);
    CHECK(values.at("full_logreg.f1") == logreg.attack.f1);
}

TEST_CASE("quantum stage reads only persisted preprocessing outputs") {
    TempOut out("qnid_isolation");
    fs::create_directories(out.path);
    // work on copies of the raw CSVs so we can delete them
    const std::string train_copy = (out.path / "train.csv").string();
    const std::string test_copy = (out.path / "test.csv").string();
    fs::copy_file(kTrainCsv, train_copy);
    fs::copy_file(kTestCsv, test_copy);

    ExperimentConfig cfg = test_config(out.str() + "/run");
    cfg.train_csv = train_copy;
    cfg.test_csv = test_copy;
    cmd_preprocess(cfg);

    fs::remove(train_copy);
    fs::remove(test_copy);
    ModelOutcome outcome = cmd_quantum(cfg); // must not touch the raw files
    CHECK(outcome.ok);
}

TEST_CASE("report with partial outputs and with none") {
    TempOut out("qnid_partial");
    ExperimentConfig cfg = test_config(out.str());
    CHECK_THROWS_AS(cmd_report(cfg), data_error);

    cmd_preprocess(cfg);
    cmd_baseline(cfg);
    ComparisonResult r = cmd_report(cfg);
    CHECK(r.rows == 3);
    CHECK(r.missing.size() == 4);
    CHECK(r.text.find("absent experiments") != std::string::npos);
}

TEST_CASE("rerun with the same master seed is bit-identical") {
    TempOut a("qnid_det_a");
    TempOut b("qnid_det_b");
    for (const auto* dir : {&a, &b}) {
        ExperimentConfig cfg = test_config(dir->str());
        cmd_preprocess(cfg);
        cmd_small_sample(cfg);
        cmd_quantum(cfg);
        cmd_report(cfg);
    }
    for (const char* rel :
         {"preprocess/train_features.csv", "small_sample/subset_features.csv",
          "quantum/train_embeddings.csv", "quantum/test_embeddings.csv", "quantum/weights.txt",
          "quantum/quantum_svm_report.kv", "report/comparison.kv"}) {
        CHECK_MESSAGE(slurp(a.str() + "/" + rel) == slurp(b.str() + "/" + rel),
                      "differs: " << rel);
    }
}
