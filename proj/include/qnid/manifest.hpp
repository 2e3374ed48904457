#pragma once

#include <map>
#include <string>
#include <vector>

namespace qnid {

// Run ledger written to <out_dir>/manifest.txt: config snapshot, input file
// digests, one digest per artifact the pipeline wrote, per-stage timings and
// flags. Artifact digests are what end-to-end determinism is checked
// against; timings are informational and excluded from any comparison.
class RunManifest {
  public:
    void set(const std::string& key, const std::string& value) { entries_[key] = value; }
    const std::string* find(const std::string& key) const;

    // hashes <out_dir>/<relpath> and records artifact.<relpath>=<digest>
    void record_artifact(const std::string& out_dir, const std::string& relpath);
    // hashes an input file and records input.<path>=<digest>
    void record_input(const std::string& path);

    std::map<std::string, std::string> artifact_digests() const;

    void save(const std::string& path) const;
    static RunManifest load(const std::string& path);

    // Re-hashes every recorded artifact under out_dir; returns the relpaths
    // that are missing or whose digest changed.
    std::vector<std::string> verify(const std::string& out_dir) const;

  private:
    std::map<std::string, std::string> entries_;
};

} // namespace qnid
