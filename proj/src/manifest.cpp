#include "qnid/manifest.hpp"

#include "qnid/errors.hpp"
#include "qnid/util.hpp"

#include <fstream>

namespace qnid {

const std::string* RunManifest::find(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

void RunManifest::record_artifact(const std::string& out_dir, const std::string& relpath) {
    entries_["artifact." + relpath] = hex64(fnv1a64_file(out_dir + "/" + relpath));
}

void RunManifest::record_input(const std::string& path) {
    entries_["input." + path] = hex64(fnv1a64_file(path));
}

std::map<std::string, std::string> RunManifest::artifact_digests() const {
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : entries_) {
        if (key.starts_with("artifact.")) out.emplace(key.substr(9), value);
    }
    return out;
}

void RunManifest::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write manifest: " + path);
    for (const auto& [key, value] : entries_) f << key << "=" << value << "\n";
}

RunManifest RunManifest::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open manifest: " + path);
    RunManifest m;
    std::string line;
    while (std::getline(f, line)) {
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;
        std::size_t eq = v.find('=');
        if (eq == std::string_view::npos) {
            throw data_error(path + ": malformed manifest line '" + line + "'");
        }
        m.entries_[std::string(v.substr(0, eq))] = std::string(v.substr(eq + 1));
    }
    return m;
}

std::vector<std::string> RunManifest::verify(const std::string& out_dir) const {
    std::vector<std::string> bad;
    for (const auto& [relpath, digest] : artifact_digests()) {
        std::string actual;
        try {
            actual = hex64(fnv1a64_file(out_dir + "/" + relpath));
        } catch (const data_error&) {
            bad.push_back(relpath + " (missing)");
            continue;
        }
        if (actual != digest) bad.push_back(relpath + " (digest mismatch)");
    }
    return bad;
}

} // namespace qnid
