#include "qnid/flow.hpp"

#include "qnid/errors.hpp"
#include "qnid/util.hpp"

#include <fstream>
#include <unordered_map>

namespace qnid {

namespace {

// standard CSV field split honoring double-quote escaping ("" inside quotes)
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    out.push_back(std::move(cell));
    return out;
}

std::string row_ctx(const std::string& col, std::size_t data_row) {
    return "column '" + col + "', data row " + std::to_string(data_row);
}

} // namespace

std::vector<FlowRecord> load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open CSV file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw data_error(path + ": file is empty");

    auto header = split_csv_row(line);
    std::unordered_map<std::string, std::size_t> col_index;
    for (std::size_t i = 0; i < header.size(); ++i) {
        col_index.emplace(std::string(trim(header[i])), i);
    }

    auto column = [&](std::string_view name) -> std::size_t {
        auto it = col_index.find(std::string(name));
        if (it == col_index.end()) {
            throw data_error(path + ": required column '" + std::string(name) +
                             "' missing from header");
        }
        return it->second;
    };

    std::array<std::size_t, 8> feat_col{};
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i) feat_col[i] = column(kFeatureNames[i]);
    const std::size_t label_col = column(kLabelColumn);

    std::vector<FlowRecord> records;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++data_row;
        auto cells = split_csv_row(line);
        if (cells.size() < header.size()) {
            throw data_error(path + ": data row " + std::to_string(data_row) + " has " +
                             std::to_string(cells.size()) + " cells, header has " +
                             std::to_string(header.size()));
        }
        FlowRecord r;
        try {
            r.dur = parse_double(cells[feat_col[0]], row_ctx("dur", data_row));
            if (r.dur < 0.0) throw data_error("negative value (" + row_ctx("dur", data_row) + ")");
            r.proto = std::string(trim(cells[feat_col[1]]));
            r.service = std::string(trim(cells[feat_col[2]]));
            r.state = std::string(trim(cells[feat_col[3]]));
            r.spkts = parse_u64(cells[feat_col[4]], row_ctx("spkts", data_row));
            r.dpkts = parse_u64(cells[feat_col[5]], row_ctx("dpkts", data_row));
            r.sbytes = parse_u64(cells[feat_col[6]], row_ctx("sbytes", data_row));
            r.dbytes = parse_u64(cells[feat_col[7]], row_ctx("dbytes", data_row));
            std::uint64_t label = parse_u64(cells[label_col], row_ctx("label", data_row));
            if (label > 1) {
                throw data_error("label must be 0 or 1 (" + row_ctx("label", data_row) + ")");
            }
            r.label = static_cast<int>(label);
        } catch (const data_error& e) {
            throw data_error(path + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    if (records.empty()) throw data_error(path + ": no data rows");
    return records;
}

} // namespace qnid
