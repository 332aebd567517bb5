#include "alkit/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace alkit {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, std::size_t row, std::size_t col) {
    const std::string t = trim(cell);
    if (t.empty())
        throw std::invalid_argument("csv: empty cell at row " + std::to_string(row) +
                                    ", column " + std::to_string(col));
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw std::invalid_argument("csv: non-numeric cell '" + t + "' at row " +
                                    std::to_string(row) + ", column " + std::to_string(col));
    return v;
}

}  // namespace

void Dataset::validate() const {
    const int size = n();
    if (size < 2) throw std::invalid_argument("dataset: need at least 2 instances");
    if (static_cast<int>(labels.size()) != size)
        throw std::invalid_argument("dataset: labels length does not match feature rows");
    if (num_classes < 2) throw std::invalid_argument("dataset: single-class dataset");
    for (int y : labels)
        if (y < 0 || y >= num_classes)
            throw std::invalid_argument("dataset: label out of range");
    if (!names.empty()) {
        if (static_cast<int>(names.size()) != size)
            throw std::invalid_argument("dataset: names length does not match feature rows");
        std::set<std::string> uniq(names.begin(), names.end());
        if (static_cast<int>(uniq.size()) != size)
            throw std::invalid_argument("dataset: instance names are not unique");
    }
}

Dataset parse_csv(const std::string& text, const CsvOptions& options) {
    std::vector<std::vector<std::string>> rows;
    {
        std::stringstream ss(text);
        std::string line;
        while (std::getline(ss, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty()) continue;
            rows.push_back(split_line(line));
        }
    }
    if (options.has_header && !rows.empty()) rows.erase(rows.begin());
    if (rows.size() < 2) throw std::invalid_argument("csv: need at least 2 data rows");

    const std::size_t width = rows[0].size();
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].size() != width)
            throw std::invalid_argument("csv: ragged row " + std::to_string(r) + " (expected " +
                                        std::to_string(width) + " cells, got " +
                                        std::to_string(rows[r].size()) + ")");

    const int label_col =
        options.label_column < 0 ? static_cast<int>(width) - 1 : options.label_column;
    if (label_col < 0 || label_col >= static_cast<int>(width))
        throw std::invalid_argument("csv: label column out of range");
    if (options.name_column) {
        const int nc = *options.name_column;
        if (nc < 0 || nc >= static_cast<int>(width))
            throw std::invalid_argument("csv: name column out of range");
        if (nc == label_col)
            throw std::invalid_argument("csv: name column equals label column");
    }

    std::vector<int> feature_cols;
    for (int c = 0; c < static_cast<int>(width); ++c) {
        if (c == label_col) continue;
        if (options.name_column && c == *options.name_column) continue;
        feature_cols.push_back(c);
    }
    if (feature_cols.empty()) throw std::invalid_argument("csv: no feature columns");

    Dataset ds;
    const auto n = static_cast<Eigen::Index>(rows.size());
    ds.features.resize(n, static_cast<Eigen::Index>(feature_cols.size()));
    std::vector<double> raw_labels(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < feature_cols.size(); ++j)
            ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
                parse_number(rows[r][static_cast<std::size_t>(feature_cols[j])], r,
                             static_cast<std::size_t>(feature_cols[j]));
        const double y = parse_number(rows[r][static_cast<std::size_t>(label_col)], r,
                                      static_cast<std::size_t>(label_col));
        if (y != std::floor(y))
            throw std::invalid_argument("csv: label at row " + std::to_string(r) +
                                        " is not integer-valued");
        raw_labels[r] = y;
        if (options.name_column)
            ds.names.push_back(trim(rows[r][static_cast<std::size_t>(*options.name_column)]));
    }

    // Re-encode labels to 0..C-1 preserving the numeric order of the
    // original values.
    std::map<double, int> encoding;
    for (double y : raw_labels) encoding.emplace(y, 0);
    if (encoding.size() < 2) throw std::invalid_argument("csv: single-class dataset");
    int next = 0;
    for (auto& [value, code] : encoding) code = next++;
    ds.labels.reserve(raw_labels.size());
    for (double y : raw_labels) ds.labels.push_back(encoding.at(y));
    ds.num_classes = next;
    ds.validate();
    return ds;
}

Dataset load_dataset(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("csv: cannot open file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), options);
}

Matrix rows_of(const Matrix& features, const std::vector<int>& indices) {
    Matrix out(static_cast<Eigen::Index>(indices.size()), features.cols());
    for (std::size_t i = 0; i < indices.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = features.row(indices[i]);
    return out;
}

std::vector<int> labels_of(const std::vector<int>& labels, const std::vector<int>& indices) {
    std::vector<int> out;
    out.reserve(indices.size());
    for (int idx : indices) out.push_back(labels[static_cast<std::size_t>(idx)]);
    return out;
}

}  // namespace alkit
