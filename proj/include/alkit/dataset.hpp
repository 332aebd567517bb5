#ifndef ALKIT_DATASET_HPP
#define ALKIT_DATASET_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace alkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A classification dataset: n x d feature matrix and integer labels
// re-encoded to 0..C-1. Instance names are optional and, when present,
// unique; they allow splits to be specified by name.
struct Dataset {
    Matrix features;                  // n x d
    std::vector<int> labels;          // values in [0, C)
    int num_classes = 0;
    std::vector<std::string> names;   // empty or size n

    int n() const { return static_cast<int>(features.rows()); }
    int d() const { return static_cast<int>(features.cols()); }
    bool has_names() const { return !names.empty(); }

    // Throws std::invalid_argument if any invariant is violated.
    void validate() const;
};

struct CsvOptions {
    int label_column = -1;               // -1 selects the last column
    bool has_header = false;
    std::optional<int> name_column;      // string column, excluded from features
};

// Reads a comma-separated numeric file. Original label values are
// re-encoded to contiguous 0..C-1 preserving their numeric order.
// Throws on missing file, ragged rows, non-numeric cells and
// single-class data.
Dataset load_dataset(const std::string& path, const CsvOptions& options = {});

// Same, from an in-memory string (used by tests).
Dataset parse_csv(const std::string& text, const CsvOptions& options = {});

// Rows of `features` at the given positions, stacked in order.
Matrix rows_of(const Matrix& features, const std::vector<int>& indices);

// labels[i] for each index, in order.
std::vector<int> labels_of(const std::vector<int>& labels, const std::vector<int>& indices);

}  // namespace alkit

#endif  // ALKIT_DATASET_HPP
