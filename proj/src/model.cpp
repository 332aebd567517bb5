#include "alkit/model.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace alkit {

int argmax_row(const Matrix& probs, Eigen::Index row) {
    int best = 0;
    double best_value = probs(row, 0);
    for (Eigen::Index c = 1; c < probs.cols(); ++c) {
        if (probs(row, c) > best_value) {
            best_value = probs(row, c);
            best = static_cast<int>(c);
        }
    }
    return best;
}

std::vector<int> Classifier::predict(const Matrix& features) const {
    const Matrix probs = predict_proba(features);
    std::vector<int> out(static_cast<std::size_t>(probs.rows()));
    for (Eigen::Index i = 0; i < probs.rows(); ++i)
        out[static_cast<std::size_t>(i)] = argmax_row(probs, i);
    return out;
}

int Classifier::check_training_data(const Matrix& features, const std::vector<int>& labels) {
    if (features.rows() == 0) throw std::invalid_argument("fit: empty training set");
    if (static_cast<std::size_t>(features.rows()) != labels.size())
        throw std::invalid_argument("fit: features and labels length mismatch");
    if (!features.allFinite()) throw std::invalid_argument("fit: non-finite feature value");
    std::set<int> classes;
    int max_label = 0;
    for (int y : labels) {
        if (y < 0) throw std::invalid_argument("fit: negative label");
        classes.insert(y);
        max_label = std::max(max_label, y);
    }
    if (classes.size() < 2) throw std::invalid_argument("fit: single class in training data");
    return max_label + 1;
}

}  // namespace alkit
