#include "alkit/knn.hpp"

#include <algorithm>
#include <stdexcept>

namespace alkit {

KnnClassifier::KnnClassifier(int num_classes, int k) : num_classes_(num_classes), k_(k) {
    if (num_classes < 2) throw std::invalid_argument("KnnClassifier: need at least 2 classes");
    if (k < 1) throw std::invalid_argument("KnnClassifier: k must be positive");
}

void KnnClassifier::fit(const Matrix& features, const std::vector<int>& labels) {
    const int seen = check_training_data(features, labels);
    if (seen > num_classes_)
        throw std::invalid_argument("KnnClassifier: label exceeds declared class count");
    train_features_ = features;
    train_labels_ = labels;
    trained_ = true;
}

Matrix KnnClassifier::predict_proba(const Matrix& features) const {
    if (!trained_) throw std::logic_error("KnnClassifier: predict before fit");
    if (features.cols() != train_features_.cols())
        throw std::invalid_argument("KnnClassifier: feature dimension mismatch");
    const auto train_size = train_features_.rows();
    if (k_ > train_size)
        throw std::invalid_argument("KnnClassifier: k exceeds training set size");

    Matrix probs(features.rows(), num_classes_);
    std::vector<std::pair<double, int>> by_distance(static_cast<std::size_t>(train_size));
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        for (Eigen::Index j = 0; j < train_size; ++j) {
            const double d2 = (features.row(i) - train_features_.row(j)).squaredNorm();
            by_distance[static_cast<std::size_t>(j)] = {d2, static_cast<int>(j)};
        }
        std::sort(by_distance.begin(), by_distance.end());
        std::vector<int> votes(static_cast<std::size_t>(num_classes_), 0);
        for (int v = 0; v < k_; ++v)
            ++votes[static_cast<std::size_t>(
                train_labels_[static_cast<std::size_t>(by_distance[static_cast<std::size_t>(v)].second)])];
        for (int c = 0; c < num_classes_; ++c)
            probs(i, c) = (votes[static_cast<std::size_t>(c)] + 1.0) /
                          (static_cast<double>(k_) + num_classes_);
    }
    return probs;
}

std::unique_ptr<Classifier> KnnClassifier::clone() const {
    return std::make_unique<KnnClassifier>(*this);
}

}  // namespace alkit
