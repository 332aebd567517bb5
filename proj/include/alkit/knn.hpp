#ifndef ALKIT_KNN_HPP
#define ALKIT_KNN_HPP

#include <memory>
#include <vector>

#include "alkit/model.hpp"

namespace alkit {

// k-nearest-neighbour classifier with Laplace-smoothed class
// probabilities: p(c) = (votes_c + 1) / (k + C). Distance ties are
// broken towards the smaller training index.
class KnnClassifier final : public Classifier {
public:
    explicit KnnClassifier(int num_classes, int k = 5);

    void fit(const Matrix& features, const std::vector<int>& labels) override;
    Matrix predict_proba(const Matrix& features) const override;
    std::unique_ptr<Classifier> clone() const override;
    bool is_trained() const override { return trained_; }

    int k() const { return k_; }

private:
    int num_classes_;
    int k_;
    Matrix train_features_;
    std::vector<int> train_labels_;
    bool trained_ = false;
};

}  // namespace alkit

#endif  // ALKIT_KNN_HPP
