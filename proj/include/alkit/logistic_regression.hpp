#ifndef ALKIT_LOGISTIC_REGRESSION_HPP
#define ALKIT_LOGISTIC_REGRESSION_HPP

#include <memory>
#include <vector>

#include "alkit/model.hpp"

namespace alkit {

// Multinomial (softmax) logistic regression trained by full-batch
// gradient descent with backtracking line search. Weights start at
// zero and the search is deterministic, so refitting the same data
// reproduces the same weights bit for bit.
//
// Loss: mean softmax cross-entropy plus (l2/2) * ||W||^2 where the
// bias column is not regularized.
class LogisticRegression final : public Classifier {
public:
    struct Params {
        double l2 = 0.01;
        int max_iter = 500;
        double tol = 1e-6;
    };

    explicit LogisticRegression(int num_classes) : LogisticRegression(num_classes, Params{}) {}
    LogisticRegression(int num_classes, Params params);

    void fit(const Matrix& features, const std::vector<int>& labels) override;
    Matrix predict_proba(const Matrix& features) const override;
    std::unique_ptr<Classifier> clone() const override;
    bool is_trained() const override { return trained_; }

    // Weight matrix C x (d+1); the last column is the bias.
    const Matrix& weights() const;
    int num_classes() const { return num_classes_; }

    // Loss and gradient at an arbitrary weight point, exposed for
    // finite-difference verification.
    static double loss(const Matrix& weights, const Matrix& features,
                       const std::vector<int>& labels, double l2);
    static Matrix gradient(const Matrix& weights, const Matrix& features,
                           const std::vector<int>& labels, double l2);

private:
    int num_classes_;
    Params params_;
    Matrix weights_;  // C x (d+1)
    bool trained_ = false;
};

}  // namespace alkit

#endif  // ALKIT_LOGISTIC_REGRESSION_HPP
