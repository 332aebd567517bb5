#ifndef ALKIT_MODEL_HPP
#define ALKIT_MODEL_HPP

#include <memory>
#include <vector>

#include "alkit/dataset.hpp"

namespace alkit {

// Contract shared by every base learner. predict_proba returns a
// row-stochastic matrix (rows sum to 1, entries >= 0) and predict is
// the row argmax with ties resolved to the smallest class.
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual void fit(const Matrix& features, const std::vector<int>& labels) = 0;
    virtual Matrix predict_proba(const Matrix& features) const = 0;
    virtual std::unique_ptr<Classifier> clone() const = 0;
    virtual bool is_trained() const = 0;

    std::vector<int> predict(const Matrix& features) const;

protected:
    // Shared fit-time validation: >= 2 classes, finite features,
    // labels in range.
    static int check_training_data(const Matrix& features, const std::vector<int>& labels);
};

// Row argmax, ties to the smallest class.
int argmax_row(const Matrix& probs, Eigen::Index row);

}  // namespace alkit

#endif  // ALKIT_MODEL_HPP
