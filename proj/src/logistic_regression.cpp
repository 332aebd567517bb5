#include "alkit/logistic_regression.hpp"

#include <cmath>
#include <stdexcept>

namespace alkit {

namespace {

Matrix with_bias(const Matrix& features) {
    Matrix out(features.rows(), features.cols() + 1);
    out.leftCols(features.cols()) = features;
    out.col(features.cols()).setOnes();
    return out;
}

// Row-wise softmax of logits, shifted by the row max.
Matrix softmax_rows(const Matrix& logits) {
    Matrix probs(logits.rows(), logits.cols());
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double m = logits.row(i).maxCoeff();
        double z = 0.0;
        for (Eigen::Index c = 0; c < logits.cols(); ++c) {
            probs(i, c) = std::exp(logits(i, c) - m);
            z += probs(i, c);
        }
        probs.row(i) /= z;
    }
    return probs;
}

Matrix strip_bias_column(const Matrix& weights) {
    Matrix w = weights;
    w.col(w.cols() - 1).setZero();
    return w;
}

}  // namespace

LogisticRegression::LogisticRegression(int num_classes, Params params)
    : num_classes_(num_classes), params_(params) {
    if (num_classes < 2)
        throw std::invalid_argument("LogisticRegression: need at least 2 classes");
    if (params_.l2 < 0.0) throw std::invalid_argument("LogisticRegression: l2 must be >= 0");
    if (params_.max_iter < 1)
        throw std::invalid_argument("LogisticRegression: max_iter must be positive");
    if (params_.tol <= 0.0) throw std::invalid_argument("LogisticRegression: tol must be > 0");
}

double LogisticRegression::loss(const Matrix& weights, const Matrix& features,
                                const std::vector<int>& labels, double l2) {
    const Matrix x = with_bias(features);
    const Matrix logits = x * weights.transpose();
    const auto n = features.rows();
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = logits.row(i).maxCoeff();
        double z = 0.0;
        for (Eigen::Index c = 0; c < logits.cols(); ++c) z += std::exp(logits(i, c) - m);
        total += -(logits(i, labels[static_cast<std::size_t>(i)]) - m - std::log(z));
    }
    const Matrix w_nobias = strip_bias_column(weights);
    return total / static_cast<double>(n) + 0.5 * l2 * w_nobias.squaredNorm();
}

Matrix LogisticRegression::gradient(const Matrix& weights, const Matrix& features,
                                    const std::vector<int>& labels, double l2) {
    const Matrix x = with_bias(features);
    const auto n = features.rows();
    Matrix probs = softmax_rows(x * weights.transpose());  // n x C
    for (Eigen::Index i = 0; i < n; ++i) probs(i, labels[static_cast<std::size_t>(i)]) -= 1.0;
    Matrix grad = (probs.transpose() * x) / static_cast<double>(n);  // C x (d+1)
    grad += l2 * strip_bias_column(weights);
    return grad;
}

void LogisticRegression::fit(const Matrix& features, const std::vector<int>& labels) {
    const int seen = check_training_data(features, labels);
    if (seen > num_classes_)
        throw std::invalid_argument("LogisticRegression: label exceeds declared class count");

    weights_ = Matrix::Zero(num_classes_, features.cols() + 1);
    double step = 1.0;
    double current_loss = loss(weights_, features, labels, params_.l2);
    for (int iter = 0; iter < params_.max_iter; ++iter) {
        const Matrix grad = gradient(weights_, features, labels, params_.l2);
        const double grad_sq = grad.squaredNorm();
        if (std::sqrt(grad_sq) <= params_.tol) break;

        // Backtracking with Armijo condition; the accepted step is
        // carried to the next iteration (doubled) to avoid re-probing
        // from 1.0 every time.
        step = std::min(step * 2.0, 1e4);
        bool moved = false;
        while (step > 1e-16) {
            const Matrix candidate = weights_ - step * grad;
            const double candidate_loss = loss(candidate, features, labels, params_.l2);
            if (candidate_loss <= current_loss - 1e-4 * step * grad_sq) {
                weights_ = candidate;
                current_loss = candidate_loss;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;  // no descent step representable
    }
    trained_ = true;
}

Matrix LogisticRegression::predict_proba(const Matrix& features) const {
    if (!trained_) throw std::logic_error("LogisticRegression: predict before fit");
    if (features.cols() + 1 != weights_.cols())
        throw std::invalid_argument("LogisticRegression: feature dimension mismatch");
    return softmax_rows(with_bias(features) * weights_.transpose());
}

std::unique_ptr<Classifier> LogisticRegression::clone() const {
    return std::make_unique<LogisticRegression>(*this);
}

const Matrix& LogisticRegression::weights() const {
    if (!trained_) throw std::logic_error("LogisticRegression: weights before fit");
    return weights_;
}

}  // namespace alkit
