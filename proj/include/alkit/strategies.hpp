#ifndef ALKIT_STRATEGIES_HPP
#define ALKIT_STRATEGIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "alkit/dataset.hpp"
#include "alkit/index_collection.hpp"
#include "alkit/model.hpp"

namespace alkit {

enum class StrategyKind { uncertainty, random, qbc, eer, graph_density, cost_performance };
enum class UncertaintyMeasure { least_confident, margin, entropy };
enum class Disagreement { vote_entropy, kl_divergence };

StrategyKind strategy_from_name(const std::string& name);
std::string strategy_name(StrategyKind kind);
UncertaintyMeasure measure_from_name(const std::string& name);
std::string measure_name(UncertaintyMeasure measure);
Disagreement disagreement_from_name(const std::string& name);
std::string disagreement_name(Disagreement disagreement);

struct StrategyConfig {
    StrategyKind name = StrategyKind::uncertainty;
    UncertaintyMeasure measure = UncertaintyMeasure::entropy;
    int committee_size = 5;
    Disagreement disagreement = Disagreement::vote_entropy;
    int subsample_cap = 0;   // 0 disables pool subsampling
    double rbf_gamma = 0.0;  // 0 means 1/d
    int knn_k = 10;          // graph-density neighbourhood size, clamped to |pool|-1

    void validate(int batch_size) const;
};

// Everything a strategy may look at when selecting a batch. `pool` is
// the candidate set (already subsampled when a cap is active);
// known_labels has length n and is only meaningful at labeled
// positions. `model` is trained on the current labeled set; retraining
// strategies clone it.
struct QueryContext {
    const Matrix& features;
    const std::vector<int>& labeled;
    const std::vector<int>& pool;
    const std::vector<int>& known_labels;
    int num_classes = 2;
    const Classifier* model = nullptr;
    int batch_size = 1;
    std::uint64_t seed = 0;
    const std::vector<double>* pool_costs = nullptr;  // cost_performance only
};

// Uniform entry point used by the experiment loop. Returns
// min(batch_size, |pool|) distinct members of the pool, deterministic
// for a given seed.
std::vector<int> select_batch(const StrategyConfig& config, const QueryContext& ctx);

// --- building blocks, exposed for direct use and testing ---

// Indices of the batch_size largest scores, ties to the smaller index.
std::vector<int> top_k(const std::vector<double>& scores, int batch_size);

// Per-row informativeness of a row-stochastic matrix.
std::vector<double> uncertainty_scores(const Matrix& probs, UncertaintyMeasure measure);

// Positions (pool rows) of the batch_size most uncertain rows.
std::vector<int> uncertainty_select(const Matrix& probs, UncertaintyMeasure measure,
                                    int batch_size);

// Uniform sample without replacement from the pool.
std::vector<int> random_select(const std::vector<int>& pool, int batch_size,
                               std::uint64_t seed);

// Hard-vote entropy per pool row; votes[member][row] is a class label.
std::vector<double> vote_entropy_scores(const std::vector<std::vector<int>>& votes,
                                        int num_classes);

// Mean KL divergence of each member distribution from the consensus
// (their average); member_probs[member] is pool x C. Zero member
// probabilities contribute zero.
std::vector<double> kl_disagreement_scores(const std::vector<Matrix>& member_probs);

// Query-by-committee over bootstrap resamples of the labeled set.
std::vector<int> qbc_select(const QueryContext& ctx, int committee_size,
                            Disagreement disagreement);

// Expected-error-reduction risk of hypothetically labeling each pool
// member (lower is better).
std::vector<double> eer_risks(const QueryContext& ctx);

// Positions of the batch_size lowest risks, ascending, no
// re-estimation between batch picks.
std::vector<int> eer_select(const QueryContext& ctx);

// Average RBF similarity to the knn_k nearest pool neighbours.
std::vector<double> graph_densities(const Matrix& pool_features, int knn_k, double gamma);

// Density-descending greedy selection with the discount step applied
// after each pick. Returns pool row positions in pick order.
std::vector<int> graph_density_select(const Matrix& pool_features, int knn_k, double gamma,
                                      int batch_size);

// Entropy-per-cost selection; costs must be positive.
std::vector<int> cost_performance_select(const Matrix& probs, const std::vector<double>& costs,
                                         int batch_size);

// Identity when |unlabeled| <= cap, otherwise a uniform subsample of
// size cap. Applied before any strategy when a cap is configured.
IndexCollection subsample_pool(const IndexCollection& unlabeled, int cap, std::uint64_t seed);

}  // namespace alkit

#endif  // ALKIT_STRATEGIES_HPP
