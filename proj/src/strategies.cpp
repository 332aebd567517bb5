#include "alkit/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "alkit/random.hpp"

namespace alkit {

namespace {

constexpr int kMaxBootstrapTries = 100;

double entropy_nats(const double* p, int c) {
    double h = 0.0;
    for (int i = 0; i < c; ++i)
        if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
    return h;
}

void require_pool(const std::vector<int>& pool) {
    if (pool.empty()) throw std::invalid_argument("strategy: empty pool");
}

}  // namespace

StrategyKind strategy_from_name(const std::string& name) {
    if (name == "uncertainty") return StrategyKind::uncertainty;
    if (name == "random") return StrategyKind::random;
    if (name == "qbc") return StrategyKind::qbc;
    if (name == "eer") return StrategyKind::eer;
    if (name == "graph_density") return StrategyKind::graph_density;
    if (name == "cost_performance") return StrategyKind::cost_performance;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::uncertainty: return "uncertainty";
        case StrategyKind::random: return "random";
        case StrategyKind::qbc: return "qbc";
        case StrategyKind::eer: return "eer";
        case StrategyKind::graph_density: return "graph_density";
        case StrategyKind::cost_performance: return "cost_performance";
    }
    throw std::logic_error("unreachable");
}

UncertaintyMeasure measure_from_name(const std::string& name) {
    if (name == "least_confident") return UncertaintyMeasure::least_confident;
    if (name == "margin") return UncertaintyMeasure::margin;
    if (name == "entropy") return UncertaintyMeasure::entropy;
    throw std::invalid_argument("unknown uncertainty measure '" + name + "'");
}

Disagreement disagreement_from_name(const std::string& name) {
    if (name == "vote_entropy") return Disagreement::vote_entropy;
    if (name == "kl_divergence") return Disagreement::kl_divergence;
    throw std::invalid_argument("unknown disagreement '" + name + "'");
}

std::string measure_name(UncertaintyMeasure measure) {
    switch (measure) {
        case UncertaintyMeasure::least_confident: return "least_confident";
        case UncertaintyMeasure::margin: return "margin";
        case UncertaintyMeasure::entropy: return "entropy";
    }
    throw std::logic_error("unreachable");
}

std::string disagreement_name(Disagreement disagreement) {
    return disagreement == Disagreement::vote_entropy ? "vote_entropy" : "kl_divergence";
}

void StrategyConfig::validate(int batch_size) const {
    if (batch_size < 1) throw std::invalid_argument("strategy: batch_size must be >= 1");
    if (committee_size < 2) throw std::invalid_argument("strategy: committee_size must be >= 2");
    if (subsample_cap != 0 && subsample_cap < batch_size)
        throw std::invalid_argument("strategy: subsample_cap must be 0 or >= batch_size");
    if (rbf_gamma < 0.0) throw std::invalid_argument("strategy: rbf_gamma must be >= 0");
    if (knn_k < 1) throw std::invalid_argument("strategy: knn_k must be >= 1");
}

std::vector<int> top_k(const std::vector<double>& scores, int batch_size) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[static_cast<std::size_t>(a)] >
                                                scores[static_cast<std::size_t>(b)]; });
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(std::max(batch_size, 0)),
                                            order.size());
    order.resize(take);
    return order;
}

std::vector<double> uncertainty_scores(const Matrix& probs, UncertaintyMeasure measure) {
    const auto rows = probs.rows();
    const auto cols = probs.cols();
    std::vector<double> scores(static_cast<std::size_t>(rows));
    std::vector<double> row(static_cast<std::size_t>(cols));
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index c = 0; c < cols; ++c) row[static_cast<std::size_t>(c)] = probs(i, c);
        double s = 0.0;
        switch (measure) {
            case UncertaintyMeasure::least_confident:
                s = 1.0 - *std::max_element(row.begin(), row.end());
                break;
            case UncertaintyMeasure::margin: {
                double first = -1.0, second = -1.0;
                for (double p : row) {
                    if (p > first) {
                        second = first;
                        first = p;
                    } else if (p > second) {
                        second = p;
                    }
                }
                s = -(first - second);
                break;
            }
            case UncertaintyMeasure::entropy:
                s = entropy_nats(row.data(), static_cast<int>(cols));
                break;
        }
        scores[static_cast<std::size_t>(i)] = s;
    }
    return scores;
}

std::vector<int> uncertainty_select(const Matrix& probs, UncertaintyMeasure measure,
                                    int batch_size) {
    if (probs.rows() == 0) throw std::invalid_argument("strategy: empty pool");
    return top_k(uncertainty_scores(probs, measure), batch_size);
}

std::vector<int> random_select(const std::vector<int>& pool, int batch_size,
                               std::uint64_t seed) {
    require_pool(pool);
    Rng rng(seed);
    return sample_without_replacement(pool, static_cast<std::size_t>(std::max(batch_size, 0)),
                                      rng);
}

std::vector<double> vote_entropy_scores(const std::vector<std::vector<int>>& votes,
                                        int num_classes) {
    if (votes.empty()) throw std::invalid_argument("vote_entropy: no committee votes");
    const std::size_t pool_size = votes.front().size();
    const double m = static_cast<double>(votes.size());
    std::vector<double> scores(pool_size, 0.0);
    std::vector<int> counts(static_cast<std::size_t>(num_classes));
    for (std::size_t i = 0; i < pool_size; ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& member : votes) {
            if (member.size() != pool_size)
                throw std::invalid_argument("vote_entropy: ragged vote matrix");
            ++counts[static_cast<std::size_t>(member[i])];
        }
        double h = 0.0;
        for (int c = 0; c < num_classes; ++c) {
            const double frac = counts[static_cast<std::size_t>(c)] / m;
            if (frac > 0.0) h -= frac * std::log(frac);
        }
        scores[i] = h;
    }
    return scores;
}

std::vector<double> kl_disagreement_scores(const std::vector<Matrix>& member_probs) {
    if (member_probs.empty()) throw std::invalid_argument("kl: no committee members");
    const auto rows = member_probs.front().rows();
    const auto cols = member_probs.front().cols();
    Matrix consensus = Matrix::Zero(rows, cols);
    for (const auto& p : member_probs) {
        if (p.rows() != rows || p.cols() != cols)
            throw std::invalid_argument("kl: member probability shapes differ");
        consensus += p;
    }
    consensus /= static_cast<double>(member_probs.size());

    std::vector<double> scores(static_cast<std::size_t>(rows), 0.0);
    for (Eigen::Index i = 0; i < rows; ++i) {
        double total = 0.0;
        for (const auto& p : member_probs) {
            for (Eigen::Index c = 0; c < cols; ++c) {
                const double pc = p(i, c);
                if (pc > 0.0) total += pc * std::log(pc / consensus(i, c));
            }
        }
        scores[static_cast<std::size_t>(i)] = total / static_cast<double>(member_probs.size());
    }
    return scores;
}

std::vector<int> qbc_select(const QueryContext& ctx, int committee_size,
                            Disagreement disagreement) {
    require_pool(ctx.pool);
    if (committee_size < 2) throw std::invalid_argument("qbc: committee_size must be >= 2");
    if (ctx.model == nullptr) throw std::invalid_argument("qbc: model required");
    const std::size_t labeled_size = ctx.labeled.size();
    if (labeled_size == 0) throw std::invalid_argument("qbc: empty labeled set");

    const Matrix pool_features = rows_of(ctx.features, ctx.pool);
    std::vector<Matrix> member_probs;
    std::vector<std::vector<int>> member_votes;
    member_probs.reserve(static_cast<std::size_t>(committee_size));

    for (int member = 0; member < committee_size; ++member) {
        Rng rng(derive_seed(ctx.seed, SeedStream::committee, static_cast<std::uint64_t>(member)));
        std::vector<int> resample(labeled_size);
        bool ok = false;
        for (int attempt = 0; attempt < kMaxBootstrapTries && !ok; ++attempt) {
            std::set<int> classes;
            for (std::size_t i = 0; i < labeled_size; ++i) {
                resample[i] = ctx.labeled[static_cast<std::size_t>(rng.next_below(labeled_size))];
                classes.insert(ctx.known_labels[static_cast<std::size_t>(resample[i])]);
            }
            ok = classes.size() >= 2;
        }
        if (!ok)
            throw std::runtime_error("qbc: bootstrap cannot produce two classes after " +
                                     std::to_string(kMaxBootstrapTries) + " tries");

        auto learner = ctx.model->clone();
        learner->fit(rows_of(ctx.features, resample), labels_of(ctx.known_labels, resample));
        Matrix probs = learner->predict_proba(pool_features);
        if (disagreement == Disagreement::vote_entropy) {
            std::vector<int> votes(static_cast<std::size_t>(probs.rows()));
            for (Eigen::Index i = 0; i < probs.rows(); ++i)
                votes[static_cast<std::size_t>(i)] = argmax_row(probs, i);
            member_votes.push_back(std::move(votes));
        } else {
            member_probs.push_back(std::move(probs));
        }
    }

    const std::vector<double> scores = disagreement == Disagreement::vote_entropy
                                           ? vote_entropy_scores(member_votes, ctx.num_classes)
                                           : kl_disagreement_scores(member_probs);
    return top_k(scores, ctx.batch_size);
}

std::vector<double> eer_risks(const QueryContext& ctx) {
    require_pool(ctx.pool);
    if (ctx.model == nullptr || !ctx.model->is_trained())
        throw std::invalid_argument("eer: trained model required");

    const Matrix pool_features = rows_of(ctx.features, ctx.pool);
    const Matrix current_probs = ctx.model->predict_proba(pool_features);
    const int num_classes = static_cast<int>(current_probs.cols());
    const std::size_t pool_size = ctx.pool.size();

    // Training set template: labeled block plus one hypothetical row.
    Matrix train(static_cast<Eigen::Index>(ctx.labeled.size()) + 1, ctx.features.cols());
    std::vector<int> train_labels(ctx.labeled.size() + 1);
    for (std::size_t i = 0; i < ctx.labeled.size(); ++i) {
        train.row(static_cast<Eigen::Index>(i)) = ctx.features.row(ctx.labeled[i]);
        train_labels[i] = ctx.known_labels[static_cast<std::size_t>(ctx.labeled[i])];
    }

    std::vector<double> risks(pool_size, 0.0);
    for (std::size_t cand = 0; cand < pool_size; ++cand) {
        train.row(train.rows() - 1) = pool_features.row(static_cast<Eigen::Index>(cand));
        double risk = 0.0;
        for (int label = 0; label < num_classes; ++label) {
            train_labels.back() = label;
            auto retrained = ctx.model->clone();
            retrained->fit(train, train_labels);
            const Matrix probs = retrained->predict_proba(pool_features);
            double expected_error = 0.0;
            for (std::size_t u = 0; u < pool_size; ++u) {
                if (u == cand) continue;
                expected_error += 1.0 - probs.row(static_cast<Eigen::Index>(u)).maxCoeff();
            }
            risk += current_probs(static_cast<Eigen::Index>(cand), label) * expected_error;
        }
        risks[cand] = risk;
    }
    return risks;
}

std::vector<int> eer_select(const QueryContext& ctx) {
    std::vector<double> scores = eer_risks(ctx);
    for (double& s : scores) s = -s;  // ascending risk
    return top_k(scores, ctx.batch_size);
}

std::vector<double> graph_densities(const Matrix& pool_features, int knn_k, double gamma) {
    if (pool_features.rows() == 0) throw std::invalid_argument("graph_density: empty pool");
    if (gamma <= 0.0) throw std::invalid_argument("graph_density: gamma must be positive");
    if (knn_k < 1) throw std::invalid_argument("graph_density: knn_k must be >= 1");
    const auto m = pool_features.rows();
    const int k_eff = std::min<int>(knn_k, static_cast<int>(m) - 1);
    std::vector<double> density(static_cast<std::size_t>(m), 0.0);
    if (k_eff < 1) return density;  // single point

    std::vector<std::pair<double, int>> by_distance(static_cast<std::size_t>(m) - 1);
    for (Eigen::Index i = 0; i < m; ++i) {
        std::size_t w = 0;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (j == i) continue;
            const double d2 = (pool_features.row(i) - pool_features.row(j)).squaredNorm();
            by_distance[w++] = {d2, static_cast<int>(j)};
        }
        std::sort(by_distance.begin(), by_distance.end());
        double sum = 0.0;
        for (int nb = 0; nb < k_eff; ++nb)
            sum += std::exp(-gamma * by_distance[static_cast<std::size_t>(nb)].first);
        density[static_cast<std::size_t>(i)] = sum / k_eff;
    }
    return density;
}

std::vector<int> graph_density_select(const Matrix& pool_features, int knn_k, double gamma,
                                      int batch_size) {
    if (pool_features.rows() == 0) throw std::invalid_argument("graph_density: empty pool");
    if (gamma <= 0.0) throw std::invalid_argument("graph_density: gamma must be positive");
    const auto m = pool_features.rows();
    const int k_eff = std::min<int>(knn_k, static_cast<int>(m) - 1);
    std::vector<double> density = graph_densities(pool_features, knn_k, gamma);

    // Neighbour lists and pairwise similarities for the discount step.
    std::vector<std::vector<int>> neighbours(static_cast<std::size_t>(m));
    if (k_eff >= 1) {
        std::vector<std::pair<double, int>> by_distance(static_cast<std::size_t>(m) - 1);
        for (Eigen::Index i = 0; i < m; ++i) {
            std::size_t w = 0;
            for (Eigen::Index j = 0; j < m; ++j) {
                if (j == i) continue;
                by_distance[w++] = {(pool_features.row(i) - pool_features.row(j)).squaredNorm(),
                                    static_cast<int>(j)};
            }
            std::sort(by_distance.begin(), by_distance.end());
            for (int nb = 0; nb < k_eff; ++nb)
                neighbours[static_cast<std::size_t>(i)].push_back(
                    by_distance[static_cast<std::size_t>(nb)].second);
        }
    }
    auto similarity = [&](int a, int b) {
        return std::exp(-gamma * (pool_features.row(a) - pool_features.row(b)).squaredNorm());
    };

    const int take = std::min<int>(batch_size, static_cast<int>(m));
    std::vector<bool> picked(static_cast<std::size_t>(m), false);
    std::vector<int> selected;
    selected.reserve(static_cast<std::size_t>(take));
    for (int step = 0; step < take; ++step) {
        int best = -1;
        for (int i = 0; i < static_cast<int>(m); ++i) {
            if (picked[static_cast<std::size_t>(i)]) continue;
            if (best < 0 || density[static_cast<std::size_t>(i)] >
                                density[static_cast<std::size_t>(best)])
                best = i;
        }
        picked[static_cast<std::size_t>(best)] = true;
        selected.push_back(best);
        if (k_eff >= 1) {
            for (int j = 0; j < static_cast<int>(m); ++j) {
                if (picked[static_cast<std::size_t>(j)]) continue;
                const auto& nb = neighbours[static_cast<std::size_t>(j)];
                if (std::find(nb.begin(), nb.end(), best) != nb.end())
                    density[static_cast<std::size_t>(j)] -=
                        similarity(best, j) / static_cast<double>(nb.size());
            }
        }
    }
    return selected;
}

std::vector<int> cost_performance_select(const Matrix& probs, const std::vector<double>& costs,
                                         int batch_size) {
    if (probs.rows() == 0) throw std::invalid_argument("cost_performance: empty pool");
    if (static_cast<std::size_t>(probs.rows()) != costs.size())
        throw std::invalid_argument("cost_performance: probs and costs length mismatch");
    for (double c : costs)
        if (!(c > 0.0)) throw std::invalid_argument("cost_performance: costs must be positive");
    std::vector<double> scores = uncertainty_scores(probs, UncertaintyMeasure::entropy);
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i] /= costs[i];
    return top_k(scores, batch_size);
}

IndexCollection subsample_pool(const IndexCollection& unlabeled, int cap, std::uint64_t seed) {
    if (cap < 0) throw std::invalid_argument("subsample_pool: cap must be >= 0");
    if (cap == 0 || unlabeled.size() <= static_cast<std::size_t>(cap)) return unlabeled;
    return random_sample(unlabeled, static_cast<std::size_t>(cap), seed);
}

std::vector<int> select_batch(const StrategyConfig& config, const QueryContext& ctx) {
    require_pool(ctx.pool);
    config.validate(ctx.batch_size);
    const int batch = std::min<int>(ctx.batch_size, static_cast<int>(ctx.pool.size()));

    auto to_instances = [&](const std::vector<int>& rows) {
        std::vector<int> out;
        out.reserve(rows.size());
        for (int r : rows) out.push_back(ctx.pool[static_cast<std::size_t>(r)]);
        return out;
    };

    switch (config.name) {
        case StrategyKind::random:
            return random_select(ctx.pool, batch, ctx.seed);
        case StrategyKind::uncertainty: {
            if (ctx.model == nullptr) throw std::invalid_argument("uncertainty: model required");
            const Matrix probs = ctx.model->predict_proba(rows_of(ctx.features, ctx.pool));
            return to_instances(uncertainty_select(probs, config.measure, batch));
        }
        case StrategyKind::qbc: {
            QueryContext c = ctx;
            c.batch_size = batch;
            return to_instances(qbc_select(c, config.committee_size, config.disagreement));
        }
        case StrategyKind::eer: {
            QueryContext c = ctx;
            c.batch_size = batch;
            return to_instances(eer_select(c));
        }
        case StrategyKind::graph_density: {
            const double gamma = config.rbf_gamma > 0.0
                                     ? config.rbf_gamma
                                     : 1.0 / static_cast<double>(ctx.features.cols());
            const Matrix pool_features = rows_of(ctx.features, ctx.pool);
            return to_instances(
                graph_density_select(pool_features, config.knn_k, gamma, batch));
        }
        case StrategyKind::cost_performance: {
            if (ctx.model == nullptr)
                throw std::invalid_argument("cost_performance: model required");
            if (ctx.pool_costs == nullptr)
                throw std::invalid_argument("cost_performance: per-instance costs required");
            const Matrix probs = ctx.model->predict_proba(rows_of(ctx.features, ctx.pool));
            return to_instances(cost_performance_select(probs, *ctx.pool_costs, batch));
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace alkit
