#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "alkit/knn.hpp"
#include "alkit/logistic_regression.hpp"
#include "alkit/random.hpp"
#include "alkit/strategies.hpp"
#include "properties.hpp"
#include "testutil.hpp"

using namespace alkit;

namespace {

Matrix rows2(std::initializer_list<std::initializer_list<double>> values) {
    Matrix m(static_cast<Eigen::Index>(values.size()),
             static_cast<Eigen::Index>(values.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : values) {
        Eigen::Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

// Independent expected-error-reduction oracle: the plain double loop
// over (candidate, hypothetical label), written against the definition
// rather than the library structure.
int naive_eer_pick(const Matrix& features, const std::vector<int>& labeled,
                   const std::vector<int>& pool, const std::vector<int>& known_labels,
                   const Classifier& model) {
    const Matrix pool_rows = rows_of(features, pool);
    const Matrix p_cur = model.predict_proba(pool_rows);
    int best = -1;
    double best_risk = 0.0;
    for (std::size_t cand = 0; cand < pool.size(); ++cand) {
        double risk = 0.0;
        for (int label = 0; label < static_cast<int>(p_cur.cols()); ++label) {
            std::vector<int> aug_idx = labeled;
            aug_idx.push_back(pool[cand]);
            std::vector<int> aug_labels;
            for (int i : labeled) aug_labels.push_back(known_labels[static_cast<std::size_t>(i)]);
            aug_labels.push_back(label);
            auto retrained = model.clone();
            retrained->fit(rows_of(features, aug_idx), aug_labels);
            const Matrix p_new = retrained->predict_proba(pool_rows);
            double err = 0.0;
            for (std::size_t u = 0; u < pool.size(); ++u) {
                if (u == cand) continue;
                double mx = 0.0;
                for (Eigen::Index c = 0; c < p_new.cols(); ++c)
                    mx = std::max(mx, p_new(static_cast<Eigen::Index>(u), c));
                err += 1.0 - mx;
            }
            risk += p_cur(static_cast<Eigen::Index>(cand), label) * err;
        }
        if (best < 0 || risk < best_risk) {
            best = static_cast<int>(cand);
            best_risk = risk;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("uncertainty measures score the documented examples") {
    const Matrix probs = rows2({{0.9, 0.1}, {0.6, 0.4}});
    CHECK(uncertainty_select(probs, UncertaintyMeasure::margin, 1) == std::vector<int>{1});
    CHECK(uncertainty_select(probs, UncertaintyMeasure::least_confident, 1) ==
          std::vector<int>{1});

    const Matrix even = rows2({{0.5, 0.5}});
    const auto scores = uncertainty_scores(even, UncertaintyMeasure::entropy);
    CHECK(scores[0] == doctest::Approx(0.693147).epsilon(1e-6));

    // Certain rows score zero entropy; 0 log 0 contributes nothing.
    const Matrix sure = rows2({{1.0, 0.0}});
    CHECK(uncertainty_scores(sure, UncertaintyMeasure::entropy)[0] == 0.0);
}

TEST_CASE("uncertainty ties break towards the smaller pool index") {
    const Matrix probs = rows2({{1.0, 0.0}, {1.0, 0.0}});
    for (auto measure : {UncertaintyMeasure::least_confident, UncertaintyMeasure::margin,
                         UncertaintyMeasure::entropy})
        CHECK(uncertainty_select(probs, measure, 1) == std::vector<int>{0});
    CHECK_THROWS_AS(uncertainty_select(Matrix(0, 2), UncertaintyMeasure::entropy, 1),
                    std::invalid_argument);
}

TEST_CASE("random_select is a deterministic uniform draw") {
    const std::vector<int> pool{4, 7, 9, 12, 40};
    CHECK(random_select({42}, 1, 9) == std::vector<int>{42});

    const auto all = random_select(pool, 5, 3);
    CHECK(std::set<int>(all.begin(), all.end()) == std::set<int>(pool.begin(), pool.end()));

    const auto a = random_select(pool, 2, 11);
    CHECK(a == random_select(pool, 2, 11));
    CHECK(a.size() == 2);
    for (int idx : a) CHECK(std::count(pool.begin(), pool.end(), idx) == 1);
    CHECK_THROWS_AS(random_select({}, 1, 0), std::invalid_argument);
}

TEST_CASE("vote entropy matches the hand cases") {
    // All four members vote class 0 on both rows.
    const std::vector<std::vector<int>> unanimous{{0, 0}, {0, 0}, {0, 0}, {0, 0}};
    for (double s : vote_entropy_scores(unanimous, 2)) CHECK(s == 0.0);

    // 2/2 split on row 0, unanimous on row 1.
    const std::vector<std::vector<int>> split{{0, 1}, {0, 1}, {1, 1}, {1, 1}};
    const auto scores = vote_entropy_scores(split, 2);
    CHECK(scores[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(scores[1] == 0.0);
}

TEST_CASE("identical member distributions have zero KL disagreement") {
    Rng rng(88);
    const Matrix probs = testutil::random_probs(rng, 6, 3);
    const auto scores = kl_disagreement_scores({probs, probs, probs});
    for (double s : scores) CHECK(s == doctest::Approx(0.0).epsilon(1e-12));

    // Disagreeing members score strictly positive.
    const Matrix other = testutil::random_probs(rng, 6, 3);
    const auto mixed = kl_disagreement_scores({probs, other});
    bool any_positive = false;
    for (double s : mixed) {
        CHECK(s >= 0.0);
        any_positive |= s > 1e-6;
    }
    CHECK(any_positive);
}

TEST_CASE("qbc trains a committee and scores disagreement") {
    const Dataset data = testutil::make_blobs(60, 2, 4.0, 17);
    std::vector<int> labeled, pool;
    for (int i = 0; i < 20; ++i) labeled.push_back(i);
    for (int i = 20; i < 60; ++i) pool.push_back(i);
    LogisticRegression model(2);
    model.fit(rows_of(data.features, labeled), labels_of(data.labels, labeled));

    QueryContext ctx{.features = data.features,
                     .labeled = labeled,
                     .pool = pool,
                     .known_labels = data.labels,
                     .num_classes = 2,
                     .model = &model,
                     .batch_size = 3,
                     .seed = 123};
    for (auto kind : {Disagreement::vote_entropy, Disagreement::kl_divergence}) {
        const auto picks = qbc_select(ctx, 5, kind);
        CHECK(picks.size() == 3);
        CHECK(picks == qbc_select(ctx, 5, kind));
        std::set<int> distinct(picks.begin(), picks.end());
        CHECK(distinct.size() == 3);
        for (int row : picks) {
            CHECK(row >= 0);
            CHECK(row < static_cast<int>(pool.size()));
        }
    }
    CHECK_THROWS_AS(qbc_select(ctx, 1, Disagreement::vote_entropy), std::invalid_argument);
}

TEST_CASE("eer on a single-candidate pool returns it") {
    const Dataset data = testutil::make_blobs(12, 2, 3.0, 5);
    std::vector<int> labeled{0, 1, 2, 3}, pool{7};
    LogisticRegression model(2);
    model.fit(rows_of(data.features, labeled), labels_of(data.labels, labeled));
    QueryContext ctx{.features = data.features,
                     .labeled = labeled,
                     .pool = pool,
                     .known_labels = data.labels,
                     .num_classes = 2,
                     .model = &model,
                     .batch_size = 1,
                     .seed = 0};
    CHECK(eer_select(ctx) == std::vector<int>{0});
    // With no other pool members every hypothetical error sum is empty.
    CHECK(eer_risks(ctx)[0] == 0.0);
}

TEST_CASE("eer matches the naive double loop and respects risk bounds") {
    Rng rng(0xee5);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 14 + static_cast<int>(rng.next_below(6));
        Rng data_rng(rng.next_u64());
        const Dataset data = testutil::make_blobs(n, 2, 2.0, data_rng.next_u64());
        std::vector<int> labeled, pool;
        const int labeled_size = 4 + static_cast<int>(rng.next_below(5));
        const int pool_size =
            std::min(n - labeled_size, 3 + static_cast<int>(rng.next_below(10)));
        for (int i = 0; i < labeled_size; ++i) labeled.push_back(i);
        for (int i = labeled_size; i < labeled_size + pool_size; ++i) pool.push_back(i);

        LogisticRegression model(2);
        model.fit(rows_of(data.features, labeled), labels_of(data.labels, labeled));
        QueryContext ctx{.features = data.features,
                         .labeled = labeled,
                         .pool = pool,
                         .known_labels = data.labels,
                         .num_classes = 2,
                         .model = &model,
                         .batch_size = 1,
                         .seed = 0};
        const auto risks = eer_risks(ctx);
        for (double r : risks) {
            CHECK(r >= 0.0);
            CHECK(r <= static_cast<double>(pool.size()) - 1.0);
        }
        const auto picked = eer_select(ctx);
        REQUIRE(picked.size() == 1);
        CHECK(picked[0] ==
              naive_eer_pick(data.features, labeled, pool, data.labels, model));
    }
}

TEST_CASE("eer batch selection takes ascending risks without re-estimation") {
    const Dataset data = testutil::make_blobs(16, 2, 2.0, 77);
    std::vector<int> labeled{0, 1, 2, 3}, pool{4, 5, 6, 7, 8, 9};
    LogisticRegression model(2);
    model.fit(rows_of(data.features, labeled), labels_of(data.labels, labeled));
    QueryContext ctx{.features = data.features,
                     .labeled = labeled,
                     .pool = pool,
                     .known_labels = data.labels,
                     .num_classes = 2,
                     .model = &model,
                     .batch_size = 3,
                     .seed = 0};
    const auto risks = eer_risks(ctx);
    const auto picks = eer_select(ctx);
    REQUIRE(picks.size() == 3);
    for (std::size_t i = 1; i < picks.size(); ++i)
        CHECK(risks[static_cast<std::size_t>(picks[i - 1])] <=
              risks[static_cast<std::size_t>(picks[i])]);
    for (int row : picks)
        for (std::size_t other = 0; other < risks.size(); ++other)
            if (std::find(picks.begin(), picks.end(), static_cast<int>(other)) == picks.end())
                CHECK(risks[static_cast<std::size_t>(row)] <= risks[other]);
}

TEST_CASE("graph density prefers the middle of three collinear points") {
    Matrix points = rows2({{0.0}, {1.0}, {2.0}});
    const auto densities = graph_densities(points, 2, 1.0);
    const double ends = (std::exp(-1.0) + std::exp(-4.0)) / 2.0;
    CHECK(densities[0] == doctest::Approx(ends).epsilon(1e-12));
    CHECK(densities[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(densities[2] == doctest::Approx(ends).epsilon(1e-12));
    CHECK(graph_density_select(points, 2, 1.0, 1) == std::vector<int>{1});
}

TEST_CASE("identical points all have density one and ties pick the smallest") {
    Matrix points(4, 2);
    points.setConstant(3.5);
    const auto densities = graph_densities(points, 2, 0.7);
    for (double d : densities) CHECK(d == 1.0);
    CHECK(graph_density_select(points, 2, 0.7, 1) == std::vector<int>{0});
}

TEST_CASE("graph density exhausts the pool into a permutation") {
    Rng rng(404);
    Matrix points(7, 2);
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index j = 0; j < points.cols(); ++j) points(i, j) = rng.next_gauss();
    const auto picks = graph_density_select(points, 3, 0.5, 7);
    CHECK(picks.size() == 7);
    CHECK(std::set<int>(picks.begin(), picks.end()) ==
          std::set<int>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("graph densities stay in (0, 1] and discounts never raise them") {
    Rng rng(0x9d);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 5 + static_cast<int>(rng.next_below(12));
        Matrix points(m, 2);
        for (Eigen::Index i = 0; i < points.rows(); ++i)
            for (Eigen::Index j = 0; j < points.cols(); ++j) points(i, j) = rng.next_gauss();
        auto densities = graph_densities(points, 4, 0.8);
        for (double d : densities) {
            CHECK(d > 0.0);
            CHECK(d <= 1.0);
        }
        // Re-run the greedy selection by hand: the running density of a
        // surviving point never exceeds its starting density.
        const auto initial = densities;
        const auto picks = graph_density_select(points, 4, 0.8, m);
        CHECK(static_cast<int>(picks.size()) == m);
        // First pick is the starting argmax (ties to the smaller index).
        int argmax = 0;
        for (int i = 1; i < m; ++i)
            if (initial[static_cast<std::size_t>(i)] > initial[static_cast<std::size_t>(argmax)])
                argmax = i;
        CHECK(picks[0] == argmax);
    }
    CHECK_THROWS_AS(graph_densities(Matrix(0, 2), 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(graph_densities(Matrix(3, 2), 2, 0.0), std::invalid_argument);
}

TEST_CASE("cost performance divides entropy by cost") {
    const Matrix probs = rows2({{0.5, 0.5}, {0.5, 0.5}});
    CHECK(cost_performance_select(probs, {1.0, 2.0}, 1) == std::vector<int>{0});
    CHECK(cost_performance_select(probs, {2.0, 1.0}, 1) == std::vector<int>{1});

    // Zero entropy everywhere: all scores 0, smallest index wins.
    const Matrix sure = rows2({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(cost_performance_select(sure, {5.0, 1.0}, 1) == std::vector<int>{0});

    CHECK_THROWS_AS(cost_performance_select(probs, {1.0, 0.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(cost_performance_select(probs, {1.0}, 1), std::invalid_argument);
}

TEST_CASE("equal costs reduce cost performance to entropy uncertainty") {
    Rng rng(0xc057);
    for (int trial = 0; trial < 50; ++trial) {
        const int rows = 2 + static_cast<int>(rng.next_below(20));
        const int c = 2 + static_cast<int>(rng.next_below(3));
        const Matrix probs = testutil::random_probs(rng, rows, c);
        const std::vector<double> costs(static_cast<std::size_t>(rows), 3.0);
        const int batch = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(rows)));
        CHECK(cost_performance_select(probs, costs, batch) ==
              uncertainty_select(probs, UncertaintyMeasure::entropy, batch));
    }
}

TEST_CASE("subsampling caps the pool and is otherwise the identity") {
    std::vector<int> hundred;
    for (int i = 0; i < 100; ++i) hundred.push_back(i * 3);
    const IndexCollection pool(hundred);
    CHECK(subsample_pool(pool, 256, 9).indices() == pool.indices());
    CHECK(subsample_pool(pool, 0, 9).indices() == pool.indices());

    std::vector<int> thousand;
    for (int i = 0; i < 1000; ++i) thousand.push_back(i);
    const IndexCollection big(thousand);
    const IndexCollection capped = subsample_pool(big, 256, 9);
    CHECK(capped.size() == 256);
    std::set<int> distinct(capped.indices().begin(), capped.indices().end());
    CHECK(distinct.size() == 256);
    for (int idx : capped.indices()) CHECK(big.contains(idx));
    CHECK(subsample_pool(big, 256, 9).indices() == capped.indices());
    CHECK_THROWS_AS(subsample_pool(big, -1, 9), std::invalid_argument);
}

TEST_CASE("subsampling makes eer tractable on a large pool") {
    const Dataset data = testutil::make_blobs(2010, 2, 3.0, 2025);
    std::vector<int> labeled, pool;
    for (int i = 0; i < 10; ++i) labeled.push_back(i);
    for (int i = 10; i < 2010; ++i) pool.push_back(i);
    KnnClassifier model(2, 3);
    model.fit(rows_of(data.features, labeled), labels_of(data.labels, labeled));

    const IndexCollection capped = subsample_pool(IndexCollection(pool), 64, 31);
    REQUIRE(capped.size() == 64);

    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    QueryContext small{.features = data.features,
                       .labeled = labeled,
                       .pool = capped.indices(),
                       .known_labels = data.labels,
                       .num_classes = 2,
                       .model = &model,
                       .batch_size = 1,
                       .seed = 0};
    eer_select(small);
    const auto t1 = clock::now();
    QueryContext full{.features = data.features,
                      .labeled = labeled,
                      .pool = pool,
                      .known_labels = data.labels,
                      .num_classes = 2,
                      .model = &model,
                      .batch_size = 1,
                      .seed = 0};
    eer_select(full);
    const auto t2 = clock::now();
    // The capped run does ~1/1000 of the work; demanding a factor of 2
    // leaves an enormous margin over scheduler noise.
    CHECK(2 * (t1 - t0).count() < (t2 - t1).count());
}

TEST_CASE("select_batch honours the strategy contract for every kind") {
    const Dataset data = testutil::make_blobs(40, 2, 3.0, 1234);
    std::vector<int> labeled, pool;
    for (int i = 0; i < 12; ++i) labeled.push_back(i);
    for (int i = 12; i < 40; ++i) pool.push_back(i);
    LogisticRegression model(2);
    model.fit(rows_of(data.features, labeled), labels_of(data.labels, labeled));
    std::vector<double> costs(pool.size());
    Rng cost_rng(5);
    for (double& c : costs) c = 0.5 + cost_rng.next_unit();

    Rng rng(0x5e1);
    for (StrategyKind kind :
         {StrategyKind::uncertainty, StrategyKind::random, StrategyKind::qbc, StrategyKind::eer,
          StrategyKind::graph_density, StrategyKind::cost_performance}) {
        StrategyConfig config;
        config.name = kind;
        config.committee_size = 3;
        const int trials = kind == StrategyKind::eer ? 4 : 100;
        for (int trial = 0; trial < trials; ++trial) {
            const int batch = 1 + static_cast<int>(rng.next_below(4));
            const std::uint64_t seed = rng.next_u64();
            QueryContext ctx{.features = data.features,
                             .labeled = labeled,
                             .pool = pool,
                             .known_labels = data.labels,
                             .num_classes = 2,
                             .model = &model,
                             .batch_size = batch,
                             .seed = seed,
                             .pool_costs = &costs};
            const auto picks = select_batch(config, ctx);
            CHECK(static_cast<int>(picks.size()) == batch);
            std::set<int> distinct(picks.begin(), picks.end());
            CHECK(distinct.size() == picks.size());
            for (int idx : picks)
                CHECK(std::find(pool.begin(), pool.end(), idx) != pool.end());
            CHECK(select_batch(config, ctx) == picks);
        }
    }
}

TEST_CASE("batch size larger than the pool returns the whole pool") {
    const Dataset data = testutil::make_blobs(10, 2, 3.0, 9);
    std::vector<int> labeled{0, 1, 2, 3}, pool{4, 5, 6};
    LogisticRegression model(2);
    model.fit(rows_of(data.features, labeled), labels_of(data.labels, labeled));
    StrategyConfig config;
    config.name = StrategyKind::uncertainty;
    QueryContext ctx{.features = data.features,
                     .labeled = labeled,
                     .pool = pool,
                     .known_labels = data.labels,
                     .num_classes = 2,
                     .model = &model,
                     .batch_size = 10,
                     .seed = 0};
    const auto picks = select_batch(config, ctx);
    CHECK(std::set<int>(picks.begin(), picks.end()) == std::set<int>{4, 5, 6});
}

TEST_CASE("duplicating a non-selected instance never changes the top choice") {
    Rng rng(0xd0b);
    for (int trial = 0; trial < 100; ++trial) {
        const int rows = 3 + static_cast<int>(rng.next_below(10));
        const Matrix probs = testutil::random_probs(rng, rows, 3);
        const auto before = uncertainty_select(probs, UncertaintyMeasure::entropy, 1);
        // Duplicate a row other than the winner.
        int dup = (before[0] + 1) % rows;
        Matrix extended(rows + 1, 3);
        extended.topRows(rows) = probs;
        extended.row(rows) = probs.row(dup);
        const auto after = uncertainty_select(extended, UncertaintyMeasure::entropy, 1);
        CHECK(after == before);
    }
}

TEST_CASE("class permutations leave selections unchanged") {
    CHECK(properties::argmax_and_permutation(1000) == "");
}

TEST_CASE("strategy and measure names round-trip") {
    for (StrategyKind kind :
         {StrategyKind::uncertainty, StrategyKind::random, StrategyKind::qbc, StrategyKind::eer,
          StrategyKind::graph_density, StrategyKind::cost_performance})
        CHECK(strategy_from_name(strategy_name(kind)) == kind);
    for (UncertaintyMeasure m : {UncertaintyMeasure::least_confident, UncertaintyMeasure::margin,
                                 UncertaintyMeasure::entropy})
        CHECK(measure_from_name(measure_name(m)) == m);
    for (Disagreement d : {Disagreement::vote_entropy, Disagreement::kl_divergence})
        CHECK(disagreement_from_name(disagreement_name(d)) == d);
    CHECK_THROWS_AS(strategy_from_name("bmdr"), std::invalid_argument);
    CHECK_THROWS_AS(measure_from_name("gini"), std::invalid_argument);
    CHECK_THROWS_AS(disagreement_from_name("variance"), std::invalid_argument);
}

TEST_CASE("strategy config validation") {
    StrategyConfig config;
    CHECK_NOTHROW(config.validate(1));
    CHECK_THROWS_AS(config.validate(0), std::invalid_argument);
    config.committee_size = 1;
    CHECK_THROWS_AS(config.validate(1), std::invalid_argument);
    config.committee_size = 5;
    config.subsample_cap = 2;
    CHECK_THROWS_AS(config.validate(3), std::invalid_argument);
    config.subsample_cap = 0;
    config.rbf_gamma = -1.0;
    CHECK_THROWS_AS(config.validate(1), std::invalid_argument);
    config.rbf_gamma = 0.0;
    config.knn_k = 0;
    CHECK_THROWS_AS(config.validate(1), std::invalid_argument);
}
