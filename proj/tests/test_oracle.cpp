#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "alkit/oracle.hpp"
#include "alkit/random.hpp"

using namespace alkit;

namespace {

OracleSpec make_oracle(double noise_rate, std::uint64_t seed = 1) {
    OracleSpec oracle;
    oracle.id = "tester";
    oracle.noise_rate = noise_rate;
    oracle.seed = seed;
    return oracle;
}

}  // namespace

TEST_CASE("a clean oracle always returns the truth") {
    const OracleSpec oracle = make_oracle(0.0);
    for (int i = 0; i < 200; ++i) CHECK(oracle.answer(i % 3, i, 3) == i % 3);
}

TEST_CASE("a fully noisy binary oracle always flips") {
    const OracleSpec oracle = make_oracle(1.0);
    for (int i = 0; i < 200; ++i) {
        const int truth = i % 2;
        CHECK(oracle.answer(truth, i, 2) == 1 - truth);
    }
}

TEST_CASE("the empirical flip rate tracks the configured noise") {
    const OracleSpec oracle = make_oracle(0.3, 99);
    int flips = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i)
        if (oracle.answer(i % 2, i, 2) != i % 2) ++flips;
    const double rate = static_cast<double>(flips) / n;
    CHECK(rate == doctest::Approx(0.3).epsilon(0.02 / 0.3));
}

TEST_CASE("corruption is idempotent per (oracle, instance, repeat)") {
    const OracleSpec oracle = make_oracle(0.5, 7);
    for (int i = 0; i < 100; ++i) {
        const int first = oracle.answer(1, i, 4, 2);
        for (int again = 0; again < 3; ++again) CHECK(oracle.answer(1, i, 4, 2) == first);
    }
    // Distinct oracles disagree somewhere even with the same seed.
    OracleSpec other = oracle;
    other.id = "other";
    bool differs = false;
    for (int i = 0; i < 100 && !differs; ++i)
        differs = other.answer(1, i, 4, 2) != oracle.answer(1, i, 4, 2);
    CHECK(differs);
}

TEST_CASE("the repeat counter yields fresh independent asks") {
    const OracleSpec oracle = make_oracle(0.5, 13);
    bool saw_truth = false, saw_flip = false;
    for (int repeat = 0; repeat < 64; ++repeat) {
        const int label = oracle.answer(0, 5, 2, repeat);
        saw_truth |= label == 0;
        saw_flip |= label == 1;
    }
    CHECK(saw_truth);
    CHECK(saw_flip);
}

TEST_CASE("noise replacement draws only from the other classes") {
    const OracleSpec oracle = make_oracle(1.0, 3);
    for (int i = 0; i < 300; ++i) {
        const int truth = i % 5;
        const int label = oracle.answer(truth, i, 5);
        CHECK(label != truth);
        CHECK(label >= 0);
        CHECK(label < 5);
    }
}

TEST_CASE("uniform and per-label costs follow the returned label") {
    std::vector<int> truth{0, 1, 0, 1};
    OracleSpec flat = make_oracle(0.0);
    flat.cost.uniform = 2.5;
    for (const OracleAnswer& a : oracle_query(flat, truth, 2, {0, 1, 2, 3})) {
        CHECK(a.cost == 2.5);
        CHECK(a.oracle_id == "tester");
        CHECK(a.label == truth[static_cast<std::size_t>(a.index)]);
    }

    // A always-flipping oracle is billed for the label it returns, not
    // the true one.
    OracleSpec priced = make_oracle(1.0);
    priced.cost.per_label = {{0, 1.0}, {1, 3.0}};
    for (const OracleAnswer& a : oracle_query(priced, truth, 2, {0, 1, 2, 3})) {
        CHECK(a.label == 1 - truth[static_cast<std::size_t>(a.index)]);
        CHECK(a.cost == (a.label == 0 ? 1.0 : 3.0));
    }

    CHECK_THROWS_AS(oracle_query(flat, truth, 2, {4}), std::invalid_argument);
    CHECK_THROWS_AS(oracle_query(flat, truth, 2, {-1}), std::invalid_argument);
}

TEST_CASE("oracle validation rejects bad specs") {
    OracleSpec oracle = make_oracle(0.0);
    CHECK_NOTHROW(oracle.validate(2));
    oracle.noise_rate = -0.1;
    CHECK_THROWS_AS(oracle.validate(2), std::invalid_argument);
    oracle.noise_rate = 1.1;
    CHECK_THROWS_AS(oracle.validate(2), std::invalid_argument);
    oracle = make_oracle(0.0);
    oracle.id = "";
    CHECK_THROWS_AS(oracle.validate(2), std::invalid_argument);
    oracle = make_oracle(0.0);
    oracle.cost.uniform = 0.0;
    CHECK_THROWS_AS(oracle.validate(2), std::invalid_argument);
    oracle.cost.uniform = 1.0;
    oracle.cost.per_label = {{0, 1.0}};  // missing class 1
    CHECK_THROWS_AS(oracle.validate(2), std::invalid_argument);
    oracle.cost.per_label = {{0, 1.0}, {2, 1.0}};  // label out of range
    CHECK_THROWS_AS(oracle.validate(2), std::invalid_argument);
    oracle.cost.per_label = {{0, 1.0}, {1, 0.0}};  // non-positive entry
    CHECK_THROWS_AS(oracle.validate(2), std::invalid_argument);
}

TEST_CASE("majority vote with ties to the smallest class") {
    CHECK(majority_label({1, 1, 0}) == 1);
    CHECK(majority_label({1, 0}) == 0);
    CHECK(majority_label({3}) == 3);
    CHECK(majority_label({2, 1, 0}) == 0);
    CHECK_THROWS_AS(majority_label({}), std::invalid_argument);
}

TEST_CASE("repeated asks of one oracle vote by majority") {
    OracleSpec oracle = make_oracle(0.0);
    oracle.cost.uniform = 2.0;
    const std::vector<int> truth{1, 0};
    const auto [label, cost] = repeated_query(oracle, 5, truth, 2, 0);
    CHECK(label == 1);
    CHECK(cost == 10.0);
    CHECK_THROWS_AS(repeated_query(oracle, 0, truth, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(repeated_query(oracle, 3, truth, 2, 9), std::invalid_argument);
}

TEST_CASE("repeated labeling recovers the binomial majority-correct rate") {
    // Five asks at 30% flip noise: correct when at most two flips,
    // sum C(5,k) 0.7^(5-k) 0.3^k for k=0..2 = 0.83692.
    const OracleSpec oracle = make_oracle(0.3, 0xbeef);
    const int n = 10000;
    std::vector<int> truth(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) truth[static_cast<std::size_t>(i)] = i % 2;
    int correct = 0;
    for (int i = 0; i < n; ++i) {
        const auto [label, cost] = repeated_query(oracle, 5, truth, 2, i);
        if (label == truth[static_cast<std::size_t>(i)]) ++correct;
    }
    const double rate = static_cast<double>(correct) / n;
    CHECK(std::abs(rate - 0.83692) < 0.01);
}

TEST_CASE("one ask per oracle aggregates the same way") {
    std::vector<OracleSpec> committee;
    for (int i = 0; i < 3; ++i) {
        OracleSpec o = make_oracle(0.0, static_cast<std::uint64_t>(i));
        o.id = "oracle" + std::to_string(i);
        o.cost.uniform = 1.0 + i;
        committee.push_back(o);
    }
    const std::vector<int> truth{1};
    const auto [label, cost] = repeated_query(committee, truth, 2, 0);
    CHECK(label == 1);
    CHECK(cost == 6.0);

    // A clean and an always-flip oracle tie; the smaller class wins.
    std::vector<OracleSpec> pair{make_oracle(0.0), make_oracle(1.0)};
    pair[1].id = "flipper";
    const auto [tie_label, tie_cost] = repeated_query(pair, truth, 2, 0);
    CHECK(tie_label == 0);
    CHECK(tie_cost == 2.0);
    CHECK_THROWS_AS(repeated_query(std::vector<OracleSpec>{}, truth, 2, 0),
                    std::invalid_argument);
}

TEST_CASE("t quantiles match table values") {
    CHECK(t_quantile_975(1) == doctest::Approx(12.7062047).epsilon(1e-6));
    CHECK(t_quantile_975(3) == doctest::Approx(3.1824463).epsilon(1e-6));
    CHECK(t_quantile_975(30) == doctest::Approx(2.0422725).epsilon(1e-6));
    CHECK_THROWS_AS(t_quantile_975(0), std::invalid_argument);
}

TEST_CASE("upper interval formula on hand-evaluated histories") {
    CHECK(ieth_upper_interval({}) == std::numeric_limits<double>::infinity());
    CHECK(ieth_upper_interval({1}) == std::numeric_limits<double>::infinity());
    CHECK(ieth_upper_interval({1, 1, 1}) == 1.0);
    CHECK(ieth_upper_interval({0, 0, 0}) == 0.0);
    // mean 0.75, s = 0.5, UI = 0.75 + t(3) * 0.5 / 2.
    const double t3 = t_quantile_975(3);
    CHECK(ieth_upper_interval({1, 0, 1, 1}) ==
          doctest::Approx(0.75 + t3 * 0.25).epsilon(1e-12));
    CHECK(ieth_upper_interval({1, 0, 0, 0}) ==
          doctest::Approx(0.25 + t3 * 0.25).epsilon(1e-12));
}

TEST_CASE("ieth selection keeps oracles within epsilon of the best") {
    OracleHistories zero_variance{{"good", {1, 1, 1}}, {"bad", {0, 0, 0}}};
    CHECK(ieth_select(zero_variance, 0.8) == std::vector<std::string>{"good"});

    // Hand case: UIs 1.5456 vs 1.0456; 0.8 * 1.5456 = 1.2365.
    OracleHistories hand{{"a", {1, 0, 1, 1}}, {"b", {1, 0, 0, 0}}};
    CHECK(ieth_select(hand, 0.8) == std::vector<std::string>{"a"});
    // A looser threshold keeps both.
    CHECK(ieth_select(hand, 0.6) == std::vector<std::string>{"a", "b"});

    // Unexplored oracles are always selected.
    OracleHistories fresh{{"new", {1}}, {"seen", {1, 1, 1}}};
    const auto picked = ieth_select(fresh, 0.8);
    CHECK(std::find(picked.begin(), picked.end(), "new") != picked.end());

    CHECK_THROWS_AS(ieth_select({}, 0.8), std::invalid_argument);
    CHECK_THROWS_AS(ieth_select(zero_variance, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ieth_select(zero_variance, 1.5), std::invalid_argument);
}

TEST_CASE("ieth selection is never empty") {
    Rng rng(0x1e7);
    for (int trial = 0; trial < 1000; ++trial) {
        OracleHistories histories;
        const int oracles = 1 + static_cast<int>(rng.next_below(5));
        for (int o = 0; o < oracles; ++o) {
            std::vector<int> rewards;
            const int n = static_cast<int>(rng.next_below(8));
            for (int i = 0; i < n; ++i)
                rewards.push_back(static_cast<int>(rng.next_below(2)));
            histories["oracle" + std::to_string(o)] = std::move(rewards);
        }
        const double epsilon = 0.05 + 0.95 * rng.next_unit();
        CHECK(!ieth_select(histories, epsilon).empty());
    }
}

TEST_CASE("ieth rewards agreement with the round majority") {
    OracleHistories histories;
    ieth_update(histories, {{"A", 1}, {"B", 1}, {"C", 0}});
    CHECK(histories["A"] == std::vector<int>{1});
    CHECK(histories["B"] == std::vector<int>{1});
    CHECK(histories["C"] == std::vector<int>{0});

    // A single selected oracle is its own majority.
    ieth_update(histories, {{"C", 4}});
    CHECK(histories["C"] == std::vector<int>{0, 1});

    // Tie round: majority breaks to the smaller label 0.
    ieth_update(histories, {{"A", 1}, {"B", 0}});
    CHECK(histories["A"] == std::vector<int>{1, 0});
    CHECK(histories["B"] == std::vector<int>{1, 1});

    CHECK_THROWS_AS(ieth_update(histories, {}), std::invalid_argument);
}
