#include "doctest.h"

#include <set>
#include <stdexcept>
#include <vector>

#include "alkit/index_collection.hpp"
#include "alkit/random.hpp"
#include "properties.hpp"

using namespace alkit;

TEST_CASE("IndexCollection keeps insertion order and rejects duplicates") {
    IndexCollection c;
    c.add(5);
    c.add(1);
    c.add(9);
    CHECK(c.size() == 3);
    CHECK(c[0] == 5);
    CHECK(c[1] == 1);
    CHECK(c[2] == 9);
    CHECK(c.contains(1));
    CHECK(!c.contains(2));
    CHECK_THROWS_AS(c.add(5), std::invalid_argument);

    c.remove(1);
    CHECK(c.size() == 2);
    CHECK(!c.contains(1));
    CHECK(c[0] == 5);
    CHECK(c[1] == 9);
    CHECK_THROWS_AS(c.remove(1), std::invalid_argument);

    CHECK_THROWS_AS(IndexCollection({1, 2, 1}), std::invalid_argument);
}

TEST_CASE("update_partition moves queried across") {
    const IndexCollection labeled({0});
    const IndexCollection unlabeled({1, 2, 3});

    SUBCASE("single query") {
        const auto [labeled2, unlabeled2] = update_partition(labeled, unlabeled, {2});
        CHECK(labeled2.indices() == std::vector<int>{0, 2});
        CHECK(unlabeled2.indices() == std::vector<int>{1, 3});
    }
    SUBCASE("empty query is the identity") {
        const auto [labeled2, unlabeled2] = update_partition(labeled, unlabeled, {});
        CHECK(labeled2 == labeled);
        CHECK(unlabeled2 == unlabeled);
    }
    SUBCASE("query outside the pool") {
        CHECK_THROWS_AS(update_partition(labeled, unlabeled, {5}), std::invalid_argument);
    }
    SUBCASE("duplicate in query") {
        CHECK_THROWS_AS(update_partition(labeled, unlabeled, {2, 2}), std::invalid_argument);
    }
    SUBCASE("query of an already labeled index") {
        CHECK_THROWS_AS(update_partition(labeled, unlabeled, {0}), std::invalid_argument);
    }
}

TEST_CASE("random_sample contract") {
    std::vector<int> values;
    for (int i = 1; i <= 1000; ++i) values.push_back(i);
    const IndexCollection big(values);

    const IndexCollection a = random_sample(big, 100, 42);
    CHECK(a.size() == 100);
    for (int v : a) CHECK(big.contains(v));

    const IndexCollection b = random_sample(big, 100, 42);
    CHECK(a == b);

    const IndexCollection c = random_sample(big, 100, 43);
    CHECK(!(a == c));

    CHECK(random_sample(big, 0, 1).empty());

    const IndexCollection all = random_sample(big, 1000, 9);
    CHECK(all.size() == 1000);
    CHECK(std::set<int>(all.begin(), all.end()) == std::set<int>(values.begin(), values.end()));
}

TEST_CASE("partition conservation holds on 1000 random cases") {
    CHECK(properties::partition_conservation(1000) == "");
}
