#include "alkit/split.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "alkit/random.hpp"

namespace alkit {

namespace {

constexpr int kMaxLabeledResamples = 100;

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

int clamp_int(int v, int lo, int hi) { return std::max(lo, std::min(v, hi)); }

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<int> complement_of(const std::set<int>& taken, int n) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n) - taken.size());
    for (int i = 0; i < n; ++i)
        if (!taken.count(i)) out.push_back(i);
    return out;
}

int classes_present(const Dataset& dataset, const std::vector<int>& indices) {
    std::set<int> classes;
    for (int i : indices) classes.insert(dataset.labels[static_cast<std::size_t>(i)]);
    return static_cast<int>(classes.size());
}

// Draws the initially labeled subset of `train`, resampling until it
// covers at least two classes. Throws when train itself has one class
// or the attempt budget runs out.
void assign_labeled(const Dataset& dataset, const std::vector<int>& train, double rate,
                    std::uint64_t seed, std::uint64_t fold, Split& out) {
    const int train_size = static_cast<int>(train.size());
    if (train_size < 2)
        throw std::runtime_error("split: train partition too small for a labeled/unlabeled split");
    const int train_classes = classes_present(dataset, train);
    if (train_classes < 2)
        throw std::runtime_error(
            "split: cannot satisfy >=2-class constraint, train partition is single-class");

    const int want = std::max(train_classes, round_half_up(rate * train_size));
    const int labeled_size = clamp_int(want, 1, train_size - 1);

    for (int attempt = 0; attempt < kMaxLabeledResamples; ++attempt) {
        Rng rng(derive_seed(seed, SeedStream::initial_labeled, fold,
                            static_cast<std::uint64_t>(attempt)));
        std::vector<int> labeled =
            sample_without_replacement(train, static_cast<std::size_t>(labeled_size), rng);
        if (classes_present(dataset, labeled) >= 2) {
            std::set<int> taken(labeled.begin(), labeled.end());
            std::vector<int> unlabeled;
            for (int i : train)
                if (!taken.count(i)) unlabeled.push_back(i);
            out.initially_labeled = IndexCollection(sorted(std::move(labeled)));
            out.initially_unlabeled = IndexCollection(std::move(unlabeled));
            return;
        }
    }
    throw std::runtime_error("split: cannot satisfy >=2-class constraint after " +
                             std::to_string(kMaxLabeledResamples) + " resamples");
}

}  // namespace

void Split::validate(int n) const {
    if (static_cast<int>(test.size() + train.size()) != n)
        throw std::invalid_argument("split: test and train do not cover all indices");
    for (int i : test) {
        if (i >= n) throw std::invalid_argument("split: index out of range");
        if (train.contains(i)) throw std::invalid_argument("split: test and train overlap");
    }
    for (int i : train)
        if (i >= n) throw std::invalid_argument("split: index out of range");
    if (initially_labeled.size() + initially_unlabeled.size() != train.size())
        throw std::invalid_argument("split: labeled and unlabeled do not cover train");
    for (int i : initially_labeled) {
        if (!train.contains(i))
            throw std::invalid_argument("split: labeled index not in train");
        if (initially_unlabeled.contains(i))
            throw std::invalid_argument("split: labeled and unlabeled overlap");
    }
    for (int i : initially_unlabeled)
        if (!train.contains(i))
            throw std::invalid_argument("split: unlabeled index not in train");
}

std::vector<Split> split_al(const Dataset& dataset, double test_ratio,
                            double initial_label_rate, int split_count, std::uint64_t seed) {
    dataset.validate();
    if (!(test_ratio > 0.0 && test_ratio < 1.0))
        throw std::invalid_argument("split_al: test_ratio must be in (0, 1)");
    if (!(initial_label_rate > 0.0 && initial_label_rate < 1.0))
        throw std::invalid_argument("split_al: initial_label_rate must be in (0, 1)");
    if (split_count < 1) throw std::invalid_argument("split_al: split_count must be positive");

    const int n = dataset.n();
    const int test_size = clamp_int(round_half_up(test_ratio * n), 1, n - 2);

    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;

    std::vector<Split> splits;
    splits.reserve(static_cast<std::size_t>(split_count));
    for (int s = 0; s < split_count; ++s) {
        Rng rng(derive_seed(seed, SeedStream::holdout_test, static_cast<std::uint64_t>(s)));
        std::vector<int> test =
            sorted(sample_without_replacement(all, static_cast<std::size_t>(test_size), rng));
        std::set<int> taken(test.begin(), test.end());
        std::vector<int> train = complement_of(taken, n);

        Split split;
        split.test = IndexCollection(std::move(test));
        split.train = IndexCollection(train);
        assign_labeled(dataset, train, initial_label_rate, seed,
                       static_cast<std::uint64_t>(s), split);
        split.validate(n);
        splits.push_back(std::move(split));
    }
    return splits;
}

std::vector<Split> kfold_split(const Dataset& dataset, int k, double initial_label_rate,
                               std::uint64_t seed) {
    dataset.validate();
    const int n = dataset.n();
    if (k < 2) throw std::invalid_argument("kfold_split: k must be at least 2");
    if (k > n) throw std::invalid_argument("kfold_split: k exceeds dataset size");
    if (!(initial_label_rate > 0.0 && initial_label_rate < 1.0))
        throw std::invalid_argument("kfold_split: initial_label_rate must be in (0, 1)");

    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    Rng rng(derive_seed(seed, SeedStream::kfold_perm));
    shuffle(perm, rng);

    // The first n % k folds take one extra element.
    const int base = n / k;
    const int extra = n % k;
    std::vector<Split> splits;
    splits.reserve(static_cast<std::size_t>(k));
    std::size_t cursor = 0;
    for (int f = 0; f < k; ++f) {
        const int fold_size = base + (f < extra ? 1 : 0);
        std::vector<int> test(perm.begin() + static_cast<std::ptrdiff_t>(cursor),
                              perm.begin() + static_cast<std::ptrdiff_t>(cursor + fold_size));
        cursor += static_cast<std::size_t>(fold_size);
        test = sorted(std::move(test));
        std::set<int> taken(test.begin(), test.end());
        std::vector<int> train = complement_of(taken, n);

        Split split;
        split.test = IndexCollection(std::move(test));
        split.train = IndexCollection(train);
        assign_labeled(dataset, train, initial_label_rate, seed,
                       static_cast<std::uint64_t>(f), split);
        split.validate(n);
        splits.push_back(std::move(split));
    }
    return splits;
}

std::vector<Split> splits_from_names_file(const Dataset& dataset, const std::string& path) {
    dataset.validate();
    if (!dataset.has_names())
        throw std::invalid_argument("names split: dataset has no instance names");
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("names split: cannot open file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("names split: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("folds") || !doc["folds"].is_array() ||
        doc["folds"].empty())
        throw std::invalid_argument("names split: expected an object with a non-empty 'folds' array");

    std::map<std::string, int> by_name;
    for (int i = 0; i < dataset.n(); ++i) by_name[dataset.names[static_cast<std::size_t>(i)]] = i;

    auto resolve = [&](const nlohmann::json& arr, const char* what) {
        if (!arr.is_array())
            throw std::invalid_argument(std::string("names split: '") + what +
                                        "' must be an array of names");
        std::vector<int> out;
        for (const auto& item : arr) {
            if (!item.is_string())
                throw std::invalid_argument(std::string("names split: '") + what +
                                            "' entries must be strings");
            auto it = by_name.find(item.get<std::string>());
            if (it == by_name.end())
                throw std::invalid_argument("names split: unknown instance name '" +
                                            item.get<std::string>() + "'");
            out.push_back(it->second);
        }
        return out;
    };

    std::vector<Split> splits;
    for (const auto& fold : doc["folds"]) {
        if (!fold.is_object())
            throw std::invalid_argument("names split: each fold must be an object");
        for (auto it = fold.begin(); it != fold.end(); ++it)
            if (it.key() != "test" && it.key() != "labeled")
                throw std::invalid_argument("names split: unknown fold key '" + it.key() + "'");
        if (!fold.contains("test") || !fold.contains("labeled"))
            throw std::invalid_argument("names split: each fold needs 'test' and 'labeled'");

        std::vector<int> test = resolve(fold["test"], "test");
        std::vector<int> labeled = resolve(fold["labeled"], "labeled");

        Split split;
        split.test = IndexCollection(sorted(std::move(test)));  // throws on duplicates
        std::set<int> test_set(split.test.begin(), split.test.end());
        split.train = IndexCollection(complement_of(test_set, dataset.n()));
        for (int i : labeled)
            if (!split.train.contains(i))
                throw std::invalid_argument("names split: labeled name also listed as test");
        split.initially_labeled = IndexCollection(sorted(std::move(labeled)));
        std::vector<int> unlabeled;
        for (int i : split.train)
            if (!split.initially_labeled.contains(i)) unlabeled.push_back(i);
        split.initially_unlabeled = IndexCollection(std::move(unlabeled));
        if (classes_present(dataset, split.initially_labeled.indices()) < 2)
            throw std::invalid_argument("names split: labeled set must cover >= 2 classes");
        split.validate(dataset.n());
        splits.push_back(std::move(split));
    }
    return splits;
}

}  // namespace alkit
