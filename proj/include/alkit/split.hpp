#ifndef ALKIT_SPLIT_HPP
#define ALKIT_SPLIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "alkit/dataset.hpp"
#include "alkit/index_collection.hpp"

namespace alkit {

// One experiment fold: disjoint test/train partition of all indices,
// with train further partitioned into the initially labeled and
// initially unlabeled sets. The initially labeled set always covers
// at least two classes.
struct Split {
    IndexCollection test;
    IndexCollection train;
    IndexCollection initially_labeled;
    IndexCollection initially_unlabeled;

    // Checks the partition identities against a dataset of n instances.
    void validate(int n) const;
};

// split_count independent hold-out splits. |test| = round(test_ratio * n)
// (half-up, clamped so no part is empty); the labeled set has
// max(classes seen in train, round(initial_label_rate * |train|)) members
// and is resampled (at most 100 attempts) until it covers >= 2 classes.
// Split i depends only on (seed, i).
std::vector<Split> split_al(const Dataset& dataset, double test_ratio,
                            double initial_label_rate, int split_count, std::uint64_t seed);

// k-fold cross validation: the k test sets partition all indices and
// their sizes differ by at most one. Labeled-set rule as in split_al.
std::vector<Split> kfold_split(const Dataset& dataset, int k, double initial_label_rate,
                               std::uint64_t seed);

// Splits read from a JSON file mapping each fold to lists of instance
// names:
//   {"folds": [{"test": ["a", ...], "labeled": ["b", ...]}, ...]}
// Train is the complement of test; unlabeled is train minus labeled.
// All names are validated against dataset.names.
std::vector<Split> splits_from_names_file(const Dataset& dataset, const std::string& path);

}  // namespace alkit

#endif  // ALKIT_SPLIT_HPP
