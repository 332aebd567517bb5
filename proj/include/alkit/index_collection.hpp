#ifndef ALKIT_INDEX_COLLECTION_HPP
#define ALKIT_INDEX_COLLECTION_HPP

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

namespace alkit {

class Rng;

// Ordered, duplicate-free set of instance indices. Keeps insertion
// order (queried examples are appended in query order) and O(1)
// membership.
class IndexCollection {
public:
    IndexCollection() = default;
    explicit IndexCollection(std::vector<int> indices);

    void add(int index);
    bool contains(int index) const { return set_.count(index) > 0; }
    void remove(int index);

    std::size_t size() const { return order_.size(); }
    bool empty() const { return order_.empty(); }
    int operator[](std::size_t i) const { return order_[i]; }

    const std::vector<int>& indices() const { return order_; }
    std::vector<int>::const_iterator begin() const { return order_.begin(); }
    std::vector<int>::const_iterator end() const { return order_.end(); }

    bool operator==(const IndexCollection& other) const { return order_ == other.order_; }

private:
    std::vector<int> order_;
    std::unordered_set<int> set_;
};

// labeled' = labeled with queried appended in order, unlabeled' = unlabeled
// minus queried. Throws if queried contains a duplicate or an index not in
// unlabeled.
std::pair<IndexCollection, IndexCollection> update_partition(const IndexCollection& labeled,
                                                             const IndexCollection& unlabeled,
                                                             const std::vector<int>& queried);

// min(m, |collection|) distinct members, uniform without replacement,
// deterministic for a given seed.
IndexCollection random_sample(const IndexCollection& collection, std::size_t m,
                              std::uint64_t seed);

}  // namespace alkit

#endif  // ALKIT_INDEX_COLLECTION_HPP
