#include "alkit/index_collection.hpp"

#include <stdexcept>
#include <string>

#include "alkit/random.hpp"

namespace alkit {

IndexCollection::IndexCollection(std::vector<int> indices) {
    order_.reserve(indices.size());
    for (int idx : indices) add(idx);
}

void IndexCollection::add(int index) {
    if (index < 0) throw std::invalid_argument("IndexCollection: negative index");
    if (!set_.insert(index).second)
        throw std::invalid_argument("IndexCollection: duplicate index " + std::to_string(index));
    order_.push_back(index);
}

void IndexCollection::remove(int index) {
    if (set_.erase(index) == 0)
        throw std::invalid_argument("IndexCollection: index " + std::to_string(index) +
                                    " not present");
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (order_[i] == index) {
            order_.erase(order_.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
}

std::pair<IndexCollection, IndexCollection> update_partition(const IndexCollection& labeled,
                                                             const IndexCollection& unlabeled,
                                                             const std::vector<int>& queried) {
    IndexCollection seen;
    for (int q : queried) {
        seen.add(q);  // throws on duplicate
        if (!unlabeled.contains(q))
            throw std::invalid_argument("update_partition: queried index " + std::to_string(q) +
                                        " is not unlabeled");
    }
    IndexCollection new_labeled = labeled;
    IndexCollection new_unlabeled = unlabeled;
    for (int q : queried) {
        new_labeled.add(q);
        new_unlabeled.remove(q);
    }
    return {std::move(new_labeled), std::move(new_unlabeled)};
}

IndexCollection random_sample(const IndexCollection& collection, std::size_t m,
                              std::uint64_t seed) {
    Rng rng(seed);
    return IndexCollection(sample_without_replacement(collection.indices(), m, rng));
}

}  // namespace alkit
