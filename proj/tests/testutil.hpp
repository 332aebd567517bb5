#ifndef ALKIT_TESTS_TESTUTIL_HPP
#define ALKIT_TESTS_TESTUTIL_HPP

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "alkit/dataset.hpp"
#include "alkit/random.hpp"

namespace testutil {

// Two Gaussian blobs with unit variance, one per class, centred at the
// origin and at (separation/sqrt(d), ...). Rows alternate classes.
inline alkit::Dataset make_blobs(int n, int d, double separation, std::uint64_t seed) {
    alkit::Rng rng(seed);
    alkit::Dataset dataset;
    dataset.features.resize(n, d);
    dataset.labels.resize(static_cast<std::size_t>(n));
    dataset.num_classes = 2;
    const double shift = separation / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < n; ++i) {
        const int cls = i % 2;
        dataset.labels[static_cast<std::size_t>(i)] = cls;
        for (int j = 0; j < d; ++j)
            dataset.features(i, j) = rng.next_gauss() + (cls == 1 ? shift : 0.0);
    }
    return dataset;
}

// Random features with labels covering every class.
inline alkit::Dataset random_dataset(alkit::Rng& rng, int n, int d, int num_classes) {
    alkit::Dataset dataset;
    dataset.features.resize(n, d);
    dataset.labels.resize(static_cast<std::size_t>(n));
    dataset.num_classes = num_classes;
    for (int i = 0; i < n; ++i) {
        dataset.labels[static_cast<std::size_t>(i)] =
            i < num_classes ? i : static_cast<int>(rng.next_below(static_cast<std::uint64_t>(num_classes)));
        for (int j = 0; j < d; ++j) dataset.features(i, j) = rng.next_gauss();
    }
    return dataset;
}

// Row-stochastic matrix with strictly positive entries.
inline alkit::Matrix random_probs(alkit::Rng& rng, int rows, int num_classes) {
    alkit::Matrix probs(rows, num_classes);
    for (int i = 0; i < rows; ++i) {
        double total = 0.0;
        for (int c = 0; c < num_classes; ++c) {
            probs(i, c) = 0.05 + rng.next_unit();
            total += probs(i, c);
        }
        for (int c = 0; c < num_classes; ++c) probs(i, c) /= total;
    }
    return probs;
}

// CSV text with the label as the last column.
inline std::string to_csv(const alkit::Dataset& dataset) {
    std::string text;
    for (int i = 0; i < dataset.n(); ++i) {
        for (int j = 0; j < dataset.d(); ++j)
            text += std::to_string(dataset.features(i, j)) + ',';
        text += std::to_string(dataset.labels[static_cast<std::size_t>(i)]) + '\n';
    }
    return text;
}

// Minimal XML well-formedness check: tags balance and nest, attribute
// values are quoted. Returns an empty string when the document is fine,
// else a description of the first problem.
inline std::string check_xml(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool seen_element = false;
    while (i < n) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            const std::size_t end = text.find("-->", i + 4);
            if (end == std::string::npos) return "unterminated comment";
            i = end + 3;
            continue;
        }
        if (text.compare(i, 2, "<?") == 0) {
            const std::size_t end = text.find("?>", i + 2);
            if (end == std::string::npos) return "unterminated processing instruction";
            i = end + 2;
            continue;
        }
        const std::size_t close = text.find('>', i);
        if (close == std::string::npos) return "unterminated tag";
        std::string tag = text.substr(i + 1, close - i - 1);
        if (tag.empty()) return "empty tag";
        int quotes = 0;
        for (char c : tag)
            if (c == '"') ++quotes;
        if (quotes % 2 != 0) return "unbalanced attribute quotes in <" + tag + ">";
        if (tag[0] == '/') {
            const std::string name = tag.substr(1);
            if (stack.empty()) return "closing tag </" + name + "> with nothing open";
            if (stack.back() != name)
                return "expected </" + stack.back() + ">, found </" + name + ">";
            stack.pop_back();
        } else {
            const bool self_closing = tag.back() == '/';
            if (self_closing) tag.pop_back();
            std::string name;
            for (char c : tag) {
                if (c == ' ' || c == '\t' || c == '\n') break;
                name += c;
            }
            if (name.empty()) return "tag without a name";
            seen_element = true;
            if (!self_closing) stack.push_back(name);
        }
        i = close + 1;
    }
    if (!stack.empty()) return "unclosed <" + stack.back() + ">";
    if (!seen_element) return "no elements";
    return "";
}

// Fresh directory under the system temp root.
inline std::string fresh_dir(const std::string& hint) {
    static std::uint64_t counter = 0;
    const auto base = std::filesystem::temp_directory_path() /
                      ("alkit_" + hint + "_" + std::to_string(counter++));
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);
    return base.string();
}

}  // namespace testutil

#endif  // ALKIT_TESTS_TESTUTIL_HPP
