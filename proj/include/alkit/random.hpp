#ifndef ALKIT_RANDOM_HPP
#define ALKIT_RANDOM_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace alkit {

// All randomness in the toolkit flows through counter-based seed
// derivation: every consumer (split, fold, round, committee member,
// oracle draw) gets its own 64-bit seed computed from the experiment
// seed and a fixed stream id. No RNG state is ever shared or
// serialized, which is what makes checkpoint resume and parallel
// fold execution bit-exact.

// SplitMix64 finalizer (Steele, Lea, Flood 2014 constants).
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + kGolden * (stream + 1));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return derive_seed(derive_seed(seed, a, b), c);
}

// FNV-1a, used for hashing oracle ids and config digests.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Fixed stream ids separating the independent random streams of one
// experiment. Values are part of the reproducibility contract.
enum class SeedStream : std::uint64_t {
    holdout_test = 1,
    kfold_perm = 2,
    initial_labeled = 3,
    round = 4,
    subsample = 5,
    strategy = 6,
    committee = 7,
    oracle = 8,
};

inline std::uint64_t derive_seed(std::uint64_t seed, SeedStream s) {
    return derive_seed(seed, static_cast<std::uint64_t>(s));
}

inline std::uint64_t derive_seed(std::uint64_t seed, SeedStream s, std::uint64_t a) {
    return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(s)), a);
}

inline std::uint64_t derive_seed(std::uint64_t seed, SeedStream s, std::uint64_t a,
                                 std::uint64_t b) {
    return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(s), a), b);
}

// SplitMix64 generator. Used instead of std::mt19937_64 +
// std::uniform_int_distribution because the std distributions are
// implementation-defined; this keeps streams identical across
// compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n). Lemire's method.
    std::uint64_t next_below(std::uint64_t n);

    // Standard normal via Box-Muller.
    double next_gauss();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// min(m, items.size()) distinct elements drawn uniformly without
// replacement, in draw order.
std::vector<int> sample_without_replacement(const std::vector<int>& items, std::size_t m,
                                            Rng& rng);

// In-place Fisher-Yates shuffle.
void shuffle(std::vector<int>& items, Rng& rng);

// One 64-bit hash word per (seed, a, b, c) tuple, converted to [0, 1).
// Pure function; the oracle module uses it for idempotent label noise.
inline double counter_unit(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c) {
    return static_cast<double>(derive_seed(seed, a, b, c) >> 11) * 0x1.0p-53;
}

}  // namespace alkit

#endif  // ALKIT_RANDOM_HPP
