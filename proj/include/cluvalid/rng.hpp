#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace cluvalid {

/// Deterministic seeded generator with substream derivation. Identical
/// (seed, stream_id) always produce identical draw sequences; bounded draws
/// and shuffles avoid std distributions so results do not depend on the
/// standard library implementation.
class SeededGenerator {
public:
    explicit SeededGenerator(uint64_t seed, uint64_t stream_id = 0);

    /// Independent substream derived from this generator's identity.
    SeededGenerator substream(uint64_t stream_id) const;

    uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), unbiased via rejection.
    uint64_t uniform_below(uint64_t bound);

    /// Uniform double in [0, 1).
    double uniform01();

    template <typename T>
    void shuffle(std::span<T> data) {
        for (size_t i = data.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(uniform_below(i));
            std::swap(data[i - 1], data[j]);
        }
    }

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_id_; }

private:
    uint64_t seed_ = 0;
    uint64_t stream_id_ = 0;
    std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t& state);

}  // namespace cluvalid
