#include "cluvalid/rng.hpp"

namespace cluvalid {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

SeededGenerator::SeededGenerator(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    uint64_t s = seed ^ (0xD1342543DE82EF95ull * (stream_id + 1));
    const uint64_t a = splitmix64(s);
    const uint64_t b = splitmix64(s);
    engine_.seed(a ^ (b << 1));
}

SeededGenerator SeededGenerator::substream(uint64_t stream_id) const {
    uint64_t s = seed_ ^ (0xA0761D6478BD642Full * (stream_id_ + 1));
    const uint64_t derived = splitmix64(s);
    return SeededGenerator(derived, stream_id);
}

uint64_t SeededGenerator::uniform_below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double SeededGenerator::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace cluvalid
