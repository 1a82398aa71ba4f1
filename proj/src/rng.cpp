#include "manet/rng.hpp"

namespace manet {

std::uint64_t mix_seed(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RngStream RngStream::derive(std::uint64_t seed, std::uint64_t stream_id) {
    return RngStream(mix_seed(seed + 0x632be59bd9b4e019ULL * (stream_id + 1)));
}

int RngStream::uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

}  // namespace manet
