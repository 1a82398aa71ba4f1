#ifndef MANET_RNG_HPP
#define MANET_RNG_HPP

#include <cstdint>
#include <random>

namespace manet {

// Seeded random stream with platform-independent draws. The standard
// distributions are implementation-defined, so uniforms are derived from the
// raw engine output directly; two builds with the same seed see the same
// sequence. Independent concerns (mobility, traffic, adversary) each get
// their own stream derived from the scenario seed, so toggling one feature
// never perturbs the draws of another.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // Derives a stream for sub-concern `stream_id` from a scenario seed.
    static RngStream derive(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform in (0, hi]: complement of uniform01 so zero is unreachable.
    double uniform_positive(double hi) { return (1.0 - uniform01()) * hi; }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to spread scenario seeds across sub-streams.
std::uint64_t mix_seed(std::uint64_t seed);

}  // namespace manet

#endif
