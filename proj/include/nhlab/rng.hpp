#ifndef NHLAB_RNG_HPP
#define NHLAB_RNG_HPP

#include <cstdint>

namespace nhlab {

// Counter-based stream: each draw is a splitmix64 finalizer applied to
// (seed, stream, counter). Platform-independent and schedule-independent;
// disorder realizations key their stream by the realization index.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(stream + 0xbf58476d1ce4e5b9ull)) {}

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [-halfwidth, halfwidth]
    double next_symmetric(double halfwidth) {
        return halfwidth * (2.0 * next_double() - 1.0);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace nhlab

#endif
