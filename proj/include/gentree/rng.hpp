#ifndef GENTREE_RNG_HPP
#define GENTREE_RNG_HPP

#include <cstdint>
#include <vector>

namespace gentree {

// Splittable counter-based generator (SplitMix64 core). Output i is a pure
// function of (counter + i*gamma), so streams are cheap to fork and results
// are byte-identical across platforms and thread counts: every consumer
// derives its own stream from (seed, stream index) instead of sharing state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : counter_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))),
          gamma_(derive_gamma(seed, stream)) {}

    std::uint64_t next_u64() {
        counter_ += gamma_;
        return mix(counter_);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n), unbiased via rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do { x = next_u64(); } while (x >= limit);
        return x % n;
    }

    // Independent child stream; deterministic in (this stream's identity, index).
    Rng split(std::uint64_t index) const {
        Rng child(0);
        child.counter_ = mix(counter_ ^ mix(index + 0x632be59bd9b4e019ULL));
        child.gamma_ = derive_gamma(gamma_, index);
        return child;
    }

  private:
    std::uint64_t counter_;
    std::uint64_t gamma_;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t derive_gamma(std::uint64_t a, std::uint64_t b) {
        return mix(a + 0x7f4a7c15ULL * (b + 1)) | 1ULL; // odd increment
    }
};

// Samples an index from a cumulative distribution table (ascending cdf,
// last entry ~1). Returns the first index whose cdf covers u.
inline std::size_t sample_cdf(const std::vector<double>& cdf, double u) {
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (u < cdf[mid]) hi = mid; else lo = mid + 1;
    }
    return lo;
}

} // namespace gentree

#endif
