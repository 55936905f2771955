#pragma once

#include <cmath>
#include <cstdint>

namespace cnbe {

// Counter-based splittable generator. Output k is a bijective mix of
// (key, k); `split(tag)` derives an independent stream from (key, tag)
// alone, so fan-out across workers is reproducible regardless of how much
// the parent has generated. Every stochastic routine in the library takes
// an Rng by reference; there is no global generator state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

    [[nodiscard]] Rng split(std::uint64_t tag) const {
        return Rng(FromKey{}, mix(key_ ^ mix(tag + 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    // Uniform on the open interval (0, 1); never returns an endpoint.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; the paired draw is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    double exponential() { return -std::log(uniform()); }

    // Unit Pareto: F(z) = 1 - 1/z on [1, inf).
    double pareto() { return 1.0 / uniform(); }

    // Uniform index in {0, ..., n-1} by rejection (exact, unbiased).
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = ~0ULL - (~0ULL % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

  private:
    struct FromKey {};
    Rng(FromKey, std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace cnbe
