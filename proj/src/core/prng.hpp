#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

// Seeded randomness used across the toolkit. The exact algorithms are part
// of the external contract: any reimplementation (tests, other languages)
// must reproduce these streams bit for bit.
//
//   SplitMix64 next: state += 0x9E3779B97F4A7C15
//                    z = state
//                    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                    return z ^ (z >> 31)
//   mix64(x)       : first output of SplitMix64 seeded at x
//   substream(s,k) : SplitMix64 seeded at mix64(s + (k+1)*0x9E3779B97F4A7C15)
//   below(b)       : next() % b  (modulo bias accepted, b << 2^64)
//   unit()         : (next() >> 11) * 2^-53                       in [0,1)
//   gaussians      : Box-Muller; u1 = ((next() >> 11) + 1) * 2^-53 in (0,1],
//                    u2 = (next() >> 11) * 2^-53; emits
//                    sqrt(-2 ln u1) cos(2 pi u2), then the sin twin
//   shuffle        : Fisher-Yates, j = n-1..1, i = below(j+1), swap v[i],v[j]

namespace embmark::prng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) { return SplitMix64(x).next(); }

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k) {
    return mix64(seed + (k + 1) * kGolden);
}

// Standard-normal stream; scale by sigma at the call site.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = static_cast<double>((gen_.next() >> 11) + 1) * 0x1.0p-53;
        double u2 = static_cast<double>(gen_.next() >> 11) * 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    SplitMix64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& gen) {
    for (std::size_t j = v.size(); j > 1; --j) {
        std::size_t i = static_cast<std::size_t>(gen.below(j));
        std::swap(v[i], v[j - 1]);
    }
}

}  // namespace embmark::prng
