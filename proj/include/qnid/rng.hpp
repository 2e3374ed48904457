#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace qnid {

// Deterministic 64-bit generator (splitmix64). We avoid <random> engines and
// distributions because their output streams are not pinned across standard
// library implementations; this one produces identical sequences everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n); n must be > 0
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  private:
    std::uint64_t state_;
};

// In-place Fisher-Yates. Deterministic for a fixed rng state.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
        std::swap(v[i], v[j]);
    }
}

// Stage seeds are derived from one master seed so a single integer pins an
// entire run: mix the FNV-1a hash of the stage tag into the master seed and
// scramble once through splitmix64.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

} // namespace qnid
