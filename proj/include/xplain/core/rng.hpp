#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace xplain {

/// Deterministic SplitMix64 generator. Standard-library engines are portable
/// but the std distributions are not bit-identical across implementations,
/// and replays must be byte-stable everywhere, so all sampling goes through
/// this class.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n). Multiply-shift mapping; bias is below 2^-64 per
  /// draw and identical on every platform.
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  uint64_t state() const { return state_; }
  void set_state(uint64_t s) { state_ = s; }

 private:
  uint64_t state_;
};

/// Derives an independent stream seed from a root seed and a stream index.
inline uint64_t derive_seed(uint64_t root, uint64_t stream) {
  Rng r(root ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
  r.next_u64();
  return r.next_u64();
}

}  // namespace xplain
