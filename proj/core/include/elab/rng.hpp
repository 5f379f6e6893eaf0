#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace elab {

// Deterministic random stream. Raw bits come from std::mt19937_64 (whose
// output sequence the standard pins down); conversions to doubles are done
// by hand so draws are reproducible across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Substream for an indexed task, e.g. one sampled path. Mixing follows
  // splitmix64 so (seed, index) pairs decorrelate.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
    s = s ^ (s >> 31);
    return RandomStream(s);
  }

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) {
    return bits() % n;  // modulo bias negligible for small n
  }

  // Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace elab
