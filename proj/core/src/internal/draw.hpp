#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scalewise::detail {

// Portable draws on top of mt19937_64. The std distributions are
// implementation-defined, which would make seeded output differ between
// standard libraries.
class Draw {
 public:
  Draw(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
    std::seed_seq seq{lo(seed), hi(seed), lo(trial), hi(trial), lo(stream), hi(stream)};
    engine_.seed(seq);
  }

  // [0, 1)
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }
  // [0, n), n > 0
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

  std::mt19937_64 engine_;
};

}  // namespace scalewise::detail
