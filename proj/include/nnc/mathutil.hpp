#pragma once

#include <cmath>
#include <cstdint>

namespace nnc {

/// floor(log2(x)) for finite x > 0, exact for powers of two.
inline int floor_log2(double x) {
  int e = 0;
  std::frexp(x, &e);  // x = m * 2^e with m in [0.5, 1)
  return e - 1;
}

/// ceil(log2(x)) for finite x > 0, exact for powers of two.
inline int ceil_log2(double x) {
  int e = 0;
  double m = std::frexp(x, &e);
  return m == 0.5 ? e - 1 : e;
}

/// 2^i for integer i, exact over the double exponent range.
inline double exp2i(int i) { return std::ldexp(1.0, i); }

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream-independent seed for (experiment seed, trial, attempt) triples.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ (a + 0x9E3779B97F4A7C15ULL)) ^ b);
}

}  // namespace nnc
