#pragma once

#include <array>
#include <cstdint>

namespace mpfbm {

/// Philox4x32-10 counter-based bijection (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic standard-normal stream keyed by (seed, stream, index).
///
/// The pair of variates for indices 2j and 2j+1 of `stream` comes from one
/// Philox block with key = seed and counter = (stream_lo, stream_hi, j_lo,
/// j_hi). The four 32-bit outputs form two 64-bit words w = (x0<<32)|x1 and
/// (x2<<32)|x3, each mapped to a uniform u = ((w >> 11) + 0.5) * 2^-53 in
/// (0,1). Box-Muller then gives z0 = r cos(2πu2), z1 = r sin(2πu2) with
/// r = sqrt(-2 ln u1). Output therefore does not depend on how streams are
/// distributed over threads.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : seed_(seed) {}

  /// Variate number `index` of substream `stream`.
  double operator()(std::uint64_t stream, std::uint64_t index) const;

  /// Fills out[0..n) with variates 0..n-1 of `stream`.
  void fill(std::uint64_t stream, double* out, std::size_t n) const;

 private:
  std::array<double, 2> pair(std::uint64_t stream, std::uint64_t block) const;

  std::uint64_t seed_;
};

}  // namespace mpfbm
