#include "mpfbm/rng.hpp"

#include <cmath>
#include <numbers>

namespace mpfbm {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline double to_open_unit(std::uint64_t w) {
  return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::array<double, 2> NormalStream::pair(std::uint64_t stream,
                                         std::uint64_t block) const {
  const auto out = philox4x32(
      {static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
       static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)},
      {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  const double u1 =
      to_open_unit((static_cast<std::uint64_t>(out[0]) << 32) | out[1]);
  const double u2 =
      to_open_unit((static_cast<std::uint64_t>(out[2]) << 32) | out[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

double NormalStream::operator()(std::uint64_t stream, std::uint64_t index) const {
  return pair(stream, index / 2)[index % 2];
}

void NormalStream::fill(std::uint64_t stream, double* out, std::size_t n) const {
  for (std::size_t j = 0; 2 * j < n; ++j) {
    const auto z = pair(stream, j);
    out[2 * j] = z[0];
    if (2 * j + 1 < n) out[2 * j + 1] = z[1];
  }
}

}  // namespace mpfbm
