#include "idrl/rng.hpp"

#include <cmath>

namespace idrl {

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  // Lemire multiply-shift; bias is < 2^-64 per draw, irrelevant here.
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(gen_()) * static_cast<unsigned __int128>(n);
  return static_cast<std::uint64_t>(wide >> 64);
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace idrl
