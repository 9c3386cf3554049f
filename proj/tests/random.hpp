#pragma once

#include <random>

#include "twist/cyclotomic.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Random element of Q(zeta_m) with numerators in [-h, h] and denominators in [1, d].
inline twist::Cyclotomic random_cyclotomic(int m, long h = 20, long d = 5) {
  const int deg = twist::euler_phi(m);
  std::vector<twist::Rational> c;
  for (int i = 0; i < deg; ++i) c.push_back(twist::make_rational(uniform(-h, h), uniform(1, d)));
  return twist::Cyclotomic::from_coeffs(m, c);
}

inline twist::Cyclotomic random_nonzero(int m, long h = 20, long d = 5) {
  for (;;) {
    auto x = random_cyclotomic(m, h, d);
    if (!x.is_zero()) return x;
  }
}

}  // namespace testing
