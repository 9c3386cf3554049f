#include "twist/bernoulli.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "twist/errors.hpp"

namespace twist {

namespace {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

Rational bernoulli_number(int n) {
  if (n < 0) throw std::invalid_argument("Bernoulli index must be non-negative");
  static std::shared_mutex mutex;
  static std::vector<Rational> table{Rational(1)};
  {
    std::shared_lock lock(mutex);
    if (static_cast<std::size_t>(n) < table.size()) return table[static_cast<std::size_t>(n)];
  }
  std::unique_lock lock(mutex);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  while (table.size() <= static_cast<std::size_t>(n)) {
    const auto m = static_cast<unsigned long>(table.size());
    Rational acc = 0;
    if (m >= 3 && m % 2 == 1) {
      table.emplace_back(0);
      continue;
    }
    for (unsigned long j = 0; j < m; ++j) {
      if (sgn(table[j]) == 0) continue;
      acc += Rational(binomial(m + 1, j)) * table[j];
    }
    Rational b = -acc / Rational(m + 1);
    b.canonicalize();
    table.push_back(b);
  }
  return table[static_cast<std::size_t>(n)];
}

Rational bernoulli_polynomial(int n, const Rational& x) {
  Rational acc = 0;
  Rational xp = 1;  // x^{n-j}, built from j = n downwards
  for (int j = n; j >= 0; --j) {
    const Rational bj = bernoulli_number(j);
    if (sgn(bj) != 0) {
      acc += Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(j))) * bj * xp;
    }
    xp *= x;
  }
  acc.canonicalize();
  return acc;
}

Cyclotomic generalized_bernoulli(int n, const DirichletCharacter& chi) {
  if (n < 0) throw std::invalid_argument("Bernoulli index must be non-negative");
  using Key = std::tuple<int, long, long>;
  static std::shared_mutex mutex;
  static std::map<Key, Cyclotomic> memo;
  const Key key{n, chi.modulus(), chi.label()};
  {
    std::shared_lock lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const long D = chi.modulus();
  const int m = chi.order();
  Cyclotomic value = Cyclotomic::zero(m);
  const bool vanishes = !chi.is_trivial() && (chi.parity() == 1) != (n % 2 == 0);
  if (!vanishes) {
    std::vector<Rational> sums(static_cast<std::size_t>(m), Rational(0));
    for (long a = 1; a <= D; ++a) {
      const int e = chi.value_exponent(a);
      if (e < 0) continue;
      sums[static_cast<std::size_t>(e)] += bernoulli_polynomial(n, make_rational(a, D));
    }
    Rational scale = n >= 1 ? rpow(Rational(D), static_cast<unsigned long>(n - 1)) : make_rational(1, D);
    for (auto& s : sums) s *= scale;
    value = Cyclotomic::from_exponent_sums(m, sums);
  }
  std::unique_lock lock(mutex);
  return memo.emplace(key, std::move(value)).first->second;
}

Rational zeta_neg(int K) {
  if (K < 2 || K % 2 != 0) throw SpecError("zeta(1-K) requires an even K >= 2");
  Rational r = -bernoulli_number(K) / Rational(K);
  r.canonicalize();
  return r;
}

Cyclotomic sigma0(int k, const DirichletCharacter& chi) {
  if (k < 1) throw SpecError("sigma0 requires k >= 1");
  return generalized_bernoulli(k, chi) * make_rational(-1, 2L * k);
}

}  // namespace twist
