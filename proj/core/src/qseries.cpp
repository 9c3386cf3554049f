#include "twist/qseries.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "twist/bernoulli.hpp"
#include "twist/errors.hpp"

namespace twist {

namespace {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

int common_order(const std::vector<Cyclotomic>& v, int start = 1) {
  long m = start;
  for (const auto& c : v) m = lcm(m, c.order());
  return static_cast<int>(m);
}

// Integer numerators of every coefficient at order m, scaled by a common denominator.
struct ScaledSeries {
  std::vector<std::vector<BigInt>> num;
  std::vector<bool> zero;
  BigInt den = 1;
};

ScaledSeries scale(const std::vector<Cyclotomic>& coeffs, int m) {
  ScaledSeries out;
  std::vector<Cyclotomic> promoted;
  promoted.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    promoted.push_back(c.promoted(m));
    mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), promoted.back().denominator().get_mpz_t());
  }
  for (const auto& c : promoted) {
    out.zero.push_back(c.is_zero());
    std::vector<BigInt> v = c.numerators();
    const BigInt f = out.den / c.denominator();
    for (auto& x : v) x *= f;
    out.num.push_back(std::move(v));
  }
  return out;
}

}  // namespace

QSeries::QSeries(int precision, int order, std::optional<int> weight)
    : coeffs_(static_cast<std::size_t>(precision), Cyclotomic::zero(order)), weight_(weight) {}

QSeries::QSeries(std::vector<Cyclotomic> coeffs, std::optional<int> weight)
    : coeffs_(std::move(coeffs)), weight_(weight) {}

QSeries QSeries::truncated(int precision) const {
  if (precision > this->precision()) throw RangeError("cannot extend a truncated series");
  return QSeries(std::vector<Cyclotomic>(coeffs_.begin(), coeffs_.begin() + precision), weight_);
}

QSeries QSeries::derivative(int r) const {
  QSeries out = *this;
  for (int n = 0; n < precision(); ++n) out.coeffs_[static_cast<std::size_t>(n)] *= ipow(n, static_cast<unsigned long>(r));
  if (weight_) out.weight_ = *weight_ + 2 * r;
  return out;
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
  const int n = std::min(precision(), rhs.precision());
  coeffs_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coeffs_[static_cast<std::size_t>(i)] += rhs[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& rhs) {
  const int n = std::min(precision(), rhs.precision());
  coeffs_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coeffs_[static_cast<std::size_t>(i)] -= rhs[i];
  return *this;
}

QSeries& QSeries::operator*=(const Cyclotomic& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

QSeries& QSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  const int N = std::min(a.precision(), b.precision());
  const int m = common_order(b.coeffs(), common_order(a.coeffs()));
  const auto sa = scale(a.coeffs(), m);
  const auto sb = scale(b.coeffs(), m);
  const std::size_t deg = static_cast<std::size_t>(CyclotomicField::get(m).degree);
  const Rational inv_den(BigInt(1), sa.den * sb.den);
  std::vector<Cyclotomic> out;
  out.reserve(static_cast<std::size_t>(N));
  std::vector<BigInt> acc(static_cast<std::size_t>(m));
  for (int n = 0; n < N; ++n) {
    for (auto& x : acc) x = 0;
    for (int i = 0; i <= n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(n - i);
      if (sa.zero[ui] || sb.zero[uj]) continue;
      for (std::size_t p = 0; p < deg; ++p) {
        if (sgn(sa.num[ui][p]) == 0) continue;
        for (std::size_t q = 0; q < deg; ++q) {
          mpz_addmul(acc[(p + q) % static_cast<std::size_t>(m)].get_mpz_t(), sa.num[ui][p].get_mpz_t(),
                     sb.num[uj][q].get_mpz_t());
        }
      }
    }
    Rational scale_back = inv_den;
    scale_back.canonicalize();
    out.push_back(Cyclotomic::from_exponent_sums(m, acc) * scale_back);
  }
  std::optional<int> w;
  if (a.weight() && b.weight()) w = *a.weight() + *b.weight();
  return QSeries(std::move(out), w);
}

Cyclotomic sigma_twisted(int w, const DirichletCharacter& chi, long n) {
  return sigma_double(w, chi, DirichletCharacter::trivial(), n);
}

Cyclotomic sigma_double(int w, const DirichletCharacter& chi1, const DirichletCharacter& chi2, long n) {
  if (n < 0) throw std::invalid_argument("divisor sum index must be non-negative");
  const int m = static_cast<int>(lcm(chi1.order(), chi2.order()));
  if (n == 0) {
    if (chi2.modulus() != 1) return Cyclotomic::zero(m);
    return sigma0(w + 1, chi1);
  }
  RootSum acc(m);
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    const long pair[2] = {d, n / d};
    for (int t = 0; t < (pair[0] == pair[1] ? 1 : 2); ++t) {
      const long d1 = pair[t];
      const long d2 = n / d1;
      const long e1 = chi1.exponent_at(d1, m);
      const long e2 = chi2.exponent_at(d2, m);
      if (e1 < 0 || e2 < 0) continue;
      acc.add(e1 + e2, ipow(d1, static_cast<unsigned long>(w)));
    }
  }
  return acc.value();
}

BigInt sigma_plain(int w, long n) {
  BigInt s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    s += ipow(d, static_cast<unsigned long>(w));
    if (d * d != n) s += ipow(n / d, static_cast<unsigned long>(w));
  }
  return s;
}

std::vector<RootTerms> sigma_double_table(int w, const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                                          long N, int m) {
  if (m % chi1.order() != 0 || m % chi2.order() != 0) {
    throw std::invalid_argument("table order must be a multiple of both character orders");
  }
  std::vector<std::vector<BigInt>> dense(static_cast<std::size_t>(N + 1));
  for (long d1 = 1; d1 <= N; ++d1) {
    const long e1 = chi1.exponent_at(d1, m);
    if (e1 < 0) continue;
    const BigInt p = ipow(d1, static_cast<unsigned long>(w));
    for (long d2 = 1; d1 * d2 <= N; ++d2) {
      const long e2 = chi2.exponent_at(d2, m);
      if (e2 < 0) continue;
      auto& row = dense[static_cast<std::size_t>(d1 * d2)];
      if (row.empty()) row.resize(static_cast<std::size_t>(m));
      row[static_cast<std::size_t>((e1 + e2) % m)] += p;
    }
  }
  std::vector<RootTerms> out(static_cast<std::size_t>(N + 1));
  for (long n = 1; n <= N; ++n) {
    const auto& row = dense[static_cast<std::size_t>(n)];
    for (std::size_t e = 0; e < row.size(); ++e) {
      if (sgn(row[e]) != 0) out[static_cast<std::size_t>(n)].emplace_back(static_cast<int>(e), row[e]);
    }
  }
  return out;
}

QSeries eisenstein_twisted(int k, const DirichletCharacter& chi, int N) {
  return eisenstein_double(k, chi, DirichletCharacter::trivial(), N);
}

QSeries eisenstein_double(int k, const DirichletCharacter& chi1, const DirichletCharacter& chi2, int N) {
  if (k < 3) throw SpecError("Eisenstein series weight must be at least 3");
  if (chi1.parity() * chi2.parity() != (k % 2 == 0 ? 1 : -1)) {
    throw SpecError("character parity does not match (-1)^k for weight " + std::to_string(k));
  }
  const int m = static_cast<int>(lcm(chi1.order(), chi2.order()));
  std::vector<Cyclotomic> c;
  c.reserve(static_cast<std::size_t>(N));
  if (N > 0) c.push_back(sigma_double(k - 1, chi1, chi2, 0).promoted(m));
  if (N > 1) {
    const auto table = sigma_double_table(k - 1, chi1, chi2, N - 1, m);
    for (int n = 1; n < N; ++n) {
      RootSum acc(m);
      for (const auto& [e, v] : table[static_cast<std::size_t>(n)]) acc.add(e, v);
      c.push_back(acc.value());
    }
  }
  return QSeries(std::move(c), k);
}

QSeries eisenstein_level1(int K, int N) {
  if (K < 4 || K % 2 != 0) throw SpecError("level-one Eisenstein series needs an even weight K >= 4");
  std::vector<Cyclotomic> c;
  c.reserve(static_cast<std::size_t>(N));
  if (N > 0) {
    Rational c0 = zeta_neg(K) / 2;
    c0.canonicalize();
    c.emplace_back(c0);
  }
  for (int n = 1; n < N; ++n) c.emplace_back(Rational(sigma_plain(K - 1, n)));
  return QSeries(std::move(c), K);
}

QSeries rc_bracket(const QSeries& f, int a, const QSeries& g, int b, int e) {
  if (e < 0) throw std::invalid_argument("bracket index must be non-negative");
  const int N = std::min(f.precision(), g.precision());
  QSeries out(N);
  for (int r = 0; r <= e; ++r) {
    BigInt c = binomial(e + a - 1, e - r) * binomial(e + b - 1, r);
    if (r % 2 != 0) c = -c;
    if (sgn(c) == 0) continue;
    out += (f.derivative(r) * g.derivative(e - r)) * Rational(c);
  }
  out.set_weight(a + b + 2 * e);
  return out;
}

QSeries u_operator(int m, const QSeries& f, int N) {
  if (m < 1) throw std::invalid_argument("U_m needs m >= 1");
  if (N > 0 && f.precision() < m * (N - 1) + 1) {
    throw RangeError("U_" + std::to_string(m) + " to precision " + std::to_string(N) + " needs input precision " +
                     std::to_string(m * (N - 1) + 1) + ", have " + std::to_string(f.precision()));
  }
  std::vector<Cyclotomic> c;
  c.reserve(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) c.push_back(f[m * n]);
  return QSeries(std::move(c), f.weight());
}

QSeries u_operator(int m, const QSeries& f) {
  if (m < 1) throw std::invalid_argument("U_m needs m >= 1");
  return u_operator(m, f, f.precision() == 0 ? 0 : (f.precision() - 1) / m + 1);
}

QSeries e4_series(int N) {
  std::vector<Cyclotomic> c;
  for (int n = 0; n < N; ++n) c.emplace_back(n == 0 ? Rational(1) : Rational(BigInt(240 * sigma_plain(3, n))));
  return QSeries(std::move(c), 4);
}

QSeries e6_series(int N) {
  std::vector<Cyclotomic> c;
  for (int n = 0; n < N; ++n) c.emplace_back(n == 0 ? Rational(1) : Rational(BigInt(-504 * sigma_plain(5, n))));
  return QSeries(std::move(c), 6);
}

QSeries delta_series(int N) {
  const QSeries e4 = e4_series(N);
  const QSeries e6 = e6_series(N);
  QSeries d = (e4 * e4 * e4 - e6 * e6) * make_rational(1, 1728);
  d.set_weight(12);
  return d;
}

int dim_modular_forms(int K) {
  if (K < 0 || K % 2 != 0) return 0;
  if (K == 2) return 0;
  return K / 12 + (K % 12 == 2 ? 0 : 1);
}

int dim_cusp_forms(int K) {
  if (K < 12) return 0;
  return dim_modular_forms(K) - 1;
}

const Level1Toolkit& level1_toolkit(int K, int precision) {
  if (K < 4 || K % 2 != 0) throw SpecError("level-one toolkit needs an even weight K >= 4");
  const int count = K / 12 + 1;
  const int P = std::max(precision, count + 1);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<Level1Toolkit>> memo;
  std::lock_guard lock(mutex);
  auto& slot = memo[{K, P}];
  if (slot) return *slot;

  auto kit = std::make_unique<Level1Toolkit>();
  kit->weight = K;
  kit->dim = dim_cusp_forms(K);
  kit->coeff_count = count;
  if (kit->dim > 0) {
    const QSeries e4 = e4_series(P);
    const QSeries e6 = e6_series(P);
    const QSeries delta = delta_series(P);
    auto power = [&](const QSeries& f, int e) {
      QSeries r = QSeries(P);
      r[0] = Cyclotomic(1);
      for (int i = 0; i < e; ++i) r = r * f;
      return r;
    };
    QSeries delta_j = QSeries(P);
    delta_j[0] = Cyclotomic(1);
    for (int j = 1; j <= kit->dim; ++j) {
      delta_j = delta_j * delta;
      const int r = K - 12 * j;
      const int b = r % 4 == 0 ? 0 : 1;
      const int a = (r - 6 * b) / 4;
      QSeries f = delta_j * power(e4, a) * power(e6, b);
      f.set_weight(K);
      kit->basis.push_back(std::move(f));
    }
    // Delta^j starts at q^j with leading coefficient 1; clear entries above the diagonal.
    for (int i = kit->dim - 1; i >= 0; --i) {
      for (int j = i + 1; j < kit->dim; ++j) {
        const Cyclotomic c = kit->basis[static_cast<std::size_t>(i)][j + 1];
        if (c.is_zero()) continue;
        QSeries t = kit->basis[static_cast<std::size_t>(j)];
        t *= c;
        kit->basis[static_cast<std::size_t>(i)] -= t;
      }
    }
  }
  slot = std::move(kit);
  return *slot;
}

}  // namespace twist
