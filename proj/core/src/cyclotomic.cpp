#include "twist/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "twist/errors.hpp"

namespace twist {

namespace {

using Poly = std::vector<long>;

// Exact division of integer polynomials; the divisor is monic.
Poly divide_exact(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() <= dn) return {0};
  Poly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t j = 0; j < dn; ++j) {
    if (num[j] != 0) throw std::logic_error("cyclotomic polynomial division is not exact");
  }
  return q;
}

long checked_mul_sub(long a, long c, long b) {
  long prod = 0;
  long out = 0;
  if (__builtin_mul_overflow(c, b, &prod) || __builtin_sub_overflow(a, prod, &out)) {
    throw std::overflow_error("cyclotomic reduction table overflow");
  }
  return out;
}

std::unique_ptr<CyclotomicField> build_field(int m) {
  auto f = std::make_unique<CyclotomicField>();
  f->order = m;
  f->phi_coeffs = cyclotomic_polynomial(m);
  const int deg = static_cast<int>(f->phi_coeffs.size()) - 1;
  f->degree = deg;
  f->pow.assign(static_cast<std::size_t>(m), std::vector<long>(static_cast<std::size_t>(deg), 0));
  for (int i = 0; i < m; ++i) {
    auto& row = f->pow[static_cast<std::size_t>(i)];
    if (i < deg) {
      row[static_cast<std::size_t>(i)] = 1;
      continue;
    }
    const auto& prev = f->pow[static_cast<std::size_t>(i - 1)];
    const long top = prev[static_cast<std::size_t>(deg - 1)];
    for (int j = deg - 1; j >= 0; --j) {
      const long shifted = j > 0 ? prev[static_cast<std::size_t>(j - 1)] : 0;
      row[static_cast<std::size_t>(j)] = checked_mul_sub(shifted, top, f->phi_coeffs[static_cast<std::size_t>(j)]);
    }
  }
  return f;
}

// Folds sums (indexed by exponent mod m) into power-basis numerators.
std::vector<BigInt> reduce_sums(const CyclotomicField& field, const std::vector<BigInt>& sums) {
  std::vector<BigInt> out(static_cast<std::size_t>(field.degree));
  for (int e = 0; e < field.degree; ++e) out[static_cast<std::size_t>(e)] = sums[static_cast<std::size_t>(e)];
  for (int e = field.degree; e < field.order; ++e) {
    const BigInt& c = sums[static_cast<std::size_t>(e)];
    if (sgn(c) == 0) continue;
    const auto& row = field.pow[static_cast<std::size_t>(e)];
    for (int t = 0; t < field.degree; ++t) {
      const long r = row[static_cast<std::size_t>(t)];
      if (r > 0) {
        mpz_addmul_ui(out[static_cast<std::size_t>(t)].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(r));
      } else if (r < 0) {
        mpz_submul_ui(out[static_cast<std::size_t>(t)].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-r));
      }
    }
  }
  return out;
}

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
}

bool is_zero_poly(const QPoly& p) { return p.size() == 1 && sgn(p[0]) == 0; }

// Quotient and remainder of a by b over Q; b nonzero.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() - 1 < db) return {QPoly{Rational(0)}, a};
  QPoly q(a.size() - db, Rational(0));
  const Rational lead = b.back();
  for (std::size_t i = a.size(); i-- > db;) {
    if (sgn(a[i]) == 0) continue;
    const Rational c = a[i] / lead;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  a.resize(db == 0 ? 1 : db);
  trim(a);
  trim(q);
  return {q, a};
}

QPoly poly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly out(std::max(a.size(), q.size() + b.size() - 1), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (sgn(q[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  }
  trim(out);
  return out;
}

}  // namespace

int euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return static_cast<int>(result);
}

std::vector<long> cyclotomic_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
  Poly num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) num = divide_exact(num, cyclotomic_polynomial(d));
  }
  return num;
}

const CyclotomicField& CyclotomicField::get(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicField>> fields;
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  std::lock_guard lock(mutex);
  auto& slot = fields[order];
  if (!slot) slot = build_field(order);
  return *slot;
}

Cyclotomic::Cyclotomic() : order_(1), num_(1), den_(1) {}

Cyclotomic::Cyclotomic(long value) : order_(1), num_{BigInt(value)}, den_(1) {}

Cyclotomic::Cyclotomic(const Rational& value, int order)
    : order_(order), num_(static_cast<std::size_t>(CyclotomicField::get(order).degree)) {
  num_[0] = value.get_num();
  den_ = value.get_den();
}

Cyclotomic::Cyclotomic(int order, std::vector<BigInt> num, BigInt den)
    : order_(order), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

Cyclotomic Cyclotomic::zero(int order) { return Cyclotomic(Rational(0), order); }

Cyclotomic Cyclotomic::one(int order) { return Cyclotomic(Rational(1), order); }

Cyclotomic Cyclotomic::root_of_unity(int order, long exponent) {
  const auto& field = CyclotomicField::get(order);
  const auto& row = field.pow[static_cast<std::size_t>(mod(exponent, order))];
  std::vector<BigInt> num(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) num[i] = row[i];
  return Cyclotomic(order, std::move(num), BigInt(1));
}

Cyclotomic Cyclotomic::from_coeffs(int order, std::span<const Rational> coeffs) {
  const auto& field = CyclotomicField::get(order);
  if (static_cast<int>(coeffs.size()) != field.degree) {
    throw std::invalid_argument("coefficient count does not match phi(order)");
  }
  BigInt den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> num(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  }
  return Cyclotomic(order, std::move(num), std::move(den));
}

Cyclotomic Cyclotomic::from_exponent_sums(int order, std::span<const BigInt> sums) {
  const auto& field = CyclotomicField::get(order);
  if (static_cast<int>(sums.size()) != order) throw std::invalid_argument("exponent sums must have length order");
  std::vector<BigInt> all(sums.begin(), sums.end());
  return Cyclotomic(order, reduce_sums(field, all), BigInt(1));
}

Cyclotomic Cyclotomic::from_exponent_sums(int order, std::span<const Rational> sums) {
  const auto& field = CyclotomicField::get(order);
  if (static_cast<int>(sums.size()) != order) throw std::invalid_argument("exponent sums must have length order");
  BigInt den = 1;
  for (const auto& c : sums) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> all(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) all[i] = sums[i].get_num() * (den / sums[i].get_den());
  return Cyclotomic(order, reduce_sums(field, all), std::move(den));
}

void Cyclotomic::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  BigInt g = den_;
  bool all_zero = true;
  for (const auto& c : num_) {
    if (sgn(c) == 0) continue;
    all_zero = false;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (all_zero) {
    den_ = 1;
    return;
  }
  if (g == 1) return;
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

Rational Cyclotomic::coeff(int i) const {
  Rational r(num_.at(static_cast<std::size_t>(i)), den_);
  r.canonicalize();
  return r;
}

std::vector<Rational> Cyclotomic::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (int i = 0; i < degree(); ++i) out.push_back(coeff(i));
  return out;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : num_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_one() const {
  if (den_ != 1 || num_[0] != 1) return false;
  for (std::size_t i = 1; i < num_.size(); ++i) {
    if (sgn(num_[i]) != 0) return false;
  }
  return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i) {
    if (sgn(num_[i]) != 0) return std::nullopt;
  }
  return coeff(0);
}

Cyclotomic Cyclotomic::promoted(int new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0) throw std::invalid_argument("promotion requires order | new_order");
  const auto& field = CyclotomicField::get(new_order);
  const int step = new_order / order_;
  std::vector<BigInt> sums(static_cast<std::size_t>(new_order));
  for (std::size_t i = 0; i < num_.size(); ++i) sums[i * static_cast<std::size_t>(step)] = num_[i];
  return Cyclotomic(new_order, reduce_sums(field, sums), den_);
}

std::optional<Cyclotomic> Cyclotomic::reduced(int new_order) const {
  if (new_order == order_) return *this;
  if (order_ % new_order != 0) throw std::invalid_argument("reduction requires new_order | order");
  const int rows = degree();
  const int cols = CyclotomicField::get(new_order).degree;
  // Columns: images of zeta_{new}^j; last column: this element.
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(rows),
                                       std::vector<Rational>(static_cast<std::size_t>(cols) + 1));
  for (int j = 0; j < cols; ++j) {
    const auto img = root_of_unity(new_order, j).promoted(order_);
    for (int i = 0; i < rows; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = img.coeff(i);
  }
  for (int i = 0; i < rows; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] = coeff(i);

  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && sgn(a[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(r)]);
    auto& pr = a[static_cast<std::size_t>(r)];
    const Rational inv = 1 / pr[static_cast<std::size_t>(c)];
    for (auto& v : pr) v *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto& row = a[static_cast<std::size_t>(i)];
      const Rational f = row[static_cast<std::size_t>(c)];
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= cols; ++j) row[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i) {
    if (sgn(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)]) != 0) return std::nullopt;
  }
  std::vector<Rational> out(static_cast<std::size_t>(cols), Rational(0));
  for (int i = 0; i < r; ++i) {
    out[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)];
  }
  return from_coeffs(new_order, out);
}

Cyclotomic Cyclotomic::conj() const {
  const auto& field = CyclotomicField::get(order_);
  std::vector<BigInt> sums(static_cast<std::size_t>(order_));
  for (std::size_t i = 0; i < num_.size(); ++i) {
    sums[static_cast<std::size_t>(mod(-static_cast<long>(i), order_))] = num_[i];
  }
  return Cyclotomic(order_, reduce_sums(field, sums), den_);
}

std::optional<Cyclotomic> Cyclotomic::try_inv() const {
  if (is_zero()) return std::nullopt;
  const auto& field = CyclotomicField::get(order_);
  QPoly r0(field.phi_coeffs.size());
  for (std::size_t i = 0; i < r0.size(); ++i) r0[i] = field.phi_coeffs[i];
  QPoly r1 = coeffs();
  trim(r1);
  QPoly s0{Rational(0)};
  QPoly s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = poly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (is_zero_poly(r1)) return std::nullopt;
  }
  const Rational c = r1[0];
  // s1 * a = c (mod Phi); reduce s1 below the degree bound.
  const QPoly phi(field.phi_coeffs.begin(), field.phi_coeffs.end());
  const QPoly s_red = divmod(s1, phi).second;
  QPoly out(static_cast<std::size_t>(field.degree), Rational(0));
  for (std::size_t i = 0; i < s_red.size() && i < out.size(); ++i) out[i] = s_red[i] / c;
  return from_coeffs(order_, out);
}

Cyclotomic Cyclotomic::inv() const {
  auto r = try_inv();
  if (!r) throw DivisionByZero();
  return *r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
  if (rhs.order_ != order_) {
    const int m = static_cast<int>(lcm(order_, rhs.order_));
    *this = promoted(m);
    return *this += rhs.promoted(m);
  }
  if (rhs.is_zero()) return *this;
  if (den_ == rhs.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += rhs.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) {
      num_[i] *= rhs.den_;
      mpz_addmul(num_[i].get_mpz_t(), rhs.num_[i].get_mpz_t(), den_.get_mpz_t());
    }
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) { return *this += -rhs; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ != b.order_) {
    const int m = static_cast<int>(lcm(a.order_, b.order_));
    return a.promoted(m) * b.promoted(m);
  }
  const auto& field = CyclotomicField::get(a.order_);
  const int m = a.order_;
  std::vector<BigInt> sums(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < a.num_.size(); ++i) {
    if (sgn(a.num_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.num_.size(); ++j) {
      if (sgn(b.num_[j]) == 0) continue;
      auto& slot = sums[(i + j) % static_cast<std::size_t>(m)];
      mpz_addmul(slot.get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  return Cyclotomic(m, reduce_sums(field, sums), a.den_ * b.den_);
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
  *this = *this * rhs;
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& rhs) {
  *this = *this * rhs.inv();
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& rhs) {
  for (auto& c : num_) c *= rhs.get_num();
  den_ *= rhs.get_den();
  normalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const BigInt& rhs) {
  for (auto& c : num_) c *= rhs;
  normalize();
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ != b.order_) {
    const int m = static_cast<int>(lcm(a.order_, b.order_));
    return a.promoted(m) == b.promoted(m);
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

std::complex<double> Cyclotomic::embed() const {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    const double c = Rational(num_[i], den_).get_d();
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order_);
    acc += c * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

RootSum::RootSum(int order) : sums_(static_cast<std::size_t>(order)) {}

void RootSum::add(long exponent, const BigInt& c) { sums_[static_cast<std::size_t>(mod(exponent, order()))] += c; }

void RootSum::sub(long exponent, const BigInt& c) { sums_[static_cast<std::size_t>(mod(exponent, order()))] -= c; }

void RootSum::add(long exponent, long c) { sums_[static_cast<std::size_t>(mod(exponent, order()))] += c; }

Cyclotomic RootSum::value() const { return Cyclotomic::from_exponent_sums(order(), sums_); }

}  // namespace twist
