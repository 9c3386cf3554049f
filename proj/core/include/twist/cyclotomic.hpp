#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "twist/rational.hpp"

namespace twist {

/// Arithmetic data of Q(zeta_m): Phi_m and the power-basis images of zeta^i, 0 <= i < m.
struct CyclotomicField {
  int order = 1;
  int degree = 1;                      // phi(m)
  std::vector<long> phi_coeffs;        // Phi_m, ascending, monic
  std::vector<std::vector<long>> pow;  // pow[i] = zeta^i in the power basis

  static const CyclotomicField& get(int order);
};

int euler_phi(long n);

/// Integer coefficients of Phi_m, ascending.
std::vector<long> cyclotomic_polynomial(int m);

/// An element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
///
/// Stored as an integer numerator vector over a positive common denominator
/// with gcd(content, den) = 1, so the representation at a given order is
/// canonical. Elements of different orders are compared and combined at the
/// lcm of their orders; no automatic order minimization takes place.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
  explicit Cyclotomic(const Rational& value, int order = 1);

  static Cyclotomic zero(int order = 1);
  static Cyclotomic one(int order = 1);
  /// zeta_order^exponent
  static Cyclotomic root_of_unity(int order, long exponent);
  static Cyclotomic from_coeffs(int order, std::span<const Rational> coeffs);
  /// sum_e sums[e] * zeta_order^e, with sums.size() == order.
  static Cyclotomic from_exponent_sums(int order, std::span<const BigInt> sums);
  static Cyclotomic from_exponent_sums(int order, std::span<const Rational> sums);

  int order() const { return order_; }
  int degree() const { return static_cast<int>(num_.size()); }
  Rational coeff(int i) const;
  std::vector<Rational> coeffs() const;
  const std::vector<BigInt>& numerators() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const;
  bool is_one() const;
  std::optional<Rational> as_rational() const;

  /// Image in Q(zeta_m') for order() | m'.
  Cyclotomic promoted(int new_order) const;
  /// Preimage in Q(zeta_m) for m | order(); empty if the element is not in that subfield.
  std::optional<Cyclotomic> reduced(int new_order) const;

  /// Complex conjugation, zeta -> zeta^{-1}.
  Cyclotomic conj() const;
  std::optional<Cyclotomic> try_inv() const;
  /// Throws DivisionByZero for zero.
  Cyclotomic inv() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);
  Cyclotomic& operator/=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Rational& rhs);
  Cyclotomic& operator*=(const BigInt& rhs);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
  friend Cyclotomic operator*(Cyclotomic a, const BigInt& z) { return a *= z; }
  friend Cyclotomic operator*(const BigInt& z, Cyclotomic a) { return a *= z; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Value at zeta_m = exp(2 pi i / m) in double precision.
  std::complex<double> embed() const;

 private:
  Cyclotomic(int order, std::vector<BigInt> num, BigInt den);
  void normalize();

  int order_ = 1;
  std::vector<BigInt> num_;
  BigInt den_ = 1;
};

/// Accumulates sum c_e zeta_m^e with integer c_e, reducing once at the end.
class RootSum {
 public:
  explicit RootSum(int order);
  void add(long exponent, const BigInt& c);
  void sub(long exponent, const BigInt& c);
  void add(long exponent, long c);
  int order() const { return static_cast<int>(sums_.size()); }
  Cyclotomic value() const;

 private:
  std::vector<BigInt> sums_;
};

}  // namespace twist
