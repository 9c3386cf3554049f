#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "twist/characters.hpp"
#include "twist/cyclotomic.hpp"

namespace twist {

/// Truncated q-expansion sum_{n<N} c_n q^n over a cyclotomic field.
class QSeries {
 public:
  QSeries() = default;
  QSeries(int precision, int order = 1, std::optional<int> weight = std::nullopt);
  QSeries(std::vector<Cyclotomic> coeffs, std::optional<int> weight = std::nullopt);

  int precision() const { return static_cast<int>(coeffs_.size()); }
  const Cyclotomic& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
  Cyclotomic& operator[](int n) { return coeffs_.at(static_cast<std::size_t>(n)); }
  const std::vector<Cyclotomic>& coeffs() const { return coeffs_; }
  std::optional<int> weight() const { return weight_; }
  void set_weight(std::optional<int> w) { weight_ = w; }

  QSeries truncated(int precision) const;
  /// n^r c_n: the r-th normalized derivative (1/(2 pi i))^r d^r/dz^r.
  QSeries derivative(int r = 1) const;

  QSeries& operator+=(const QSeries& rhs);
  QSeries& operator-=(const QSeries& rhs);
  QSeries& operator*=(const Cyclotomic& c);
  QSeries& operator*=(const Rational& c);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  /// Product truncated to the smaller precision.
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Cyclotomic> coeffs_;
  std::optional<int> weight_;
};

/// sigma_{w,chi}(n) = sum_{d|n} chi(d) d^w; n = 0 gives sigma0(w+1, chi).
Cyclotomic sigma_twisted(int w, const DirichletCharacter& chi, long n);

/// sigma_{w,chi1,chi2}(n) = sum_{d1 d2 = n} chi1(d1) chi2(d2) d1^w.
/// n = 0 gives 0 when chi2 is nontrivial, else sigma0(w+1, chi1).
Cyclotomic sigma_double(int w, const DirichletCharacter& chi1, const DirichletCharacter& chi2, long n);

/// sigma_w(n) for the trivial character.
BigInt sigma_plain(int w, long n);

/// sum c zeta_m^e over distinct exponents e, not reduced modulo Phi_m.
using RootTerms = std::vector<std::pair<int, BigInt>>;

/// sigma_{w,chi1,chi2}(n) for 0 <= n <= N as exponent terms at order m, with
/// order(chi1), order(chi2) | m. Entry 0 is empty; the constant term is not integral.
std::vector<RootTerms> sigma_double_table(int w, const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                                          long N, int m);

/// G_{k,chi} to precision N. Throws SpecError unless chi(-1) = (-1)^k and k >= 3.
QSeries eisenstein_twisted(int k, const DirichletCharacter& chi, int N);
/// G_{k,chi1,chi2} to precision N; chi1 chi2 must have parity (-1)^k.
QSeries eisenstein_double(int k, const DirichletCharacter& chi1, const DirichletCharacter& chi2, int N);
/// G_K = zeta(1-K)/2 + sum sigma_{K-1}(n) q^n.
QSeries eisenstein_level1(int K, int N);

/// [f,g]_e with weights a, b.
QSeries rc_bracket(const QSeries& f, int a, const QSeries& g, int b, int e);

/// Coefficient n of the result is coefficient m n of f, for n < N.
/// Throws RangeError when precision(f) < m (N - 1) + 1.
QSeries u_operator(int m, const QSeries& f, int N);
/// Largest output precision available from f.
QSeries u_operator(int m, const QSeries& f);

QSeries e4_series(int N);
QSeries e6_series(int N);
QSeries delta_series(int N);

int dim_modular_forms(int K);
int dim_cusp_forms(int K);

struct Level1Toolkit {
  int weight = 0;
  int dim = 0;
  int coeff_count = 0;
  /// Cusp forms with pivots q^1 .. q^dim, each an identity column at its pivot.
  std::vector<QSeries> basis;
};

/// Memoized per (K, precision); precision is raised to at least coeff_count + 1.
const Level1Toolkit& level1_toolkit(int K, int precision = 0);

}  // namespace twist
