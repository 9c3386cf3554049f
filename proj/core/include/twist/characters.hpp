#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "twist/cyclotomic.hpp"

namespace twist {

enum class CharFilter { all, primitive };

/// Odd primes of D in ascending order. Throws UnsupportedModulus unless D is
/// positive, odd and square-free.
std::vector<long> odd_squarefree_primes(long D);
bool is_odd_squarefree(long D);
long least_primitive_root(long p);
bool is_prime(long n);

/// A Dirichlet character modulo an odd square-free D.
///
/// For each prime p | D the component is fixed by an exponent e_p in [0, p-2]:
/// chi_p(g_p) = exp(2 pi i e_p / (p-1)), g_p the least primitive root mod p.
/// The label is the mixed-radix index sum_p e_p * prod_{q<p} (q-1).
class DirichletCharacter {
 public:
  /// Trivial character modulo 1.
  DirichletCharacter();
  DirichletCharacter(long modulus, std::vector<long> exponents);

  static DirichletCharacter trivial() { return {}; }
  static DirichletCharacter from_label(long modulus, long label);

  long modulus() const { return modulus_; }
  const std::vector<long>& primes() const { return primes_; }
  const std::vector<long>& exponents() const { return exponents_; }
  long label() const { return label_; }
  int order() const { return order_; }
  int parity() const { return parity_; }
  long conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus_; }
  bool is_trivial() const { return order_ == 1; }

  /// e with chi(a) = zeta_order^e, or -1 when gcd(a, D) > 1.
  int value_exponent(long a) const;
  /// Exponent of chi(a) as a power of zeta_m, for order() | m; -1 off units.
  long exponent_at(long a, int m) const;
  Cyclotomic evaluate(long a) const;
  /// chi(a) in Q(zeta_m), order() | m.
  Cyclotomic evaluate_at(long a, int m) const;

  DirichletCharacter conj() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus_ == b.modulus_ && a.exponents_ == b.exponents_;
  }

 private:
  long modulus_ = 1;
  std::vector<long> primes_;
  std::vector<long> exponents_;
  long label_ = 0;
  int order_ = 1;
  int parity_ = 1;
  long conductor_ = 1;
  std::shared_ptr<const std::vector<int>> table_;  // value exponents for a mod D
};

std::vector<DirichletCharacter> enumerate_characters(long D, CharFilter filter = CharFilter::all);

/// Splits a primitive chi mod D1*D2 into primitive components mod D1 and D2.
std::pair<DirichletCharacter, DirichletCharacter> decompose(const DirichletCharacter& chi, long D1, long D2);

/// sum_{a=1}^{D} chi(a) zeta_D^a, at order lcm(D, order(chi)). chi must be primitive.
Cyclotomic gauss_sum(const DirichletCharacter& chi);

/// The unique primitive quadratic character mod D (trivial for D = 1).
DirichletCharacter quadratic_character(long D);

}  // namespace twist
