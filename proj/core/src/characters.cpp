#include "twist/characters.hpp"

#include <numeric>
#include <string>

#include "twist/errors.hpp"

namespace twist {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_odd_squarefree(long D) {
  if (D < 1 || D % 2 == 0) return false;
  for (long p = 3; p * p <= D; p += 2) {
    if (D % (p * p) == 0) return false;
  }
  return true;
}

std::vector<long> odd_squarefree_primes(long D) {
  if (!is_odd_squarefree(D)) {
    throw UnsupportedModulus("modulus " + std::to_string(D) + " is not a positive odd square-free integer");
  }
  std::vector<long> primes;
  long n = D;
  for (long p = 3; p * p <= n; p += 2) {
    if (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

long least_primitive_root(long p) {
  if (p == 2) return 1;
  std::vector<long> factors;
  long m = p - 1;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    factors.push_back(q);
    while (m % q == 0) m /= q;
  }
  if (m > 1) factors.push_back(m);
  auto powmod = [p](long b, long e) {
    long r = 1;
    b %= p;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : factors) {
      if (powmod(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

DirichletCharacter::DirichletCharacter() : table_(std::make_shared<const std::vector<int>>(std::vector<int>{0})) {}

DirichletCharacter::DirichletCharacter(long modulus, std::vector<long> exponents)
    : modulus_(modulus), primes_(odd_squarefree_primes(modulus)), exponents_(std::move(exponents)) {
  if (exponents_.size() != primes_.size()) throw SpecError("exponent count does not match prime count");
  long radix = 1;
  long order = 1;
  conductor_ = 1;
  parity_ = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const long p = primes_[i];
    const long e = exponents_[i];
    if (e < 0 || e > p - 2) throw SpecError("character exponent out of range");
    label_ += e * radix;
    radix *= p - 1;
    order = lcm(order, (p - 1) / gcd(e, p - 1));
    if (e != 0) conductor_ *= p;
    if (e % 2 != 0) parity_ = -parity_;
  }
  order_ = static_cast<int>(order);

  // chi(a) = zeta_order^{sum_p c_p ind_p(a)}, with c_p = e_p * order / (p-1).
  std::vector<int> table(static_cast<std::size_t>(modulus_), -1);
  std::vector<std::vector<long>> index(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const long p = primes_[i];
    index[i].assign(static_cast<std::size_t>(p), -1);
    const long g = least_primitive_root(p);
    long x = 1;
    for (long t = 0; t < p - 1; ++t) {
      index[i][static_cast<std::size_t>(x)] = t;
      x = x * g % p;
    }
  }
  for (long a = 0; a < modulus_; ++a) {
    long exp = 0;
    bool unit = true;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      const long p = primes_[i];
      const long ind = index[i][static_cast<std::size_t>(a % p)];
      if (ind < 0) {
        unit = false;
        break;
      }
      exp += exponents_[i] * order / (p - 1) * ind;
    }
    if (unit) table[static_cast<std::size_t>(a)] = static_cast<int>(mod(exp, order));
  }
  if (modulus_ == 1) table[0] = 0;
  table_ = std::make_shared<const std::vector<int>>(std::move(table));
}

DirichletCharacter DirichletCharacter::from_label(long modulus, long label) {
  const auto primes = odd_squarefree_primes(modulus);
  std::vector<long> exps;
  long rest = label;
  if (label < 0) throw SpecError("character label must be non-negative");
  for (long p : primes) {
    exps.push_back(rest % (p - 1));
    rest /= p - 1;
  }
  if (rest != 0) throw SpecError("character label " + std::to_string(label) + " out of range for modulus " +
                                 std::to_string(modulus));
  return DirichletCharacter(modulus, std::move(exps));
}

int DirichletCharacter::value_exponent(long a) const {
  return (*table_)[static_cast<std::size_t>(mod(a, modulus_))];
}

long DirichletCharacter::exponent_at(long a, int m) const {
  const int e = value_exponent(a);
  if (e < 0) return -1;
  return static_cast<long>(e) * (m / order_);
}

Cyclotomic DirichletCharacter::evaluate(long a) const { return evaluate_at(a, order_); }

Cyclotomic DirichletCharacter::evaluate_at(long a, int m) const {
  if (m % order_ != 0) throw std::invalid_argument("evaluation order must be a multiple of the character order");
  const long e = exponent_at(a, m);
  if (e < 0) return Cyclotomic::zero(m);
  return Cyclotomic::root_of_unity(m, e);
}

DirichletCharacter DirichletCharacter::conj() const {
  if (modulus_ == 1) return {};
  std::vector<long> exps(exponents_.size());
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = mod(-exponents_[i], primes_[i] - 1);
  return DirichletCharacter(modulus_, std::move(exps));
}

std::vector<DirichletCharacter> enumerate_characters(long D, CharFilter filter) {
  const auto primes = odd_squarefree_primes(D);
  long count = 1;
  for (long p : primes) count *= p - 1;
  std::vector<DirichletCharacter> out;
  for (long label = 0; label < count; ++label) {
    auto chi = D == 1 ? DirichletCharacter() : DirichletCharacter::from_label(D, label);
    if (filter == CharFilter::primitive && !chi.is_primitive()) continue;
    out.push_back(std::move(chi));
  }
  return out;
}

std::pair<DirichletCharacter, DirichletCharacter> decompose(const DirichletCharacter& chi, long D1, long D2) {
  if (D1 < 1 || D2 < 1 || D1 * D2 != chi.modulus() || gcd(D1, D2) != 1) {
    throw SpecError("invalid factorization " + std::to_string(D1) + "*" + std::to_string(D2) + " of modulus " +
                    std::to_string(chi.modulus()));
  }
  if (!chi.is_primitive()) throw SpecError("decompose requires a primitive character");
  std::vector<long> e1;
  std::vector<long> e2;
  for (std::size_t i = 0; i < chi.primes().size(); ++i) {
    (D1 % chi.primes()[i] == 0 ? e1 : e2).push_back(chi.exponents()[i]);
  }
  auto make = [](long m, std::vector<long> e) { return m == 1 ? DirichletCharacter() : DirichletCharacter(m, std::move(e)); };
  return {make(D1, std::move(e1)), make(D2, std::move(e2))};
}

Cyclotomic gauss_sum(const DirichletCharacter& chi) {
  if (!chi.is_primitive()) throw SpecError("Gauss sum requires a primitive character");
  const long D = chi.modulus();
  const int m = static_cast<int>(lcm(D, chi.order()));
  RootSum acc(m);
  for (long a = 1; a <= D; ++a) {
    const long e = chi.exponent_at(a, m);
    if (e < 0) continue;
    acc.add(e + a * (m / D), 1L);
  }
  return acc.value();
}

DirichletCharacter quadratic_character(long D) {
  const auto primes = odd_squarefree_primes(D);
  if (D == 1) return {};
  std::vector<long> exps;
  for (long p : primes) exps.push_back((p - 1) / 2);
  return DirichletCharacter(D, std::move(exps));
}

}  // namespace twist
