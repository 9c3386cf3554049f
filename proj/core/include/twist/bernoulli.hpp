#pragma once

#include "twist/characters.hpp"
#include "twist/cyclotomic.hpp"
#include "twist/rational.hpp"

namespace twist {

/// B_n with B_1 = -1/2. Memoized.
Rational bernoulli_number(int n);

/// B_n(x) = sum_j C(n, j) B_j x^{n-j}.
Rational bernoulli_polynomial(int n, const Rational& x);

/// B_{n,chi} = D^{n-1} sum_{a=1}^{D} chi(a) B_n(a/D), in Q(zeta_order(chi)).
/// For the trivial character mod 1 this gives B_{1,1} = +1/2. Memoized per (n, D, label).
Cyclotomic generalized_bernoulli(int n, const DirichletCharacter& chi);

/// zeta(1-K) = -B_K / K for even K >= 2.
Rational zeta_neg(int K);

/// Constant term of G_{k,chi}: -B_{k,chi} / (2k).
Cyclotomic sigma0(int k, const DirichletCharacter& chi);

}  // namespace twist
