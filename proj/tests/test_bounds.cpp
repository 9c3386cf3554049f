#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "twist/bernoulli.hpp"
#include "twist/bounds.hpp"
#include "twist/errors.hpp"
#include "twist/verify.hpp"

using namespace twist;

namespace {

constexpr double kSlack = 1e-9;

double value(BoundName name, int K, int ell, int n, long D, KernelKind kind = KernelKind::product) {
  BoundParams p;
  p.K = K;
  p.ell = ell;
  p.n = n;
  p.D = D;
  p.kind = kind;
  return bound_eval(name, p);
}

}  // namespace

TEST_CASE("bound examples") {
  BoundParams p;
  p.n = 5;
  p.M = 0;
  CHECK(bound_eval(BoundName::f_env, p) == 0);
  p.n = 2;
  p.M = 0.1;
  CHECK(bound_eval(BoundName::f_env, p) == doctest::Approx(0.21));
  CHECK(value(BoundName::E, 16, 3, 1, 1) == doctest::Approx(0.227).epsilon(0.002));
  BoundParams one;
  one.n = 1;
  one.ells = {4};
  CHECK(bound_eval(BoundName::det_lb_M, one) == 1);
  one.ells = {};
  one.ell = 3;
  CHECK(bound_eval(BoundName::det_lb_P, one) == 1);
  CHECK(value(BoundName::Rprime, 30, 5, 2, 3, KernelKind::bracket) ==
        doctest::Approx(2 * value(BoundName::R, 30, 5, 2, 3, KernelKind::bracket)));
}

TEST_CASE("determinant lower bounds") {
  BoundParams p;
  p.n = 3;
  p.ells = {4, 6, 8};
  // (3/4)^3 * 2^{1*5} * 2^{2*7}
  CHECK(bound_eval(BoundName::det_lb_M, p) == doctest::Approx(std::pow(0.75, 3) * std::exp2(5 + 14)));
  CHECK(bound_eval(BoundName::det_lb_N, p) == doctest::Approx(std::pow(1.5, 3) * std::exp2(5 + 14)));
  p.ell = 5;
  p.D = 7;
  CHECK(bound_eval(BoundName::det_lb_P, p) == doctest::Approx(std::pow(64.0 / 7, 3)));
  CHECK(bound_eval(BoundName::det_lb_Q, p) == doctest::Approx(std::pow(128.0 / 7, 3)));
  CHECK(det_budget(MatrixKind::M, 1, 1) == 1);
  CHECK(det_budget(MatrixKind::M, 2, 1) == doctest::Approx(0.75 / 4));
  CHECK(det_budget(MatrixKind::P, 2, 5) == doctest::Approx(0.8 / 4));
}

TEST_CASE("hypotheses are enforced") {
  CHECK_THROWS_AS(value(BoundName::E, 16, 8, 1, 1), RangeError);
  CHECK_THROWS_AS(value(BoundName::R, 16, 7, 1, 1, KernelKind::bracket), RangeError);
  CHECK_THROWS_AS(value(BoundName::E, 16, 3, 0, 1), RangeError);
  CHECK_THROWS_AS(value(BoundName::scriptE, 16, 3, 1, 9), RangeError);
  BoundParams p;
  p.n = 2;
  p.ells = {6, 4};
  CHECK_THROWS_AS(bound_eval(BoundName::det_lb_M, p), RangeError);
  try {
    value(BoundName::E, 16, 2, 1, 1);
    FAIL("expected a RangeError");
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("ell") != std::string::npos);
  }
}

TEST_CASE("maeda bound") {
  for (long D : {1L, 3L, 5L, 7L}) {
    const int K0 = static_cast<int>(10 * D + 2);
    CHECK(epsilon_maeda(K0, D) < 1);
    CHECK(epsilon_maeda(K0 + 10, D) < epsilon_maeda(K0, D));
    CHECK(epsilon_maeda(K0 + 20, D) < epsilon_maeda(K0 + 10, D));
    CHECK(epsilon_maeda(K0, D) <= maeda_uniform_bound() + kSlack);
  }
  CHECK(maeda_uniform_bound() == doctest::Approx(0.65).epsilon(0.01 / 0.65));
}

TEST_CASE("minimal weight search") {
  MinWeightQuery q;
  q.kind = MinWeightQuery::Kind::maeda;
  q.D = 1;
  auto r = min_weight(q);
  CHECK(r.found);
  CHECK(r.K <= 12);

  q.kind = MinWeightQuery::Kind::asym_product;
  q.j = 0;
  q.tol = 0.5;
  r = min_weight(q);
  CHECK(r.found);
  CHECK(r.K % 2 == 0);
  CHECK(r.value < 0.5);
  CHECK_FALSE(r.reports.empty());
  const int found_at = r.K;
  q.cap = found_at - 2;
  CHECK_FALSE(min_weight(q).found);
  q.cap = 4000;

  q.tol = 0;
  q.cap = 300;
  r = min_weight(q);
  CHECK_FALSE(r.found);

  q.kind = MinWeightQuery::Kind::asym_bracket;
  q.tol = 0.5;
  q.j = 1;
  q.D = 3;
  q.cap = 4000;
  r = min_weight(q);
  CHECK(r.found);
}

TEST_CASE("property: exact error terms are dominated by their bounds") {
  int checked = 0;
  for (int K = 8; K <= 60; K += 2) {
    for (long D : {1L, 3L, 5L, 7L}) {
      for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
        for (int ell = 3; ell <= (K - 2) / 2; ++ell) {
          if (chi.parity() != (ell % 2 == 0 ? 1 : -1)) continue;
          const KernelSpec prod{K, ell, chi, KernelKind::product};
          const oracle::ErrorTerms tp{prod};
          const auto sl0 = sigma0(ell, chi);
          const auto sk0 = sigma0(prod.k(), chi.conj());
          CHECK(oracle::modulus(sl0 / sk0) <= value(BoundName::sigma_ratio, K, ell, 1, D) + kSlack);
          CHECK(oracle::modulus(sl0 * Rational(2 / zeta_neg(K))) <= value(BoundName::zeta_ratio, K, ell, 1, D) + kSlack);
          for (int n = 1; n <= 4; ++n) {
            CHECK(oracle::modulus(tp.E(n)) <= value(BoundName::E, K, ell, n, D) + kSlack);
            CHECK(oracle::modulus(tp.scriptE(n)) <= value(BoundName::scriptE, K, ell, n, D) + kSlack);
            ++checked;
          }
          if (ell > (K - 4) / 2) continue;
          const KernelSpec br{K, ell, chi, KernelKind::bracket};
          const oracle::ErrorTerms tb{br};
          CHECK(oracle::modulus(sigma0(ell, chi) / sigma0(br.k(), chi.conj())) <=
                value(BoundName::sigma_ratio, K, ell, 1, D, KernelKind::bracket) + kSlack);
          for (int n = 1; n <= 4; ++n) {
            CHECK(oracle::modulus(tb.R(n)) <= value(BoundName::R, K, ell, n, D, KernelKind::bracket) + kSlack);
            CHECK(oracle::modulus(tb.Rprime(n)) <= value(BoundName::Rprime, K, ell, n, D, KernelKind::bracket) + kSlack);
            CHECK(oracle::modulus(tb.scriptR(n)) <= value(BoundName::scriptR, K, ell, n, D, KernelKind::bracket) + kSlack);
            CHECK(oracle::modulus(tb.scriptRprime(n)) <=
                  value(BoundName::scriptRprime, K, ell, n, D, KernelKind::bracket) + kSlack);
          }
        }
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("property: error terms reassemble the kernel coefficients") {
  // a(n) (1 + r + z' + scriptE(1)) = sl(n) + r sk(n) - z sigma_{K-1}(n) + E(n) + scriptE(n),
  // with r = sl0/sk0 and z = 2 sl0 / zeta(1-K), after dividing by sk0.
  for (long D : {1L, 3L, 5L, 15L}) {
    for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
      for (int K : {16, 24}) {
        for (int ell : admissible_ells(K, chi, KernelKind::product)) {
          if (ell > (K - 2) / 2) continue;
          const KernelSpec s{K, ell, chi, KernelKind::product};
          const oracle::ErrorTerms t{s};
          const auto sk0 = sigma0(s.k(), chi.conj());
          const auto raw = kernel_coeffs(s, 4);
          for (long n = 1; n <= 4; ++n) {
            const auto r = sigma0(ell, chi) / sk0;
            const auto z = sigma0(ell, chi) * Rational(2 / zeta_neg(K));
            const auto expect = t.sl(n) + r * t.sk(n) - z * sigma_plain(K - 1, n) + t.E(n) + t.scriptE(n);
            CHECK(raw[static_cast<std::size_t>(n)] / sk0 == expect);
          }
        }
      }
    }
  }
}

TEST_CASE("property: exact maeda epsilon is dominated") {
  for (long D : {3L, 5L, 7L}) {
    const auto chi = quadratic_character(D);
    for (int K = static_cast<int>(10 * D + 2); K <= 10 * D + 22; K += 2) {
      if (((K / 2) % 2 == 0 ? 1 : -1) * chi.parity() < 0) continue;
      const double eps = oracle::modulus(maeda_epsilon_exact(K, chi));
      CHECK(eps <= epsilon_maeda(K, D) + kSlack);
      CHECK(epsilon_maeda(K, D) < 1);
    }
  }
}
