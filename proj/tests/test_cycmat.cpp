#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "random.hpp"
#include "twist/bounds.hpp"
#include "twist/cycmat.hpp"
#include "twist/errors.hpp"

using namespace twist;

namespace {

CycMatrix from_rows(const std::vector<std::vector<Cyclotomic>>& rows) {
  std::vector<Cyclotomic> e;
  for (const auto& r : rows) e.insert(e.end(), r.begin(), r.end());
  return CycMatrix(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), e);
}

std::vector<std::vector<Cyclotomic>> random_rows(int n, int m) {
  std::vector<std::vector<Cyclotomic>> rows(static_cast<std::size_t>(n));
  for (auto& r : rows) {
    for (int j = 0; j < n; ++j) r.push_back(testing::random_cyclotomic(m, 5, 2));
  }
  return rows;
}

std::vector<std::vector<Cyclotomic>> multiply(const std::vector<std::vector<Cyclotomic>>& a,
                                              const std::vector<std::vector<Cyclotomic>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<Cyclotomic>> c(n, std::vector<Cyclotomic>(n, Cyclotomic::zero(a[0][0].order())));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

}  // namespace

TEST_CASE("determinant examples") {
  CHECK(det_exact(CycMatrix::identity(3)).is_one());
  const auto z = Cyclotomic::root_of_unity(3, 1);
  const std::vector<Cyclotomic> xs{Cyclotomic(1), z, z * z};
  std::vector<std::vector<Cyclotomic>> v;
  for (const auto& x : xs) v.push_back({Cyclotomic(1), x, x * x});
  const Cyclotomic expect = (xs[1] - xs[0]) * (xs[2] - xs[0]) * (xs[2] - xs[1]);
  CHECK(det_exact(from_rows(v)) == expect);

  auto dup = random_rows(4, 5);
  dup[2] = dup[0];
  CHECK(det_exact(from_rows(dup)).is_zero());
  CHECK_THROWS_AS(det_exact(CycMatrix(2, 3, std::vector<Cyclotomic>(6, Cyclotomic(1)))), SpecError);
}

TEST_CASE("pivoting through a zero leading entry") {
  std::vector<std::vector<Cyclotomic>> rows{{0, 1, 2}, {3, 0, 1}, {1, 1, 0}};
  CHECK(det_exact(from_rows(rows)) == Cyclotomic(7));
}

TEST_CASE("entries share one order") {
  std::vector<Cyclotomic> e{Cyclotomic::root_of_unity(3, 1), Cyclotomic::root_of_unity(4, 1), Cyclotomic(1),
                            Cyclotomic(2)};
  const CycMatrix m(2, 2, e);
  CHECK(m.order() == 12);
  for (const auto& x : m.entries()) CHECK(x.order() == 12);
}

TEST_CASE("property: elimination agrees with cofactor expansion") {
  for (int m : {1, 3, 4, 5, 12}) {
    for (int t = 0; t < 6; ++t) {
      const auto a = random_rows(4, m);
      CHECK(det_exact(from_rows(a)) == oracle::cofactor_det(a));
    }
  }
}

TEST_CASE("property: determinant is multiplicative") {
  for (int t = 0; t < 5; ++t) {
    const auto a = random_rows(3, 5);
    const auto b = random_rows(3, 5);
    CHECK(det_exact(from_rows(multiply(a, b))) == det_exact(from_rows(a)) * det_exact(from_rows(b)));
  }
}

TEST_CASE("coefficient matrices") {
  const DirichletCharacter one;
  const auto m1 = build_matrix(MatrixKind::M, 12, {one}, {4});
  CHECK(m1.rows() == 1);
  CHECK(m1.at(0, 0).is_one());

  const auto m = build_matrix(MatrixKind::M, 40, {one}, {4, 6});
  CHECK(m.rows() == 2);
  CHECK(m.at(0, 0).is_one());
  CHECK_FALSE(det_exact(m).is_zero());
  CHECK(m.provenance().ells == std::vector<int>{4, 6});

  const auto n = build_matrix(MatrixKind::N, 40, {one}, {4, 6});
  CHECK_FALSE(det_exact(n).is_zero());

  // Order-4 characters mod 5 with values zeta_4 and zeta_4^3 at 2: both odd, distinct chi(2).
  const auto chars5 = enumerate_characters(5, CharFilter::primitive);
  const auto p = build_matrix(MatrixKind::P, 40, {chars5[0], chars5[2]}, {3});
  CHECK_FALSE(det_exact(p).is_zero());
  CHECK_THROWS_AS(build_matrix(MatrixKind::P, 40, {chars5[0], chars5[0]}, {3}), SpecError);
  CHECK_THROWS_AS(build_matrix(MatrixKind::M, 40, {one}, {3}), SpecError);
  CHECK_THROWS_AS(build_matrix(MatrixKind::M, 14, {one}, {4}), SpecError);
}

TEST_CASE("conjecture matrices") {
  const DirichletCharacter one;
  const auto c = build_conjecture_matrix(MatrixKind::C1, 12, {one}, {4});
  CHECK(c.rows() == 1);
  CHECK(det_exact(c) == kernel_coeffs({12, 4, one, KernelKind::product}, 1)[1]);
  CHECK_THROWS_AS(build_conjecture_matrix(MatrixKind::C1, 14, {one}, {4}), SpecError);
  CHECK_THROWS_AS(build_conjecture_matrix(MatrixKind::C1, 24, {one}, {4, 6, 8}), SpecError);

  const auto odd5 = enumerate_characters(5, CharFilter::primitive);
  std::vector<DirichletCharacter> odd;
  for (const auto& chi : odd5) {
    if (chi.parity() == -1) odd.push_back(chi);
  }
  REQUIRE(odd.size() == 2);
  const auto c3 = build_conjecture_matrix(MatrixKind::C3, 24, odd, {3});
  CHECK(c3.rows() == 2);
  CHECK_FALSE(det_exact(c3).is_zero());
}

TEST_CASE("property: perturbed determinant stays above the lower bound") {
  const DirichletCharacter one;
  const std::vector<std::vector<int>> ell_sets{{4, 6}, {4, 8}, {6, 8}, {4, 6, 8}, {4, 6, 10}};
  for (long D : {1L, 5L}) {
    for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
      if (chi.parity() != 1) continue;
      for (int K = 40; K <= 80; K += 8) {
        for (const auto& ells : ell_sets) {
          if (ells.back() > (K - 2) / 2) continue;
          const auto m = build_matrix(MatrixKind::M, K, {chi}, ells);
          const int n = static_cast<int>(ells.size());
          double worst = 0;
          double sigma_prod = 1;
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              const auto s = sigma_twisted(ells[static_cast<std::size_t>(i)] - 1, chi, 1L << j);
              worst = std::max(worst, oracle::modulus(m.at(i, j) / s - Cyclotomic(1)));
            }
            sigma_prod *= std::exp2(static_cast<double>(i) * (ells[static_cast<std::size_t>(i)] - 1));
          }
          BoundParams bp;
          bp.n = n;
          bp.ells = ells;
          bp.M = worst;
          const double lb = bound_eval(BoundName::det_lb_M, bp);
          const double f = bound_eval(BoundName::f_env, bp);
          const double det = oracle::modulus(det_exact(m));
          if (f < det_budget(MatrixKind::M, n, D)) {
            CHECK(det >= lb - std::tgamma(n + 1.0) * f * std::exp2(n - 1) * sigma_prod - 1e-9 * lb);
            CHECK(det > 0);
          }
        }
      }
    }
  }
}
