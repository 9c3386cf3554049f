#include "twist/cycmat.hpp"

#include <set>
#include <utility>

#include "twist/errors.hpp"
#include "twist/qseries.hpp"

namespace twist {

std::string to_string(MatrixKind kind) {
  static const char* names[] = {"M", "N", "P", "Q", "C1", "C2", "C3", "C4"};
  return names[static_cast<int>(kind)];
}

MatrixKind parse_matrix_kind(const std::string& text) {
  for (int i = 0; i < 8; ++i) {
    if (to_string(static_cast<MatrixKind>(i)) == text) return static_cast<MatrixKind>(i);
  }
  throw SpecError("unknown matrix kind '" + text + "'");
}

KernelKind kernel_kind_of(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::M:
    case MatrixKind::P:
    case MatrixKind::C1:
    case MatrixKind::C3:
      return KernelKind::product;
    default:
      return KernelKind::bracket;
  }
}

bool rows_over_characters(MatrixKind kind) {
  return kind == MatrixKind::P || kind == MatrixKind::Q || kind == MatrixKind::C3 || kind == MatrixKind::C4;
}

CycMatrix::CycMatrix(int rows, int cols, std::vector<Cyclotomic> entries, Provenance provenance)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), provenance_(std::move(provenance)) {
  if (rows < 0 || cols < 0 || entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::invalid_argument("matrix shape does not match entry count");
  }
  long m = 1;
  for (const auto& e : entries_) m = lcm(m, e.order());
  order_ = static_cast<int>(m);
  for (auto& e : entries_) e = e.promoted(order_);
}

CycMatrix CycMatrix::identity(int n) {
  std::vector<Cyclotomic> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = Cyclotomic(1);
  return CycMatrix(n, n, std::move(e));
}

Cyclotomic det_exact(const CycMatrix& mat) {
  if (mat.rows() != mat.cols()) throw SpecError("determinant of a non-square matrix");
  const int n = mat.rows();
  if (n == 0) return Cyclotomic::one(mat.order());
  std::vector<std::vector<Cyclotomic>> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)].push_back(mat.at(i, j));
  }
  bool negate = false;
  Cyclotomic prev = Cyclotomic::one(mat.order());
  for (int k = 0; k < n - 1; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (a[uk][uk].is_zero()) {
      int p = k + 1;
      while (p < n && a[static_cast<std::size_t>(p)][uk].is_zero()) ++p;
      if (p == n) return Cyclotomic::zero(mat.order());
      std::swap(a[uk], a[static_cast<std::size_t>(p)]);
      negate = !negate;
    }
    const Cyclotomic prev_inv = prev.inv();
    for (int i = k + 1; i < n; ++i) {
      auto& row = a[static_cast<std::size_t>(i)];
      for (int j = k + 1; j < n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        row[uj] = (row[uj] * a[uk][uk] - row[uk] * a[uk][uj]) * prev_inv;
      }
      row[uk] = Cyclotomic::zero(mat.order());
    }
    prev = a[uk][uk];
  }
  Cyclotomic d = a.back().back();
  return negate ? -d : d;
}

namespace {

std::vector<KernelSpec> row_specs(MatrixKind which, int K, const std::vector<DirichletCharacter>& chis,
                                  const std::vector<int>& ells) {
  std::vector<KernelSpec> rows;
  const KernelKind kind = kernel_kind_of(which);
  if (rows_over_characters(which)) {
    if (ells.size() != 1) throw SpecError(to_string(which) + " needs exactly one ell");
    for (const auto& chi : chis) rows.push_back({K, ells[0], chi, kind});
  } else {
    if (chis.size() != 1) throw SpecError(to_string(which) + " needs exactly one character");
    for (int ell : ells) rows.push_back({K, ell, chis[0], kind});
  }
  for (const auto& s : rows) validate(s);
  if (rows.empty()) throw SpecError("matrix needs at least one row");
  return rows;
}

Provenance provenance_of(MatrixKind which, int K, const std::vector<DirichletCharacter>& chis,
                         const std::vector<int>& ells) {
  Provenance p{which, K, chis.empty() ? 1 : chis[0].modulus(), ells, {}};
  for (const auto& c : chis) p.labels.push_back(c.label());
  return p;
}

}  // namespace

CycMatrix build_matrix(MatrixKind which, int K, const std::vector<DirichletCharacter>& chis,
                       const std::vector<int>& ells, const CoeffProvider& provider) {
  if (which != MatrixKind::M && which != MatrixKind::N && which != MatrixKind::P && which != MatrixKind::Q) {
    throw SpecError("build_matrix handles M, N, P, Q");
  }
  const auto rows = row_specs(which, K, chis, ells);
  const int n = static_cast<int>(rows.size());
  if (rows_over_characters(which)) {
    std::set<std::vector<BigInt>> seen;
    // chi_i(2) compared in a common field
    long m = 1;
    for (const auto& chi : chis) m = lcm(m, chi.order());
    for (const auto& chi : chis) {
      const Cyclotomic v = chi.evaluate_at(2, static_cast<int>(m));
      auto key = v.numerators();
      if (!seen.insert(key).second) throw SpecError("characters with equal values at 2 in " + to_string(which));
    }
  }
  const int top = 1 << (n - 1);
  std::vector<Cyclotomic> entries;
  for (const auto& s : rows) {
    const auto coeffs = provider(s, top);
    const Cyclotomic& a1 = coeffs[1];
    if (a1.is_zero()) {
      throw SpecError("degenerate kernel: coefficient 1 vanishes (K=" + std::to_string(K) + ", ell=" +
                      std::to_string(s.ell) + ", label=" + std::to_string(s.chi.label()) + ")");
    }
    const Cyclotomic inv = a1.inv();
    for (int j = 0; j < n; ++j) entries.push_back(coeffs[static_cast<std::size_t>(1 << j)] * inv);
  }
  return CycMatrix(n, n, std::move(entries), provenance_of(which, K, chis, ells));
}

CycMatrix build_conjecture_matrix(MatrixKind which, int K, const std::vector<DirichletCharacter>& chis,
                                  const std::vector<int>& ells, const CoeffProvider& provider) {
  if (which != MatrixKind::C1 && which != MatrixKind::C2 && which != MatrixKind::C3 && which != MatrixKind::C4) {
    throw SpecError("build_conjecture_matrix handles C1..C4");
  }
  const auto rows = row_specs(which, K, chis, ells);
  const int n = static_cast<int>(rows.size());
  if (n > dim_cusp_forms(K)) {
    throw SpecError("matrix size " + std::to_string(n) + " exceeds dim S_" + std::to_string(K) + " = " +
                    std::to_string(dim_cusp_forms(K)));
  }
  std::vector<Cyclotomic> entries;
  for (const auto& s : rows) {
    const auto coeffs = provider(s, n);
    for (int j = 1; j <= n; ++j) entries.push_back(coeffs[static_cast<std::size_t>(j)]);
  }
  return CycMatrix(n, n, std::move(entries), provenance_of(which, K, chis, ells));
}

}  // namespace twist
