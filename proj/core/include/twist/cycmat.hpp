#pragma once

#include <string>
#include <vector>

#include "twist/characters.hpp"
#include "twist/cyclotomic.hpp"
#include "twist/kernels.hpp"

namespace twist {

enum class MatrixKind { M, N, P, Q, C1, C2, C3, C4 };

std::string to_string(MatrixKind kind);
MatrixKind parse_matrix_kind(const std::string& text);
/// Kernel kind feeding the matrix: product for M, P, C1, C3; bracket otherwise.
KernelKind kernel_kind_of(MatrixKind kind);
/// True when rows run over characters (P, Q, C3, C4) rather than over ell.
bool rows_over_characters(MatrixKind kind);

struct Provenance {
  MatrixKind kind = MatrixKind::M;
  int K = 0;
  long D = 1;
  std::vector<int> ells;
  std::vector<long> labels;
};

/// Dense row-major matrix over a cyclotomic field; entries share one order.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(int rows, int cols, std::vector<Cyclotomic> entries, Provenance provenance = {});

  static CycMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int order() const { return order_; }
  const Cyclotomic& at(int i, int j) const { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
  const std::vector<Cyclotomic>& entries() const { return entries_; }
  const Provenance& provenance() const { return provenance_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  int order_ = 1;
  std::vector<Cyclotomic> entries_;
  Provenance provenance_;
};

/// Fraction-free elimination with first-nonzero pivoting. Throws SpecError if not square.
Cyclotomic det_exact(const CycMatrix& m);

/// M, N (rows over ells, one character) or P, Q (rows over characters, one ell):
/// entry (i, j) is the normalized coefficient at 2^{j-1}, j = 1..n.
CycMatrix build_matrix(MatrixKind which, int K, const std::vector<DirichletCharacter>& chis,
                       const std::vector<int>& ells, const CoeffProvider& provider = default_provider());

/// C1..C4: entry (i, j) is the raw coefficient at j = 1..n, n = number of rows <= dim S_K.
CycMatrix build_conjecture_matrix(MatrixKind which, int K, const std::vector<DirichletCharacter>& chis,
                                  const std::vector<int>& ells, const CoeffProvider& provider = default_provider());

}  // namespace twist
