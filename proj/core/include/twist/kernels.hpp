#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twist/characters.hpp"
#include "twist/cyclotomic.hpp"

namespace twist {

enum class KernelKind { product, bracket };

std::string to_string(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& text);

/// Index data of a kernel form: the product trace (F) or the bracket trace (G).
struct KernelSpec {
  int K = 12;
  int ell = 4;
  DirichletCharacter chi;
  KernelKind kind = KernelKind::product;

  /// K - ell for the product, K - 2 - ell for the bracket.
  int k() const { return kind == KernelKind::product ? K - ell : K - 2 - ell; }
  int max_ell() const { return kind == KernelKind::product ? K / 2 : (K - 4) / 2; }
};

/// Throws SpecError naming the violated hypothesis: K even, chi primitive,
/// chi(-1) = (-1)^ell, 3 <= ell <= K/2 (product) or (K-4)/2 (bracket).
void validate(const KernelSpec& spec);
bool is_valid(const KernelSpec& spec);

/// Admissible ell for (K, chi, kind) in ascending order.
std::vector<int> admissible_ells(int K, const DirichletCharacter& chi, KernelKind kind);

/// q^n coefficient of Tr(G_{ell,chi} G_{k,conj chi}).
Cyclotomic trace_product_coeff(const KernelSpec& spec, long n);
/// a_{K,ell,chi}(n); zero at n = 0.
Cyclotomic f_coeff(const KernelSpec& spec, long n);
/// b_{K,ell,chi}(n); zero at n = 0.
Cyclotomic trace_bracket_coeff(const KernelSpec& spec, long n);

/// Coefficients 0..n_max of the kernel form (a or b by kind), at order ord(chi).
/// Memoized per spec.
std::vector<Cyclotomic> kernel_coeffs(const KernelSpec& spec, int n_max);

struct CoeffTable {
  KernelSpec spec;
  /// Indexed by n, entry 0 included.
  std::vector<Cyclotomic> values;
  std::optional<std::vector<Cyclotomic>> normalized;
  /// Set by normalize when values[1] = 0.
  bool degenerate = false;
};

CoeffTable coefficient_table(const KernelSpec& spec, int n_max);
/// normalized[n] = values[n] / values[1]; flags degenerate instead when values[1] = 0.
CoeffTable normalize(CoeffTable table);

/// Normalized coefficient a(n)/a(1) or b(n)/b(1). Throws SpecError when a(1) = 0.
Cyclotomic normalized_coeff(const KernelSpec& spec, long n);

struct CuspidalityCertificate {
  bool in_span = false;
  /// Largest t with the residual vanishing on 0..t; -1 when the constant term is nonzero.
  int residual_zero_through = -1;
  int coeff_count = 0;
  int checked_through = 0;
  int dim = 0;
  /// Coordinates in the echelon basis of S_K.
  std::vector<Cyclotomic> coordinates;
};

/// Tests coefficients 0..coeff_count+extra of the kernel form against S_K.
CuspidalityCertificate cuspidality_certificate(const KernelSpec& spec, int extra = 6);
/// Same test for an arbitrary coefficient vector (index 0 included).
CuspidalityCertificate cuspidality_certificate(int K, const std::vector<Cyclotomic>& coeffs);

/// Source of kernel coefficients 0..n_max; lets callers interpose a cache.
using CoeffProvider = std::function<std::vector<Cyclotomic>(const KernelSpec&, int n_max)>;
CoeffProvider default_provider();

}  // namespace twist
