#pragma once

#include <string>
#include <vector>

#include "twist/cycmat.hpp"
#include "twist/kernels.hpp"

namespace twist {

enum class BoundName {
  sigma_ratio,
  zeta_ratio,
  E,
  R,
  Rprime,
  scriptE,
  scriptR,
  scriptRprime,
  det_lb_M,
  det_lb_N,
  det_lb_P,
  det_lb_Q,
  f_env,
};

std::string to_string(BoundName name);
BoundName parse_bound_name(const std::string& text);

/// Parameters of the explicit inequalities; each bound reads the fields it needs.
struct BoundParams {
  int K = 0;
  int ell = 0;
  int n = 1;
  long D = 1;
  int j = 0;
  /// Perturbation size for f_env.
  double M = 0.0;
  /// Ascending ells for det_lb_M and det_lb_N.
  std::vector<int> ells;
  /// Selects k = K - ell (product) or K - 2 - ell (bracket) for sigma_ratio.
  KernelKind kind = KernelKind::product;
};

struct BoundReport {
  std::string name;
  BoundParams params;
  double value = 0.0;
  bool certified = false;
};

/// Right-hand side of the named inequality. Throws RangeError naming the
/// violated hypothesis when params fall outside the proved range.
double bound_eval(BoundName name, const BoundParams& params);
/// certified = value < 1.
BoundReport bound_report(BoundName name, const BoundParams& params);

/// Perturbation budget n!^{-1} (3/4)^{n(n-1)/2} 2^{1-n} for M and N, and
/// n!^{-1} 2^{1-n} (4/D)^{n(n-1)/2} for P and Q.
double det_budget(MatrixKind which, int n, long D);

/// Upper bound for |a(2^j)/sigma_{ell-1,chi}(2^j) - 1| (product) or
/// |b(2^j)/(2^j sigma_{ell-1,chi}(2^j)) - 1| (bracket) assembled from the lemma
/// bounds as (A + B)/(1 - B); infinity when B >= 1. Appends the terms used to parts.
double asym_aggregate(KernelKind kind, int K, int ell, int j, long D, std::vector<BoundReport>* parts = nullptr);

/// Explicit upper bound for |eps_{K,D}| in a_{K,K/2,chi}(1) = 2 sigma_{K/2-1,chi}(0)(1 + eps).
double epsilon_maeda(int K, long D);
/// The K - 2 = 10 D, D -> 1 estimate that dominates every epsilon_maeda(10D+2, D).
double maeda_uniform_bound();

struct MinWeightQuery {
  enum class Kind { asym_product, asym_bracket, maeda };
  Kind kind = Kind::maeda;
  int j = 0;
  long D = 1;
  double tol = 0.5;
  int cap = 4000;
};

struct MinWeightResult {
  bool found = false;
  int K = 0;
  /// Value of the aggregate at K (or at the cap when not found).
  double value = 0.0;
  std::vector<BoundReport> reports;
};

/// Smallest even K whose aggregate is below tol (maximized over admissible ell),
/// or with epsilon_maeda(K, D) < 1. Linear scan up to cap.
MinWeightResult min_weight(const MinWeightQuery& query);

}  // namespace twist
