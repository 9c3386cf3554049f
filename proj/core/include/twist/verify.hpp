#pragma once

#include <string>
#include <vector>

#include "twist/cycmat.hpp"
#include "twist/json_io.hpp"
#include "twist/kernels.hpp"

namespace twist {

enum class Status { verified, counterexample, degenerate, error };

std::string to_string(Status s);

struct VerificationReport {
  std::string task;
  Json params = Json::object();
  Status status = Status::verified;
  Json witnesses = Json::array();
  double timing_ms = 0.0;

  Json to_json() const;
};

/// 0 verified, 1 counterexample or degenerate, 2 error.
int exit_code(const VerificationReport& report);

/// One convolution identity for D = p prime.
struct ProductIdentity {
  int ell;
  int k;
  /// Required chi(-1).
  int parity;
};

/// sum_{n=1}^{p-1} sigma sigma (alpha p - beta n) = gamma p (B_{k,conj chi} - B_{ell,chi}).
struct BracketIdentity {
  int ell;
  int k;
  int parity;
  int alpha;
  int beta;
  Rational gamma;
};

/// The ten (ell, k) pairs with K = ell + k in {6, 8, 10, 14}, odd pairs first.
const std::vector<ProductIdentity>& product_identities();
/// (3,5), (5,7), (3,9), (4,8).
const std::vector<BracketIdentity>& bracket_identities();

/// Left side sum_{n=1}^{p} sigma_{ell-1,1,conj chi}(n) sigma_{k-1,1,chi}(p-n).
Cyclotomic product_identity_lhs(const ProductIdentity& id, const DirichletCharacter& chi);
/// Right side from generalized Bernoulli numbers with constant K/(2 k ell).
Cyclotomic product_identity_rhs(const ProductIdentity& id, const DirichletCharacter& chi);
Cyclotomic bracket_identity_lhs(const BracketIdentity& id, const DirichletCharacter& chi);
Cyclotomic bracket_identity_rhs(const BracketIdentity& id, const DirichletCharacter& chi);

/// Throws SpecError unless p is an odd prime.
VerificationReport verify_identities_product(long p);
VerificationReport verify_identities_bracket(long p);

/// Throws SpecError unless dim S_K = 0.
VerificationReport verify_zero_space(int K, long D, int n_max);

/// Cuspidality certificates for every valid spec with K in [K_min, K_max], D in moduli.
VerificationReport verify_cuspidality(int K_min, int K_max, const std::vector<long>& moduli, int extra = 6,
                                      int jobs = 1);

struct ScanOptions {
  int jobs = 1;
  /// Per-cell cap on enumerated selections.
  int selection_cap = 10000;
  /// Exhaustive subsets up to this dim S_K, sliding windows above it.
  int exhaustive_dim = 4;
};

/// Rows of each C matrix drawn from the admissible ells (C1, C2) or primitive
/// characters (C3, C4) of every cell (K, D); n = min(available, dim S_K).
VerificationReport scan_conjectures(MatrixKind which, int K_max, long D_max, const ScanOptions& options = {},
                                    const CoeffProvider& provider = default_provider());

/// a_{K,K/2,chi}(1) != 0 for quadratic chi mod D (trivial for D = 1) and even K
/// from max(12, 10D+2) to K_cap with (-1)^{K/2} chi(-1) > 0.
VerificationReport maeda_scan(long D_max, int K_cap);

/// Exact eps_{K,D} = a_{K,K/2,chi}(1) / (2 sigma_{K/2-1,chi}(0)) - 1.
Cyclotomic maeda_epsilon_exact(int K, const DirichletCharacter& chi);

/// Selections of n indices out of count: all subsets in lexicographic order when
/// exhaustive, else consecutive windows; at most cap of them.
std::vector<std::vector<int>> selections(int count, int n, bool exhaustive, int cap);

}  // namespace twist
