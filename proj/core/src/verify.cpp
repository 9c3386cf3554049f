#include "twist/verify.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <thread>

#include "twist/bernoulli.hpp"
#include "twist/bounds.hpp"
#include "twist/errors.hpp"
#include "twist/qseries.hpp"

namespace twist {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs body(i) for i < count on up to jobs threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(workers, count); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

void require_odd_prime(long p) {
  if (p < 3 || !is_prime(p)) throw SpecError("identity suite needs an odd prime, got " + std::to_string(p));
}

std::vector<long> odd_squarefree_upto(long D_max) {
  std::vector<long> out;
  for (long D = 1; D <= D_max; D += 2) {
    if (is_odd_squarefree(D)) out.push_back(D);
  }
  return out;
}

Json ints(const std::vector<int>& v) { return Json(v); }

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::verified:
      return "verified";
    case Status::counterexample:
      return "counterexample";
    case Status::degenerate:
      return "degenerate";
    case Status::error:
      return "error";
  }
  return "error";
}

Json VerificationReport::to_json() const {
  return Json{{"task", task}, {"params", params}, {"status", twist::to_string(status)}, {"witnesses", witnesses},
              {"timing_ms", timing_ms}};
}

int exit_code(const VerificationReport& report) {
  switch (report.status) {
    case Status::verified:
      return 0;
    case Status::counterexample:
    case Status::degenerate:
      return 1;
    case Status::error:
      return 2;
  }
  return 2;
}

const std::vector<ProductIdentity>& product_identities() {
  static const std::vector<ProductIdentity> ids{{3, 3, -1}, {3, 5, -1}, {3, 7, -1}, {3, 11, -1}, {5, 5, -1},
                                                {5, 9, -1}, {7, 7, -1}, {4, 4, 1},  {4, 6, 1},   {4, 10, 1}};
  return ids;
}

const std::vector<BracketIdentity>& bracket_identities() {
  static const std::vector<BracketIdentity> ids = [] {
    std::vector<BracketIdentity> out;
    for (auto [ell, k] : std::vector<std::pair<int, int>>{{3, 5}, {5, 7}, {3, 9}, {4, 8}}) {
      const int parity = ell % 2 == 0 ? 1 : -1;
      // ell (p - n) - k n = g (alpha p - beta n), and the sum is -conj chi(-1) p (B_k - B_ell) / 2.
      const long g = gcd(ell, ell + k);
      out.push_back({ell, k, parity, static_cast<int>(ell / g), static_cast<int>((ell + k) / g),
                     make_rational(-parity, 2 * g)});
    }
    return out;
  }();
  return ids;
}

Cyclotomic product_identity_lhs(const ProductIdentity& id, const DirichletCharacter& chi) {
  const long p = chi.modulus();
  const DirichletCharacter one;
  const DirichletCharacter bar = chi.conj();
  Cyclotomic acc = Cyclotomic::zero(chi.order());
  for (long n = 1; n <= p; ++n) {
    acc += sigma_double(id.ell - 1, one, bar, n) * sigma_double(id.k - 1, one, chi, p - n);
  }
  return acc;
}

Cyclotomic product_identity_rhs(const ProductIdentity& id, const DirichletCharacter& chi) {
  const int K = id.ell + id.k;
  const Cyclotomic bk = generalized_bernoulli(id.k, chi.conj());
  const Cyclotomic bl = generalized_bernoulli(id.ell, chi);
  Cyclotomic v = bk * make_rational(-1, 2L * id.k) - bl * make_rational(1, 2L * id.ell) +
                 bk * bl * Rational(make_rational(K, 2L * id.k * id.ell) / bernoulli_number(K));
  // The even-parity identities carry the opposite overall sign.
  return id.parity == 1 ? -v : v;
}

Cyclotomic bracket_identity_lhs(const BracketIdentity& id, const DirichletCharacter& chi) {
  const long p = chi.modulus();
  const DirichletCharacter one;
  const DirichletCharacter bar = chi.conj();
  Cyclotomic acc = Cyclotomic::zero(chi.order());
  for (long n = 1; n <= p - 1; ++n) {
    acc += sigma_double(id.ell - 1, one, bar, n) * sigma_double(id.k - 1, one, chi, p - n) *
           make_rational(id.alpha * p - id.beta * n);
  }
  return acc;
}

Cyclotomic bracket_identity_rhs(const BracketIdentity& id, const DirichletCharacter& chi) {
  const Cyclotomic diff = generalized_bernoulli(id.k, chi.conj()) - generalized_bernoulli(id.ell, chi);
  return diff * Rational(id.gamma * chi.modulus());
}

namespace {

template <class Identity, class Lhs, class Rhs>
VerificationReport run_identities(const std::string& task, long p, const std::vector<Identity>& ids, Lhs lhs,
                                  Rhs rhs) {
  const auto start = Clock::now();
  require_odd_prime(p);
  VerificationReport report;
  report.task = task;
  report.params = Json{{"p", p}};
  int skipped = 0;
  for (const auto& chi : enumerate_characters(p, CharFilter::primitive)) {
    for (const auto& id : ids) {
      if (chi.parity() != id.parity) {
        ++skipped;
        continue;
      }
      const Cyclotomic l = lhs(id, chi);
      const Cyclotomic r = rhs(id, chi);
      const bool ok = l == r;
      if (!ok) report.status = Status::counterexample;
      report.witnesses.push_back(Json{{"case", Json{{"char", chi.label()}, {"ell", id.ell}, {"k", id.k}}},
                                      {"parity", id.parity},
                                      {"lhs", to_json(l)},
                                      {"rhs", to_json(r)},
                                      {"passed", ok}});
    }
  }
  report.params["skipped_parity"] = skipped;
  report.timing_ms = elapsed_ms(start);
  return report;
}

}  // namespace

VerificationReport verify_identities_product(long p) {
  return run_identities("identities_product", p, product_identities(), product_identity_lhs, product_identity_rhs);
}

VerificationReport verify_identities_bracket(long p) {
  return run_identities("identities_bracket", p, bracket_identities(), bracket_identity_lhs, bracket_identity_rhs);
}

VerificationReport verify_zero_space(int K, long D, int n_max) {
  const auto start = Clock::now();
  if (K < 4 || K % 2 != 0 || dim_cusp_forms(K) != 0) {
    throw SpecError("zero-space check needs dim S_K = 0, got K=" + std::to_string(K));
  }
  VerificationReport report;
  report.task = "zero_space";
  report.params = Json{{"K", K}, {"D", D}, {"n_max", n_max}};
  for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
    for (KernelKind kind : {KernelKind::product, KernelKind::bracket}) {
      for (int ell : admissible_ells(K, chi, kind)) {
        const KernelSpec spec{K, ell, chi, kind};
        const auto values = kernel_coeffs(spec, n_max);
        std::vector<int> nonzero;
        for (int n = 1; n <= n_max; ++n) {
          if (!values[static_cast<std::size_t>(n)].is_zero()) nonzero.push_back(n);
        }
        if (!nonzero.empty()) report.status = Status::counterexample;
        report.witnesses.push_back(Json{{"case", to_json(spec)}, {"nonzero", ints(nonzero)}, {"passed", nonzero.empty()}});
      }
    }
  }
  report.timing_ms = elapsed_ms(start);
  return report;
}

VerificationReport verify_cuspidality(int K_min, int K_max, const std::vector<long>& moduli, int extra, int jobs) {
  const auto start = Clock::now();
  std::vector<KernelSpec> specs;
  for (int K = std::max(4, K_min + (K_min % 2)); K <= K_max; K += 2) {
    for (long D : moduli) {
      for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
        for (KernelKind kind : {KernelKind::product, KernelKind::bracket}) {
          for (int ell : admissible_ells(K, chi, kind)) specs.push_back({K, ell, chi, kind});
        }
      }
    }
  }
  std::vector<Json> rows(specs.size());
  std::vector<int> ok(specs.size(), 0);
  parallel_for(specs.size(), jobs, [&](std::size_t i) {
    const auto cert = cuspidality_certificate(specs[i], extra);
    ok[i] = cert.in_span && cert.residual_zero_through == cert.checked_through;
    rows[i] = Json{{"case", to_json(specs[i])}, {"certificate", to_json(cert)}, {"passed", ok[i] != 0}};
  });
  VerificationReport report;
  report.task = "cuspidality";
  report.params = Json{{"K_min", K_min}, {"K_max", K_max}, {"moduli", moduli}, {"extra", extra}};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!ok[i]) report.status = Status::counterexample;
    report.witnesses.push_back(std::move(rows[i]));
  }
  report.timing_ms = elapsed_ms(start);
  return report;
}

std::vector<std::vector<int>> selections(int count, int n, bool exhaustive, int cap) {
  std::vector<std::vector<int>> out;
  if (n <= 0 || n > count) return out;
  if (!exhaustive) {
    for (int s = 0; s + n <= count && static_cast<int>(out.size()) < cap; ++s) {
      std::vector<int> w(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = s + i;
      out.push_back(std::move(w));
    }
    return out;
  }
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = i;
  while (static_cast<int>(out.size()) < cap) {
    out.push_back(c);
    int i = n - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == count - n + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int t = i + 1; t < n; ++t) c[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(t - 1)] + 1;
  }
  return out;
}

namespace {

struct CellResult {
  Json witnesses = Json::array();
  bool counterexample = false;
  std::string error;
};

CellResult scan_cell(MatrixKind which, int K, long D, const ScanOptions& opt, const CoeffProvider& provider) {
  CellResult res;
  const int dim = dim_cusp_forms(K);
  const KernelKind kind = kernel_kind_of(which);
  const int top = kind == KernelKind::product ? (K - 2) / 2 : (K - 4) / 2;
  const bool exhaustive = dim <= opt.exhaustive_dim;
  const auto prims = enumerate_characters(D, CharFilter::primitive);

  auto record = [&](const std::vector<DirichletCharacter>& chis, const std::vector<int>& ells) {
    const CycMatrix m = build_conjecture_matrix(which, K, chis, ells, provider);
    const Cyclotomic det = det_exact(m);
    const bool nonzero = !det.is_zero();
    if (!nonzero) res.counterexample = true;
    Json labels = Json::array();
    for (const auto& c : chis) labels.push_back(c.label());
    res.witnesses.push_back(Json{{"case", Json{{"K", K}, {"D", D}, {"ells", ells}, {"labels", labels}}},
                                 {"n", m.rows()},
                                 {"det", to_json(det)},
                                 {"nonsingular", nonzero}});
  };

  if (!rows_over_characters(which)) {
    for (const auto& chi : prims) {
      std::vector<int> ells;
      for (int ell : admissible_ells(K, chi, kind)) {
        if (ell <= top) ells.push_back(ell);
      }
      const int n = std::min(static_cast<int>(ells.size()), dim);
      for (const auto& sel : selections(static_cast<int>(ells.size()), n, exhaustive, opt.selection_cap)) {
        std::vector<int> chosen;
        for (int i : sel) chosen.push_back(ells[static_cast<std::size_t>(i)]);
        record({chi}, chosen);
      }
    }
  } else {
    for (int ell = 3; ell <= top; ++ell) {
      std::vector<DirichletCharacter> chis;
      for (const auto& chi : prims) {
        if (chi.parity() == (ell % 2 == 0 ? 1 : -1)) chis.push_back(chi);
      }
      const int n = std::min(static_cast<int>(chis.size()), dim);
      for (const auto& sel : selections(static_cast<int>(chis.size()), n, exhaustive, opt.selection_cap)) {
        std::vector<DirichletCharacter> chosen;
        for (int i : sel) chosen.push_back(chis[static_cast<std::size_t>(i)]);
        record(chosen, {ell});
      }
    }
  }
  return res;
}

}  // namespace

VerificationReport scan_conjectures(MatrixKind which, int K_max, long D_max, const ScanOptions& options,
                                    const CoeffProvider& provider) {
  const auto start = Clock::now();
  if (which != MatrixKind::C1 && which != MatrixKind::C2 && which != MatrixKind::C3 && which != MatrixKind::C4) {
    throw SpecError("scan handles C1..C4");
  }
  std::vector<std::pair<int, long>> cells;
  for (int K = 4; K <= K_max; K += 2) {
    if (dim_cusp_forms(K) == 0) continue;
    for (long D : odd_squarefree_upto(D_max)) cells.emplace_back(K, D);
  }
  std::vector<CellResult> results(cells.size());
  parallel_for(cells.size(), options.jobs, [&](std::size_t i) {
    try {
      results[i] = scan_cell(which, cells[i].first, cells[i].second, options, provider);
    } catch (const std::exception& ex) {
      results[i].error = ex.what();
    }
  });
  VerificationReport report;
  report.task = "scan_" + to_string(which);
  report.params = Json{{"matrix", to_string(which)},
                       {"K_max", K_max},
                       {"D_max", D_max},
                       {"selection_cap", options.selection_cap},
                       {"exhaustive_dim", options.exhaustive_dim}};
  std::size_t cases = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& r = results[i];
    if (!r.error.empty()) {
      report.status = Status::error;
      report.witnesses.push_back(Json{{"case", Json{{"K", cells[i].first}, {"D", cells[i].second}}}, {"error", r.error}});
      continue;
    }
    if (r.counterexample && report.status == Status::verified) report.status = Status::counterexample;
    for (auto& w : r.witnesses) report.witnesses.push_back(std::move(w));
    cases += r.witnesses.size();
  }
  report.params["cells"] = cells.size();
  report.params["cases"] = cases;
  report.timing_ms = elapsed_ms(start);
  return report;
}

Cyclotomic maeda_epsilon_exact(int K, const DirichletCharacter& chi) {
  const KernelSpec spec{K, K / 2, chi, KernelKind::product};
  const Cyclotomic a1 = f_coeff(spec, 1);
  return a1 * (sigma0(K / 2, chi) * Rational(2)).inv() - Cyclotomic(1);
}

VerificationReport maeda_scan(long D_max, int K_cap) {
  const auto start = Clock::now();
  VerificationReport report;
  report.task = "maeda";
  report.params = Json{{"D_max", D_max}, {"K_cap", K_cap}};
  for (long D : odd_squarefree_upto(D_max)) {
    const DirichletCharacter chi = quadratic_character(D);
    for (int K = static_cast<int>(std::max(12L, 10 * D + 2)); K <= K_cap; K += 2) {
      const int sign = ((K / 2) % 2 == 0 ? 1 : -1) * chi.parity();
      Json c{{"K", K}, {"D", D}, {"char", chi.label()}};
      if (sign < 0) {
        report.witnesses.push_back(Json{{"case", c}, {"skipped", "sign hypothesis (-1)^{K/2} chi(-1) < 0"}});
        continue;
      }
      const KernelSpec spec{K, K / 2, chi, KernelKind::product};
      const Cyclotomic a1 = f_coeff(spec, 1);
      const bool nonzero = !a1.is_zero();
      if (!nonzero) report.status = Status::counterexample;
      const double eps = std::abs(maeda_epsilon_exact(K, chi).embed());
      const double bound = epsilon_maeda(K, D);
      report.witnesses.push_back(Json{{"case", c},
                                      {"a1", to_json(a1)},
                                      {"nonzero", nonzero},
                                      {"eps_abs", eps},
                                      {"eps_bound", bound},
                                      {"eps_below_one", eps < 1}});
    }
  }
  report.timing_ms = elapsed_ms(start);
  return report;
}

}  // namespace twist
