// Prints PASS/FAIL for each acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "twist/bernoulli.hpp"
#include "twist/bounds.hpp"
#include "twist/verify.hpp"

using namespace twist;

namespace {

constexpr double kSlack = 1e-9;
constexpr double kMaedaTarget = 0.65;
constexpr double kMaedaTol = 0.01;

const std::vector<long> kPrimes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

std::vector<long> odd_squarefree(long hi) {
  std::vector<long> out;
  for (long D = 1; D <= hi; D += 2) {
    if (is_odd_squarefree(D)) out.push_back(D);
  }
  return out;
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Outcome identities(bool bracket) {
  Outcome o;
  std::size_t cases = 0;
  for (long p : kPrimes) {
    const auto r = bracket ? verify_identities_bracket(p) : verify_identities_product(p);
    cases += r.witnesses.size();
    if (r.status != Status::verified) o.fail("p=" + std::to_string(p) + " " + to_string(r.status));
    // Every primitive character of matching parity must see every identity of that parity.
    for (const auto& chi : enumerate_characters(p, CharFilter::primitive)) {
      std::size_t expect = 0;
      if (bracket) {
        for (const auto& id : bracket_identities()) expect += id.parity == chi.parity();
      } else {
        for (const auto& id : product_identities()) expect += id.parity == chi.parity();
      }
      std::size_t seen = 0;
      for (const auto& w : r.witnesses) seen += w["case"]["char"] == chi.label();
      if (seen != expect) o.fail("missing cases for p=" + std::to_string(p));
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " exact equalities, p <= 37";
  return o;
}

Outcome zero_space() {
  Outcome o;
  std::size_t specs = 0;
  for (int K : {6, 8, 10, 14}) {
    for (long D : {1L, 3L, 5L, 7L, 11L, 13L, 15L}) {
      const auto r = verify_zero_space(K, D, 20);
      specs += r.witnesses.size();
      if (r.status != Status::verified) o.fail("K=" + std::to_string(K) + " D=" + std::to_string(D));
    }
  }
  if (o.ok) o.detail = std::to_string(specs) + " specs vanish through n=20";
  return o;
}

Outcome cuspidality() {
  Outcome o;
  const auto r = verify_cuspidality(12, 30, {1, 3, 5, 7});
  for (const auto& w : r.witnesses) {
    const auto& c = w["certificate"];
    if (!c["in_span"].get<bool>() || c["residual_zero_through"].get<int>() < c["coeff_count"].get<int>()) {
      o.fail("spec " + w["case"].dump());
    }
  }
  if (r.status != Status::verified) o.fail(to_string(r.status));
  if (o.ok) o.detail = std::to_string(r.witnesses.size()) + " certificates in span";
  return o;
}

Outcome scans() {
  Outcome o;
  std::string detail;
  for (MatrixKind which : {MatrixKind::C1, MatrixKind::C2, MatrixKind::C3, MatrixKind::C4}) {
    const auto r = scan_conjectures(which, 24, 15);
    if (r.status != Status::verified) o.fail(to_string(which) + " " + to_string(r.status));
    detail += to_string(which) + ":" + std::to_string(r.witnesses.size()) + " ";
  }
  if (o.ok) o.detail = detail + "non-singular";
  return o;
}

Outcome tau() {
  Outcome o;
  const auto delta = delta_series(11);
  const KernelSpec s{12, 4, DirichletCharacter(), KernelKind::product};
  const auto t = normalize(coefficient_table(s, 10));
  if (!t.normalized) {
    o.fail("degenerate");
    return o;
  }
  for (int n = 1; n <= 10; ++n) {
    if ((*t.normalized)[static_cast<std::size_t>(n)] != delta[n]) o.fail("n=" + std::to_string(n));
  }
  if ((*t.normalized)[2] != Cyclotomic(-24)) o.fail("a(2) != -24");
  if (o.ok) o.detail = "tau(1..10) matched, a(2) = -24";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t specs = 0;
  for (int K = 6; K <= 16; K += 2) {
    for (long D : odd_squarefree(15)) {
      for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
        for (KernelKind kind : {KernelKind::product, KernelKind::bracket}) {
          for (int ell : admissible_ells(K, chi, kind)) {
            const KernelSpec s{K, ell, chi, kind};
            const auto trace = oracle::trace_by_series(s, 10);
            const auto kern = oracle::kernel_by_series(s, 10);
            const auto closed = kernel_coeffs(s, 10);
            for (int n = 0; n <= 10; ++n) {
              const Cyclotomic t = kind == KernelKind::product ? trace_product_coeff(s, n) : trace_bracket_coeff(s, n);
              if (t != trace[static_cast<std::size_t>(n)] || closed[static_cast<std::size_t>(n)] != kern[static_cast<std::size_t>(n)]) {
                o.fail("K=" + std::to_string(K) + " ell=" + std::to_string(ell) + " D=" + std::to_string(D) +
                       " n=" + std::to_string(n));
              }
            }
            ++specs;
          }
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(specs) + " specs, n <= 10";
  return o;
}

double bound(BoundName name, int K, int ell, int n, long D, KernelKind kind) {
  BoundParams p;
  p.K = K;
  p.ell = ell;
  p.n = n;
  p.D = D;
  p.kind = kind;
  return bound_eval(name, p);
}

Outcome domination() {
  Outcome o;
  std::size_t checks = 0;
  double worst_ratio = 0;
  auto check = [&](const Cyclotomic& exact, double b, const std::string& what) {
    const double v = oracle::modulus(exact);
    ++checks;
    if (b > 0) worst_ratio = std::max(worst_ratio, v / b);
    if (v > b + kSlack) o.fail(what);
  };
  for (int K = 8; K <= 60; K += 2) {
    for (long D : {1L, 3L, 5L, 7L}) {
      for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
        for (int ell = 3; ell <= (K - 2) / 2; ++ell) {
          if (chi.parity() != (ell % 2 == 0 ? 1 : -1)) continue;
          const std::string tag = " K=" + std::to_string(K) + " ell=" + std::to_string(ell) + " D=" + std::to_string(D);
          const KernelSpec prod{K, ell, chi, KernelKind::product};
          const oracle::ErrorTerms tp{prod};
          for (int n = 1; n <= 4; ++n) {
            check(tp.E(n), bound(BoundName::E, K, ell, n, D, KernelKind::product), "E" + tag);
            check(tp.scriptE(n), bound(BoundName::scriptE, K, ell, n, D, KernelKind::product), "scriptE" + tag);
          }
          if (ell > (K - 4) / 2) continue;
          const KernelSpec br{K, ell, chi, KernelKind::bracket};
          const oracle::ErrorTerms tb{br};
          for (int n = 1; n <= 4; ++n) {
            check(tb.R(n), bound(BoundName::R, K, ell, n, D, KernelKind::bracket), "R" + tag);
            check(tb.Rprime(n), bound(BoundName::Rprime, K, ell, n, D, KernelKind::bracket), "Rprime" + tag);
            check(tb.scriptR(n), bound(BoundName::scriptR, K, ell, n, D, KernelKind::bracket), "scriptR" + tag);
            check(tb.scriptRprime(n), bound(BoundName::scriptRprime, K, ell, n, D, KernelKind::bracket),
                  "scriptRprime" + tag);
          }
        }
      }
    }
  }
  const double m = maeda_uniform_bound();
  if (std::abs(m - kMaedaTarget) > kMaedaTol) o.fail("maeda estimate " + std::to_string(m));
  if (o.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu terms dominated (max exact/bound %.3g); maeda estimate %.4f", checks,
                  worst_ratio, m);
    o.detail = buf;
  }
  return o;
}

Outcome maeda() {
  Outcome o;
  std::size_t cases = 0;
  for (long D : {1L, 3L, 5L, 7L}) {
    const auto chi = quadratic_character(D);
    for (int K = static_cast<int>(10 * D + 2); K <= 10 * D + 22; K += 2) {
      if (((K / 2) % 2 == 0 ? 1 : -1) * chi.parity() < 0) continue;
      const KernelSpec s{K, K / 2, chi, KernelKind::product};
      const std::string tag = "K=" + std::to_string(K) + " D=" + std::to_string(D);
      if (f_coeff(s, 1).is_zero()) o.fail("a(1) = 0 at " + tag);
      if (oracle::modulus(maeda_epsilon_exact(K, chi)) >= 1) o.fail("|eps| >= 1 at " + tag);
      ++cases;
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " weights, a(1) != 0 and |eps| < 1";
  return o;
}

Outcome bernoulli_gauss() {
  Outcome o;
  std::size_t n_chars = 0;
  for (long D : odd_squarefree(15)) {
    for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
      const auto gf = oracle::bernoulli_by_series(8, chi);
      for (int n = 0; n <= 8; ++n) {
        if (generalized_bernoulli(n, chi) != gf[static_cast<std::size_t>(n)]) {
          o.fail("B_{" + std::to_string(n) + "} mod " + std::to_string(D));
        }
      }
      ++n_chars;
    }
  }
  std::size_t gauss = 0;
  for (long D : odd_squarefree(35)) {
    for (const auto& chi : enumerate_characters(D, CharFilter::primitive)) {
      if (gauss_sum(chi) * gauss_sum(chi.conj()) != Cyclotomic(chi.parity() * D)) o.fail("gauss mod " + std::to_string(D));
      ++gauss;
    }
  }
  if (o.ok) o.detail = std::to_string(n_chars) + " characters x 9 indices; " + std::to_string(gauss) + " gauss identities";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget_s = 0;  // 0 means no runtime limit
  };
  const std::vector<Criterion> criteria{
      {"identity suite, product", [] { return identities(false); }, 60},
      {"identity suite, bracket", [] { return identities(true); }, 30},
      {"zero space", zero_space},
      {"cuspidality certificates", cuspidality},
      {"conjecture scan", scans},
      {"level one regression", tau},
      {"series oracle equivalence", oracle_equivalence},
      {"bound domination", domination},
      {"maeda non-vanishing", maeda},
      {"bernoulli and gauss cross-check", bernoulli_gauss},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_s > 0 && secs > criteria[i].budget_s) o.fail("over the runtime budget");
    std::printf("%s  %2zu. %-32s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), secs,
                o.detail.c_str());
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
