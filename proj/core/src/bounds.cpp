#include "twist/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "twist/errors.hpp"

namespace twist {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double e = std::numbers::e;

const char* const kNames[] = {"sigma_ratio", "zeta_ratio", "E",        "R",        "Rprime",   "scriptE", "scriptR",
                              "scriptRprime", "det_lb_M",  "det_lb_N", "det_lb_P", "det_lb_Q", "f_env"};

double zeta(double s) { return std::riemann_zeta(s); }

void require(bool ok, const std::string& what) {
  if (!ok) throw RangeError("bound hypothesis violated: " + what);
}

void require_product_range(const BoundParams& p) {
  require(p.K >= 8 && p.K % 2 == 0, "K even with 3 <= ell <= (K-2)/2 (K=" + std::to_string(p.K) + ")");
  require(p.ell >= 3 && p.ell <= (p.K - 2) / 2, "3 <= ell <= (K-2)/2 (ell=" + std::to_string(p.ell) + ")");
}

void require_bracket_range(const BoundParams& p) {
  require(p.K >= 10 && p.K % 2 == 0, "K even with 3 <= ell <= (K-4)/2 (K=" + std::to_string(p.K) + ")");
  require(p.ell >= 3 && p.ell <= (p.K - 4) / 2, "3 <= ell <= (K-4)/2 (ell=" + std::to_string(p.ell) + ")");
}

void require_D(const BoundParams& p) { require(is_odd_squarefree(p.D), "D odd square-free (D=" + std::to_string(p.D) + ")"); }

double pairs(int n) { return n * (n - 1) / 2.0; }

double ell_product(const std::vector<int>& ells) {
  double s = 0;
  for (std::size_t i = 1; i < ells.size(); ++i) s += static_cast<double>(i) * (ells[i] - 1);
  return std::exp2(s);
}

void require_ells(const BoundParams& p) {
  require(static_cast<int>(p.ells.size()) == p.n, "ells has n entries");
  for (std::size_t i = 1; i < p.ells.size(); ++i) require(p.ells[i] > p.ells[i - 1], "ells strictly ascending");
}

}  // namespace

std::string to_string(BoundName name) { return kNames[static_cast<int>(name)]; }

BoundName parse_bound_name(const std::string& text) {
  for (int i = 0; i <= static_cast<int>(BoundName::f_env); ++i) {
    if (text == kNames[i]) return static_cast<BoundName>(i);
  }
  throw SpecError("unknown bound '" + text + "'");
}

double bound_eval(BoundName name, const BoundParams& p) {
  switch (name) {
    case BoundName::sigma_ratio: {
      require_D(p);
      p.kind == KernelKind::product ? require_product_range(p) : require_bracket_range(p);
      const int k = p.kind == KernelKind::product ? p.K - p.ell : p.K - 2 - p.ell;
      return 6 * std::pow((p.ell - 1.0) / (k - 1.0), p.ell - 0.5) *
             std::pow(2 * pi * e / ((k - 1.0) * static_cast<double>(p.D)), k - p.ell);
    }
    case BoundName::zeta_ratio:
      require_D(p);
      require_product_range(p);
      return 2 * std::pow((p.ell - 1.0) * static_cast<double>(p.D) / (p.K - 1.0), p.ell - 0.5) *
             std::pow(2 * pi * e / (p.K - 1.0), p.K - p.ell);
    case BoundName::E:
    case BoundName::R:
    case BoundName::Rprime: {
      require_D(p);
      name == BoundName::E ? require_product_range(p) : require_bracket_range(p);
      require(p.n >= 1, "n >= 1");
      const double c = name == BoundName::Rprime ? 18.5 : 9.25;
      return c * std::pow(pi * e * p.n * p.n / ((p.K - 2.0) * static_cast<double>(p.D)), (p.K - 1) / 2.0);
    }
    case BoundName::scriptE:
    case BoundName::scriptR:
    case BoundName::scriptRprime: {
      require_D(p);
      name == BoundName::scriptE ? require_product_range(p) : require_bracket_range(p);
      require(p.n >= 1, "n >= 1");
      const double c = name == BoundName::scriptRprime ? 31.0 : 16.0;
      return c * std::pow(pi * e * static_cast<double>(p.D) * p.n * p.n / (p.K - 2.0), (p.K - 1) / 2.0);
    }
    case BoundName::det_lb_M:
    case BoundName::det_lb_N:
      require(p.n >= 1, "n >= 1");
      require_ells(p);
      return std::pow(name == BoundName::det_lb_M ? 0.75 : 1.5, pairs(p.n)) * ell_product(p.ells);
    case BoundName::det_lb_P:
    case BoundName::det_lb_Q:
      require_D(p);
      require(p.n >= 1, "n >= 1");
      require(p.ell >= 3, "ell >= 3");
      return std::pow(std::exp2(p.ell + (name == BoundName::det_lb_P ? 1 : 2)) / static_cast<double>(p.D), pairs(p.n));
    case BoundName::f_env:
      require(p.M >= 0, "M >= 0");
      require(p.n >= 1, "n >= 1");
      return std::pow(1 + p.M, p.n) - 1;
  }
  throw SpecError("unhandled bound");
}

BoundReport bound_report(BoundName name, const BoundParams& params) {
  BoundReport r{to_string(name), params, bound_eval(name, params), false};
  r.certified = r.value < 1;
  return r;
}

double det_budget(MatrixKind which, int n, long D) {
  const double fact = std::tgamma(n + 1.0);
  const double two = std::exp2(1 - n);
  switch (which) {
    case MatrixKind::M:
    case MatrixKind::N:
      return std::pow(0.75, pairs(n)) * two / fact;
    case MatrixKind::P:
    case MatrixKind::Q:
      return std::pow(4.0 / static_cast<double>(D), pairs(n)) * two / fact;
    default:
      throw SpecError("no perturbation budget for " + to_string(which));
  }
}

double asym_aggregate(KernelKind kind, int K, int ell, int j, long D, std::vector<BoundReport>* parts) {
  BoundParams p;
  p.K = K;
  p.ell = ell;
  p.D = D;
  p.j = j;
  p.kind = kind;
  auto term = [&](BoundName name, int n) {
    BoundParams q = p;
    q.n = n;
    auto r = bound_report(name, q);
    if (parts) parts->push_back(r);
    return r.value;
  };
  const double tj = std::exp2(j);
  const double decay = 2 * std::exp2(-(ell - 1.0) * j);
  const int n = 1 << j;
  double A = 0;
  double B = 0;
  if (kind == KernelKind::product) {
    const int k = K - ell;
    const double s = term(BoundName::sigma_ratio, 1);
    const double z = term(BoundName::zeta_ratio, 1);
    A = s * 4 * std::exp2((k - ell) * static_cast<double>(j)) + z * 4 * std::exp2((K - ell) * static_cast<double>(j)) +
        (term(BoundName::E, n) + term(BoundName::scriptE, n)) * decay;
    B = s + z + term(BoundName::scriptE, 1);
  } else {
    const int k = K - 2 - ell;
    const double s = term(BoundName::sigma_ratio, 1) * ell / k;
    A = s * 4 * std::exp2((k - ell) * static_cast<double>(j)) +
        (term(BoundName::R, n) + term(BoundName::Rprime, n) + term(BoundName::scriptR, n) +
         term(BoundName::scriptRprime, n)) /
            tj * decay;
    B = s + term(BoundName::scriptR, 1) + term(BoundName::scriptRprime, 1);
  }
  if (B >= 1) return std::numeric_limits<double>::infinity();
  return (A + B) / (1 - B);
}

double epsilon_maeda(int K, long D) {
  if (K % 2 != 0 || K < 6) throw RangeError("bound hypothesis violated: K even with K/2 >= 3");
  if (!is_odd_squarefree(D)) throw RangeError("bound hypothesis violated: D odd square-free");
  const int k = K / 2;
  const double d = static_cast<double>(D);
  const double first = zeta(k - 1.0) * zeta(k - 1.0) * zeta(K - 1.0) / (std::sqrt(e) * (2 - zeta(k))) *
                       std::pow(pi * e * d / (K - 2.0), (K - 1) / 2.0);
  const double second = e * zeta(k) / (2 * std::sqrt(2 * pi)) * std::sqrt(3 / d) * std::pow(pi * e * d / (K - 1.0), k);
  return first + second;
}

double maeda_uniform_bound() {
  return zeta(5) * zeta(5) * zeta(11) / (std::sqrt(e) * (2 - zeta(6))) * std::pow(pi * e / 10, 5.5) +
         e * zeta(6) / (2 * std::sqrt(2 * pi)) * std::sqrt(3.0) * std::pow(pi * e / 10, 6);
}

MinWeightResult min_weight(const MinWeightQuery& q) {
  MinWeightResult out;
  if (q.kind == MinWeightQuery::Kind::maeda) {
    for (int K = 6; K <= q.cap; K += 2) {
      out.value = epsilon_maeda(K, q.D);
      if (out.value < 1) {
        out.found = true;
        out.K = K;
        BoundParams p;
        p.K = K;
        p.D = q.D;
        out.reports.push_back({"epsilon_maeda", p, out.value, true});
        return out;
      }
    }
    out.K = q.cap;
    return out;
  }
  const KernelKind kind = q.kind == MinWeightQuery::Kind::asym_product ? KernelKind::product : KernelKind::bracket;
  const int K0 = kind == KernelKind::product ? 8 : 10;
  for (int K = K0; K <= q.cap; K += 2) {
    const int top = kind == KernelKind::product ? (K - 2) / 2 : (K - 4) / 2;
    double worst = 0;
    int worst_ell = 3;
    for (int ell = 3; ell <= top; ++ell) {
      const double v = asym_aggregate(kind, K, ell, q.j, q.D);
      if (!(v <= worst)) {
        worst = v;
        worst_ell = ell;
      }
    }
    out.value = worst;
    out.K = K;
    if (worst < q.tol) {
      out.found = true;
      asym_aggregate(kind, K, worst_ell, q.j, q.D, &out.reports);
      return out;
    }
  }
  return out;
}

}  // namespace twist
