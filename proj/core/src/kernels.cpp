#include "twist/kernels.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "twist/bernoulli.hpp"
#include "twist/errors.hpp"
#include "twist/qseries.hpp"

namespace twist {

std::string to_string(KernelKind kind) { return kind == KernelKind::product ? "product" : "bracket"; }

KernelKind parse_kernel_kind(const std::string& text) {
  if (text == "product") return KernelKind::product;
  if (text == "bracket") return KernelKind::bracket;
  throw SpecError("unknown kernel kind '" + text + "'");
}

void validate(const KernelSpec& spec) {
  const std::string tag = "(K=" + std::to_string(spec.K) + ", ell=" + std::to_string(spec.ell) + ")";
  if (spec.K < 4 || spec.K % 2 != 0) throw SpecError("weight K must be even and >= 4 " + tag);
  if (!spec.chi.is_primitive()) throw SpecError("kernel character must be primitive " + tag);
  if (spec.chi.parity() != (spec.ell % 2 == 0 ? 1 : -1)) throw SpecError("parity chi(-1) != (-1)^ell " + tag);
  if (spec.ell < 3 || spec.ell > spec.max_ell()) {
    throw SpecError("ell outside 3.." + std::to_string(spec.max_ell()) + " for the " + to_string(spec.kind) +
                    " kernel " + tag);
  }
}

bool is_valid(const KernelSpec& spec) {
  try {
    validate(spec);
    return true;
  } catch (const SpecError&) {
    return false;
  }
}

std::vector<int> admissible_ells(int K, const DirichletCharacter& chi, KernelKind kind) {
  std::vector<int> out;
  KernelSpec s{K, 3, chi, kind};
  for (int ell = 3; ell <= s.max_ell(); ++ell) {
    s.ell = ell;
    if (is_valid(s)) out.push_back(ell);
  }
  return out;
}

namespace {

// Trace values at the requested n (all >= 0), product or bracket by spec.kind.
std::vector<Cyclotomic> trace_values(const KernelSpec& spec, const std::vector<long>& ns) {
  validate(spec);
  const bool bracket = spec.kind == KernelKind::bracket;
  const int ell = spec.ell;
  const int k = spec.k();
  const long D = spec.chi.modulus();
  const int W = spec.chi.order();
  const long n_top = ns.empty() ? 0 : *std::max_element(ns.begin(), ns.end());
  std::vector<Cyclotomic> out(ns.size(), Cyclotomic::zero(W));

  for (long D2 = 1; D2 <= D; ++D2) {
    if (D % D2 != 0) continue;
    const auto [c1, c2] = decompose(spec.chi, D / D2, D2);
    const auto t1 = sigma_double_table(ell - 1, c1, c2.conj(), n_top * D2, W);
    const auto t2 = sigma_double_table(k - 1, c1.conj(), c2, n_top * D2, W);
    const Rational scalar = make_rational(c2.parity(), bracket ? D2 : 1);
    BigInt tmp;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const long n = ns[i];
      const long total = n * D2;
      RootSum acc(W);
      for (long a1 = 1; a1 < total; ++a1) {
        const long a2 = total - a1;
        const long weight = bracket ? static_cast<long>(ell) * a2 - static_cast<long>(k) * a1 : 1;
        if (weight == 0) continue;
        for (const auto& [e1, v1] : t1[static_cast<std::size_t>(a1)]) {
          for (const auto& [e2, v2] : t2[static_cast<std::size_t>(a2)]) {
            mpz_mul(tmp.get_mpz_t(), v1.get_mpz_t(), v2.get_mpz_t());
            if (weight != 1) mpz_mul_si(tmp.get_mpz_t(), tmp.get_mpz_t(), weight);
            acc.add(e1 + e2, tmp);
          }
        }
      }
      out[i] += acc.value() * scalar;
    }
  }

  // a1 = 0 or a2 = 0 contributes only for D2 = 1, where the constants are nonzero.
  const Cyclotomic s_l0 = sigma0(ell, spec.chi);
  const Cyclotomic s_k0 = sigma0(k, spec.chi.conj());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const long n = ns[i];
    if (n == 0) {
      if (!bracket) out[i] += s_l0 * s_k0;
      continue;
    }
    const Cyclotomic l_n = sigma_twisted(ell - 1, spec.chi, n);
    const Cyclotomic k_n = sigma_twisted(k - 1, spec.chi.conj(), n);
    if (bracket) {
      out[i] += s_l0 * k_n * make_rational(static_cast<long>(ell) * n) - l_n * s_k0 * make_rational(static_cast<long>(k) * n);
    } else {
      out[i] += s_l0 * k_n + l_n * s_k0;
    }
  }
  return out;
}

// Kernel coefficients (a or b) at the requested n.
std::vector<Cyclotomic> kernel_values(const KernelSpec& spec, const std::vector<long>& ns) {
  auto out = trace_values(spec, ns);
  if (spec.kind == KernelKind::bracket) return out;
  const Cyclotomic scale =
      sigma0(spec.ell, spec.chi) * sigma0(spec.k(), spec.chi.conj()) * Rational(Rational(2) / zeta_neg(spec.K));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] == 0) {
      out[i] = Cyclotomic::zero(spec.chi.order());
      continue;
    }
    out[i] -= scale * sigma_plain(spec.K - 1, ns[i]);
  }
  return out;
}

using SpecKey = std::tuple<int, int, int, long, long>;

SpecKey key_of(const KernelSpec& s) {
  return {static_cast<int>(s.kind), s.K, s.ell, s.chi.modulus(), s.chi.label()};
}

}  // namespace

Cyclotomic trace_product_coeff(const KernelSpec& spec, long n) {
  if (spec.kind != KernelKind::product) throw SpecError("trace_product_coeff needs a product spec");
  return trace_values(spec, {n})[0];
}

Cyclotomic f_coeff(const KernelSpec& spec, long n) {
  if (spec.kind != KernelKind::product) throw SpecError("f_coeff needs a product spec");
  return kernel_values(spec, {n})[0];
}

Cyclotomic trace_bracket_coeff(const KernelSpec& spec, long n) {
  if (spec.kind != KernelKind::bracket) throw SpecError("trace_bracket_coeff needs a bracket spec");
  return trace_values(spec, {n})[0];
}

std::vector<Cyclotomic> kernel_coeffs(const KernelSpec& spec, int n_max) {
  static std::shared_mutex mutex;
  static std::map<SpecKey, std::vector<Cyclotomic>> memo;
  const SpecKey key = key_of(spec);
  const auto want = static_cast<std::size_t>(n_max + 1);
  {
    std::shared_lock lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end() && it->second.size() >= want) {
      return {it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(want)};
    }
  }
  std::vector<long> ns(want);
  for (std::size_t i = 0; i < want; ++i) ns[i] = static_cast<long>(i);
  auto values = kernel_values(spec, ns);
  std::unique_lock lock(mutex);
  auto& slot = memo[key];
  if (slot.size() < values.size()) slot = values;
  return values;
}

CoeffTable coefficient_table(const KernelSpec& spec, int n_max) {
  CoeffTable t;
  t.spec = spec;
  t.values = kernel_coeffs(spec, n_max);
  return t;
}

CoeffTable normalize(CoeffTable table) {
  if (table.values.size() < 2 || table.values[1].is_zero()) {
    table.degenerate = true;
    table.normalized.reset();
    return table;
  }
  const Cyclotomic inv = table.values[1].inv();
  std::vector<Cyclotomic> out;
  out.reserve(table.values.size());
  for (const auto& v : table.values) out.push_back(v * inv);
  table.normalized = std::move(out);
  table.degenerate = false;
  return table;
}

Cyclotomic normalized_coeff(const KernelSpec& spec, long n) {
  const auto v = n == 1 ? kernel_values(spec, {1}) : kernel_values(spec, {1, n});
  if (v[0].is_zero()) {
    throw SpecError("degenerate kernel: coefficient 1 vanishes for K=" + std::to_string(spec.K) +
                    ", ell=" + std::to_string(spec.ell));
  }
  return n == 1 ? Cyclotomic::one(v[0].order()) : v[1] / v[0];
}

CuspidalityCertificate cuspidality_certificate(int K, const std::vector<Cyclotomic>& coeffs) {
  CuspidalityCertificate cert;
  const int checked = static_cast<int>(coeffs.size()) - 1;
  const auto& kit = level1_toolkit(K, checked + 1);
  cert.coeff_count = kit.coeff_count;
  cert.checked_through = checked;
  cert.dim = kit.dim;
  for (int i = 1; i <= kit.dim && i <= checked; ++i) cert.coordinates.push_back(coeffs[static_cast<std::size_t>(i)]);
  cert.residual_zero_through = checked;
  for (int n = 0; n <= checked; ++n) {
    Cyclotomic r = coeffs[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < cert.coordinates.size(); ++i) r -= cert.coordinates[i] * kit.basis[i][n];
    if (!r.is_zero()) {
      cert.residual_zero_through = n - 1;
      break;
    }
  }
  cert.in_span = cert.residual_zero_through >= cert.coeff_count;
  return cert;
}

CuspidalityCertificate cuspidality_certificate(const KernelSpec& spec, int extra) {
  validate(spec);
  const int count = spec.K / 12 + 1;
  return cuspidality_certificate(spec.K, kernel_coeffs(spec, count + std::max(extra, 0)));
}

CoeffProvider default_provider() {
  return [](const KernelSpec& spec, int n_max) { return kernel_coeffs(spec, n_max); };
}

}  // namespace twist
