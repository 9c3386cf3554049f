#include "twist_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "twist/bernoulli.hpp"
#include "twist/bounds.hpp"
#include "twist/cycmat.hpp"
#include "twist/errors.hpp"
#include "twist/kernels.hpp"
#include "twist/qseries.hpp"
#include "twist/verify.hpp"
#include "twist_cli/cache.hpp"

namespace twist::cli {

namespace {

std::string cell_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const std::string& prefix, const Json& v, std::vector<std::pair<std::string, std::string>>& out) {
  auto join = [&](const std::string& key) { return prefix.empty() ? key : prefix + "." + key; };
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(join(k), x, out);
  } else if (v.is_array()) {
    bool scalar = true;
    for (const auto& x : v) scalar = scalar && !x.is_structured();
    if (scalar) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : " ") + cell_text(x);
      out.emplace_back(prefix, s);
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) flatten(join(std::to_string(i)), v[i], out);
    }
  } else {
    out.emplace_back(prefix, cell_text(v));
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

}  // namespace

std::string to_csv(const Json& doc) {
  Json context = Json::object();
  std::vector<Json> rows;
  if (doc.is_array()) {
    for (const auto& x : doc) rows.push_back(x);
  } else if (doc.contains("witnesses") || doc.contains("entries")) {
    const char* key = doc.contains("witnesses") ? "witnesses" : "entries";
    for (const auto& [k, x] : doc.items()) {
      if (k != key) context[k] = x;
    }
    for (const auto& x : doc.at(key)) rows.push_back(x);
  } else if (doc.contains("values") && doc.at("values").is_array()) {
    for (const auto& [k, x] : doc.items()) {
      if (k != "values" && k != "normalized") context[k] = x;
    }
    const auto& values = doc.at("values");
    for (std::size_t i = 0; i < values.size(); ++i) {
      Json r{{"value", values[i]}};
      if (doc.contains("normalized")) r["normalized"] = doc.at("normalized")[i];
      rows.push_back(std::move(r));
    }
  } else {
    rows.push_back(doc);
  }

  std::vector<std::pair<std::string, std::string>> ctx;
  flatten("", context, ctx);
  std::vector<std::string> columns;
  std::vector<std::map<std::string, std::string>> table;
  for (const auto& [k, _] : ctx) columns.push_back(k);
  for (const auto& r : rows) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(r.is_structured() ? "" : "value", r, cells);
    std::map<std::string, std::string> m(ctx.begin(), ctx.end());
    for (auto& [k, v] : cells) {
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
      m[k] = v;
    }
    table.push_back(std::move(m));
  }
  if (rows.empty()) table.emplace_back(ctx.begin(), ctx.end());

  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
  os << '\n';
  for (const auto& m : table) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      auto it = m.find(columns[i]);
      os << (i ? "," : "") << (it == m.end() ? "" : csv_escape(it->second));
    }
    os << '\n';
  }
  return os.str();
}

namespace {

struct Globals {
  int jobs = 1;
  std::string cache;
  std::string format = "json";
};

struct Context {
  Globals g;
  std::unique_ptr<CoeffCache> cache;
  std::ostream* out;

  CoeffProvider provider() {
    if (!g.cache.empty() && !cache) cache = std::make_unique<CoeffCache>(g.cache);
    return cache ? cache->provider() : default_provider();
  }

  void emit(const Json& doc) const {
    if (g.format == "csv") {
      *out << to_csv(doc);
    } else {
      *out << doc.dump(2) << '\n';
    }
  }
};

DirichletCharacter character(long D, long label) { return DirichletCharacter::from_label(D, label); }

std::vector<DirichletCharacter> characters_from(long D, const std::vector<long>& labels) {
  std::vector<DirichletCharacter> out;
  for (long l : labels) out.push_back(character(D, l));
  return out;
}

Json with_status(const VerificationReport& r) { return r.to_json(); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact twisted-period kernel forms, matrices, identities and bounds", "twist"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.out = &out;
  if (const char* env = std::getenv("TWIST_CACHE")) ctx.g.cache = env;
  app.add_option("--jobs", ctx.g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache", ctx.g.cache, "JSON-lines coefficient cache (default $TWIST_CACHE)");
  app.add_option("--format", ctx.g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::function<int()> action;

  // chars
  long c_mod = 1;
  bool c_prim = false, c_values = false;
  auto* chars = app.add_subcommand("chars", "Dirichlet characters modulo D");
  chars->add_option("--modulus", c_mod)->required();
  chars->add_flag("--primitive", c_prim);
  chars->add_flag("--values", c_values, "Include value exponents");
  chars->callback([&] {
    action = [&] {
      Json arr = Json::array();
      for (const auto& chi : enumerate_characters(c_mod, c_prim ? CharFilter::primitive : CharFilter::all)) {
        arr.push_back(to_json(chi, c_values));
      }
      ctx.emit(arr);
      return 0;
    };
  });

  // qexp
  std::string q_kind;
  int q_terms = 10, q_weight = 12;
  long q_mod = 1, q_char = 0, q_mod2 = 1, q_char2 = 0;
  auto* qexp = app.add_subcommand("qexp", "q-expansions of Eisenstein series and level-one forms");
  qexp->add_option("--kind", q_kind)->required()->check(
      CLI::IsMember({"twisted", "double", "level1", "e4", "e6", "delta"}));
  qexp->add_option("--terms", q_terms)->check(CLI::PositiveNumber);
  qexp->add_option("--weight", q_weight);
  qexp->add_option("--modulus", q_mod);
  qexp->add_option("--char", q_char);
  qexp->add_option("--modulus2", q_mod2);
  qexp->add_option("--char2", q_char2);
  qexp->callback([&] {
    action = [&] {
      QSeries f;
      if (q_kind == "twisted") {
        f = eisenstein_twisted(q_weight, character(q_mod, q_char), q_terms);
      } else if (q_kind == "double") {
        f = eisenstein_double(q_weight, character(q_mod, q_char), character(q_mod2, q_char2), q_terms);
      } else if (q_kind == "level1") {
        f = eisenstein_level1(q_weight, q_terms);
      } else if (q_kind == "e4") {
        f = e4_series(q_terms);
      } else if (q_kind == "e6") {
        f = e6_series(q_terms);
      } else {
        f = delta_series(q_terms);
      }
      Json j{{"kind", q_kind}};
      j.update(to_json(f));
      ctx.emit(j);
      return 0;
    };
  });

  // kernel
  std::string k_kind = "product";
  int k_weight = 12, k_ell = 4, k_terms = 10;
  long k_mod = 1, k_char = 0;
  bool k_norm = false, k_cert = false;
  auto* kernel = app.add_subcommand("kernel", "Coefficients of a kernel cusp form");
  kernel->add_option("--kind", k_kind)->check(CLI::IsMember({"product", "bracket"}));
  kernel->add_option("--weight", k_weight)->required();
  kernel->add_option("--ell", k_ell)->required();
  kernel->add_option("--modulus", k_mod);
  kernel->add_option("--char", k_char);
  kernel->add_option("--terms", k_terms)->check(CLI::PositiveNumber);
  kernel->add_flag("--normalized", k_norm);
  kernel->add_flag("--certificate", k_cert, "Attach a cuspidality certificate");
  kernel->callback([&] {
    action = [&] {
      const KernelSpec spec{k_weight, k_ell, character(k_mod, k_char), parse_kernel_kind(k_kind)};
      validate(spec);
      CoeffTable t;
      t.spec = spec;
      t.values = ctx.provider()(spec, k_terms);
      if (k_norm) t = normalize(std::move(t));
      Json j = to_json(t);
      if (k_cert) j["certificate"] = to_json(cuspidality_certificate(spec));
      ctx.emit(j);
      return t.degenerate ? 1 : 0;
    };
  });

  // matrix
  std::string m_which;
  int m_weight = 12;
  long m_mod = 1;
  std::vector<int> m_ells;
  std::vector<long> m_chars;
  auto* matrix = app.add_subcommand("matrix", "Build a coefficient matrix and its exact determinant");
  matrix->add_option("--matrix", m_which)->required()->check(
      CLI::IsMember({"M", "N", "P", "Q", "C1", "C2", "C3", "C4"}));
  matrix->add_option("--weight", m_weight)->required();
  matrix->add_option("--modulus", m_mod);
  matrix->add_option("--ells", m_ells)->delimiter(',')->required();
  matrix->add_option("--chars", m_chars)->delimiter(',')->required();
  matrix->callback([&] {
    action = [&] {
      const MatrixKind which = parse_matrix_kind(m_which);
      const auto chis = characters_from(m_mod, m_chars);
      const bool conj = which == MatrixKind::C1 || which == MatrixKind::C2 || which == MatrixKind::C3 ||
                        which == MatrixKind::C4;
      const CycMatrix m = conj ? build_conjecture_matrix(which, m_weight, chis, m_ells, ctx.provider())
                               : build_matrix(which, m_weight, chis, m_ells, ctx.provider());
      const Cyclotomic det = det_exact(m);
      Json j = to_json(m);
      j["det"] = to_json(det);
      j["nonsingular"] = !det.is_zero();
      ctx.emit(j);
      return 0;
    };
  });

  // bounds
  std::string b_name, b_search, b_kind = "product";
  BoundParams bp;
  double b_tol = 0.5;
  int b_cap = 4000;
  auto* bounds = app.add_subcommand("bounds", "Evaluate an explicit bound or search for a minimal weight");
  auto* name_opt = bounds->add_option("--name", b_name);
  auto* search_opt = bounds->add_option("--min-weight", b_search)->check(
      CLI::IsMember({"asym_product", "asym_bracket", "maeda"}));
  name_opt->excludes(search_opt);
  bounds->add_option("--weight", bp.K);
  bounds->add_option("--ell", bp.ell);
  bounds->add_option("--n", bp.n);
  bounds->add_option("--modulus", bp.D);
  bounds->add_option("--j", bp.j);
  bounds->add_option("--M", bp.M);
  bounds->add_option("--ells", bp.ells)->delimiter(',');
  bounds->add_option("--kind", b_kind)->check(CLI::IsMember({"product", "bracket"}));
  bounds->add_option("--tol", b_tol);
  bounds->add_option("--cap", b_cap);
  bounds->callback([&] {
    action = [&]() -> int {
      bp.kind = parse_kernel_kind(b_kind);
      if (!b_name.empty()) {
        ctx.emit(to_json(bound_report(parse_bound_name(b_name), bp)));
        return 0;
      }
      if (b_search.empty()) throw CLI::RequiredError("--name or --min-weight");
      MinWeightQuery q;
      q.kind = b_search == "maeda"          ? MinWeightQuery::Kind::maeda
               : b_search == "asym_product" ? MinWeightQuery::Kind::asym_product
                                            : MinWeightQuery::Kind::asym_bracket;
      q.j = bp.j;
      q.D = bp.D;
      q.tol = b_tol;
      q.cap = b_cap;
      const auto r = min_weight(q);
      Json reports = Json::array();
      for (const auto& rep : r.reports) reports.push_back(to_json(rep));
      ctx.emit(Json{{"query", b_search}, {"D", q.D},   {"j", q.j},           {"tol", q.tol}, {"found", r.found},
                    {"K", r.K},          {"value", r.value}, {"witnesses", reports}});
      return r.found ? 0 : 1;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Exact verification suites");
  verify->require_subcommand(1);
  long v_p = 3;
  std::string v_set = "product";
  auto* ident = verify->add_subcommand("identities", "Convolution identities for a prime modulus");
  ident->add_option("--modulus", v_p)->required();
  ident->add_option("--set", v_set)->check(CLI::IsMember({"product", "bracket"}));
  ident->callback([&] {
    action = [&] {
      const auto r = v_set == "product" ? verify_identities_product(v_p) : verify_identities_bracket(v_p);
      ctx.emit(with_status(r));
      return exit_code(r);
    };
  });
  int z_weight = 10, z_terms = 20;
  long z_mod = 1;
  auto* zero = verify->add_subcommand("zero", "Kernel forms vanish when dim S_K = 0");
  zero->add_option("--weight", z_weight)->required();
  zero->add_option("--modulus", z_mod);
  zero->add_option("--terms", z_terms);
  zero->callback([&] {
    action = [&] {
      const auto r = verify_zero_space(z_weight, z_mod, z_terms);
      ctx.emit(with_status(r));
      return exit_code(r);
    };
  });
  int cu_min = 12, cu_max = 30, cu_extra = 6;
  std::vector<long> cu_moduli{1, 3, 5, 7};
  auto* cusp = verify->add_subcommand("cusp", "Cuspidality certificates over a weight range");
  cusp->add_option("--min-weight", cu_min);
  cusp->add_option("--max-weight", cu_max);
  cusp->add_option("--moduli", cu_moduli)->delimiter(',');
  cusp->add_option("--extra", cu_extra);
  cusp->callback([&] {
    action = [&] {
      const auto r = verify_cuspidality(cu_min, cu_max, cu_moduli, cu_extra, ctx.g.jobs);
      ctx.emit(with_status(r));
      return exit_code(r);
    };
  });

  // scan
  std::string s_which;
  int s_kmax = 24;
  long s_dmax = 15;
  bool s_full = false;
  ScanOptions so;
  auto* scan = app.add_subcommand("scan", "Non-singularity scan of the conjecture matrices");
  scan->add_option("--matrix", s_which)->required()->check(CLI::IsMember({"C1", "C2", "C3", "C4"}));
  scan->add_option("--max-weight", s_kmax);
  scan->add_option("--max-modulus", s_dmax);
  scan->add_flag("--full", s_full, "Extend to K, D <= 40");
  scan->add_option("--selection-cap", so.selection_cap);
  scan->add_option("--exhaustive-dim", so.exhaustive_dim);
  scan->callback([&] {
    action = [&] {
      if (s_full) {
        s_kmax = std::max(s_kmax, 40);
        s_dmax = std::max(s_dmax, 40L);
      }
      so.jobs = ctx.g.jobs;
      const auto r = scan_conjectures(parse_matrix_kind(s_which), s_kmax, s_dmax, so, ctx.provider());
      ctx.emit(with_status(r));
      return exit_code(r);
    };
  });

  // maeda
  long ma_dmax = 7;
  int ma_kcap = 40;
  auto* maeda = app.add_subcommand("maeda", "Non-vanishing of a(1) for ell = K/2 and quadratic characters");
  maeda->add_option("--max-modulus", ma_dmax);
  maeda->add_option("--max-weight", ma_kcap);
  maeda->callback([&] {
    action = [&] {
      const auto r = maeda_scan(ma_dmax, ma_kcap);
      ctx.emit(with_status(r));
      return exit_code(r);
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "twist: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const CLI::Error& e) {
    err << "twist: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "twist: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "twist: " << e.what() << '\n';
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace twist::cli
