#include "twist/json_io.hpp"

#include <stdexcept>

namespace twist {

Json to_json(const Cyclotomic& x) {
  Json coeffs = Json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(to_string(c));
  return Json{{"order", x.order()}, {"coeffs", std::move(coeffs)}};
}

Cyclotomic cyclotomic_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs")) {
    throw std::invalid_argument("cyclotomic JSON needs 'order' and 'coeffs'");
  }
  const int order = j.at("order").get<int>();
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rational(c.get<std::string>()));
  return Cyclotomic::from_coeffs(order, coeffs);
}

Json to_json(const DirichletCharacter& chi, bool with_values) {
  Json j{{"modulus", chi.modulus()},
         {"label", chi.label()},
         {"exponents", chi.exponents()},
         {"order", chi.order()},
         {"parity", chi.parity()},
         {"conductor", chi.conductor()},
         {"primitive", chi.is_primitive()}};
  if (with_values) {
    Json values = Json::array();
    for (long a = 0; a < chi.modulus(); ++a) values.push_back(chi.value_exponent(a));
    j["value_exponents"] = std::move(values);
  }
  return j;
}

Json to_json(const KernelSpec& spec) {
  return Json{{"kind", to_string(spec.kind)}, {"K", spec.K},       {"ell", spec.ell},
              {"k", spec.k()},                {"modulus", spec.chi.modulus()}, {"char", spec.chi.label()}};
}

Json to_json(const CoeffTable& table) {
  Json j{{"spec", to_json(table.spec)}};
  Json values = Json::array();
  for (std::size_t n = 1; n < table.values.size(); ++n) values.push_back(to_json(table.values[n]));
  j["values"] = std::move(values);
  if (table.normalized) {
    Json norm = Json::array();
    for (std::size_t n = 1; n < table.normalized->size(); ++n) norm.push_back(to_json((*table.normalized)[n]));
    j["normalized"] = std::move(norm);
  }
  j["degenerate"] = table.degenerate;
  return j;
}

Json to_json(const CuspidalityCertificate& cert) {
  Json coords = Json::array();
  for (const auto& c : cert.coordinates) coords.push_back(to_json(c));
  return Json{{"in_span", cert.in_span},
              {"residual_zero_through", cert.residual_zero_through},
              {"coeff_count", cert.coeff_count},
              {"checked_through", cert.checked_through},
              {"dim", cert.dim},
              {"coordinates", std::move(coords)}};
}

Json to_json(const BoundReport& r) {
  const auto& p = r.params;
  Json params{{"K", p.K}, {"ell", p.ell}, {"n", p.n}, {"D", p.D}, {"j", p.j}};
  if (r.name == "f_env") params["M"] = p.M;
  if (!p.ells.empty()) params["ells"] = p.ells;
  if (r.name == "sigma_ratio") params["kind"] = to_string(p.kind);
  return Json{{"name", r.name}, {"params", std::move(params)}, {"value", r.value}, {"certified", r.certified}};
}

Json to_json(const CycMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  const auto& p = m.provenance();
  return Json{{"kind", to_string(p.kind)}, {"K", p.K},           {"D", p.D},
              {"ells", p.ells},            {"labels", p.labels}, {"entries", std::move(rows)}};
}

Json to_json(const QSeries& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
  Json j{{"precision", f.precision()}};
  if (f.weight()) j["weight"] = *f.weight();
  j["coeffs"] = std::move(coeffs);
  return j;
}

}  // namespace twist
