#include "selfdual/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace selfdual {

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json to_json(const GaussianCombo& combo) {
  json nodes = json::array();
  for (const auto& n : combo.nodes()) nodes.push_back({{"a", n.a}, {"t", n.t}});
  return {{"type", "gaussian_combo"},
          {"dim", combo.dim()},
          {"limit_coeff", combo.limit_coeff()},
          {"nodes", std::move(nodes)}};
}

GaussianCombo gaussian_combo_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("gaussian combo: expected a JSON object");
  std::vector<ComboNode> nodes;
  for (const auto& n : j.value("nodes", json::array())) {
    nodes.push_back({n.at("a").get<double>(), n.at("t").get<double>()});
  }
  return GaussianCombo(j.at("dim").get<int>(), std::move(nodes), j.value("limit_coeff", 0.0));
}

json to_json(const HermiteCombo& combo) {
  return {{"type", "hermite_combo"}, {"coeffs", combo.coeffs()}};
}

HermiteCombo hermite_combo_from_json(const json& j) {
  const json& arr = j.is_array() ? j : j.at("coeffs");
  return HermiteCombo(arr.get<std::vector<double>>());
}

json to_json(const Witness& w) {
  return std::visit([](const auto& c) { return to_json(c); }, w);
}

Witness witness_from_json(const json& j) {
  if (j.is_array()) return hermite_combo_from_json(j);
  const std::string type = j.value("type", j.contains("coeffs") ? "hermite_combo" : "gaussian_combo");
  if (type == "hermite_combo") return hermite_combo_from_json(j);
  if (type == "gaussian_combo") return gaussian_combo_from_json(j);
  throw std::invalid_argument("unknown witness type: " + type);
}

json to_json(const RadiusCertificate& cert) {
  return {{"R", round12(cert.R)},
          {"X_tail", round12(cert.X_tail)},
          {"samples_checked", cert.samples_checked},
          {"tolerance", cert.tolerance}};
}

json to_json(const BoundReport& r) {
  return {{"dim", r.dim},
          {"effort", to_string(r.effort)},
          {"lower", {{"value", round12(r.lower)}, {"method", r.lower_method}}},
          {"upper",
           {{"value", round12(r.upper)},
            {"X", round12(r.upper_X)},
            {"A", round12(std::sqrt(r.upper))},
            {"method", r.upper_method},
            {"capped_by_ceiling", r.capped},
            {"ceiling", round12(analytic_ceiling(r.dim))}}},
          {"witness", to_json(r.witness)},
          {"bbar_note", r.bbar_note}};
}

}  // namespace selfdual
