#pragma once

#include <json.hpp>

#include "selfdual/bounds.hpp"
#include "selfdual/combo_search.hpp"
#include "selfdual/hermite_basis.hpp"

namespace selfdual {

using json = nlohmann::json;

/// Rounds to 12 significant digits for reported values.
double round12(double v);

/// {"type": "gaussian_combo", "dim", "limit_coeff", "nodes": [{"a", "t"}, ...]}.
/// Weights keep full precision so witnesses re-certify exactly.
json to_json(const GaussianCombo& combo);
GaussianCombo gaussian_combo_from_json(const json& j);

/// {"type": "hermite_combo", "coeffs": [c_0, ..., c_M]}; a bare array is
/// also accepted on input.
json to_json(const HermiteCombo& combo);
HermiteCombo hermite_combo_from_json(const json& j);

json to_json(const Witness& w);
Witness witness_from_json(const json& j);

json to_json(const RadiusCertificate& cert);
json to_json(const BoundReport& report);

}  // namespace selfdual
