#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "selfdual/combo_search.hpp"
#include "selfdual/hermite_basis.hpp"

namespace selfdual {

struct LambdaConstant {
  double lambda;  ///< -min_{u > 0} sin(u) / u
  double u_star;  ///< location of the minimum, root of tan u = u in (pi, 3pi/2)
};

LambdaConstant lambda_const(double tol = 1e-14);

struct LowerBoundD1 {
  double A_min;   ///< 1 / (2 (1 + lambda))
  double B1_min;  ///< A_min^2
};

LowerBoundD1 lower_bound_d1();
/// Same formula for a given lambda.
LowerBoundD1 lower_bound_d1(double lambda);

/// log Gamma(d/2 + 1) by exact recurrence from Gamma(1) = 1 or
/// Gamma(1/2) = sqrt(pi).
double log_gamma_half_integer(int d);

/// (1/pi) (Gamma(d/2 + 1) / 2)^{2/d}.
double lower_bound_volume(int d);

/// (d + 2) / (2 pi): the a -> 1 limit of the family, an upper bound in every
/// dimension.
inline double analytic_ceiling(int d) { return (d + 2.0) / (2.0 * std::numbers::pi); }

enum class Effort { family, correction, lp, hermite };

const char* to_string(Effort e);
std::optional<Effort> parse_effort(const std::string& s);

using Witness = std::variant<GaussianCombo, HermiteCombo>;

/// Radius in the X-domain (X = pi A^2) reproduced from a witness.
double recertify(const Witness& w);

struct BoundOptions {
  std::optional<double> family_a;  ///< evaluate the family at this a instead of minimizing
  std::vector<double> lp_grid{kLimitProfileToken, 2.0, 2.08, 3.0};
  LpConfig lp;
  int hermite_modes = 4;
  HermiteSearchConfig hermite;
};

struct BoundReport {
  int dim = 1;
  double lower = 0.0;
  std::string lower_method;  ///< "lambda-refined" (d = 1) or "volume"
  double upper = 0.0;        ///< upper bound on the smooth-class constant, X / pi
  double upper_X = 0.0;      ///< certified X-domain radius of the witness
  std::string upper_method;
  Effort effort = Effort::family;
  bool capped = false;       ///< analytic ceiling was tighter than the search
  Witness witness;
  std::string bbar_note;
};

/// Runs the selected search, converts the certified X-radius to an upper
/// bound X / pi, caps it at (d + 2) / (2 pi), and attaches the lower bound.
/// Higher efforts include the lower ones, so for d = 1
/// upper(lp) <= upper(correction) <= upper(family).
BoundReport upper_bound_assembly(int d, Effort effort, const BoundOptions& opts = {});

}  // namespace selfdual
