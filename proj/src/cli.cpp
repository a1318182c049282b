#include "selfdual/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "selfdual/bounds.hpp"
#include "selfdual/combo_search.hpp"
#include "selfdual/error.hpp"
#include "selfdual/gaussian_core.hpp"
#include "selfdual/hermite_basis.hpp"
#include "selfdual/number_fields.hpp"
#include "selfdual/parallel.hpp"
#include "selfdual/serialize.hpp"
#include "selfdual/series_verify.hpp"

namespace selfdual {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Rejects NaN and infinities before CLI11 converts the value.
const CLI::Validator kFinite(
    [](std::string& s) -> std::string {
      try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) return "not a number: " + s;
        if (!std::isfinite(v)) return "value must be finite: " + s;
      } catch (const std::exception&) {
        return "not a number: " + s;
      }
      return {};
    },
    "FINITE");

const CLI::Validator kBigInt(
    [](std::string& s) -> std::string {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        return "expected a positive decimal integer: " + s;
      }
      return {};
    },
    "BIGINT");

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json envelope(const std::string& command, json inputs, json results, json provenance) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"results", std::move(results)},
          {"provenance", std::move(provenance)}};
}

struct Args {
  // xa / plot-data
  double a = 2.0;
  int dim = 1;
  double tol = kDefaultXTol;
  // scan-a
  double a_min = 1.01;
  double a_max = 4.0;
  int steps = 100;
  // bounds / optimize
  std::string effort = "family";
  std::vector<double> grid;
  double x_span = 40.0;
  int nodes = 2000;
  double r_tol = 1e-4;
  // hermite
  int modes = 4;
  int starts = 64;
  // series-check
  int order = 4;
  // field-check / tower
  long long degree = 1;
  std::string disc = "1";
  double bbar = 0.0;
  long long d0 = 1;
  std::string disc0 = "1";
  long long p = 2;
  int m = 0;
  // plot-data
  std::string what = "H";
  double x_max = 6.0;
  // certify
  std::string witness_path;
};

int cmd_xa(const Args& a, std::ostream& out) {
  const GaussianParams p(a.a, a.dim);
  const double X = solve_Xa(p, a.tol);
  out << envelope("xa", {{"a", a.a}, {"dim", a.dim}, {"tol", a.tol}},
                  {{"X_a", round12(X)},
                   {"A", round12(radius_from_X(X))},
                   {"dH_at_zero", round12(dH_at_zero(p))},
                   {"limit_X", round12(limit_X(a.dim))}},
                  {"unique positive zero of the convex profile H_a(X) = e^X G_a(X)",
                   "A(g_a) = sqrt(X_a / pi)"})
             .dump(2)
      << "\n";
  return kExitOk;
}

int cmd_scan(const Args& a, std::ostream& out) {
  if (!(a.a_min > 1.0) || !(a.a_max >= a.a_min) || a.steps < 1) {
    throw std::invalid_argument("scan-a: need 1 < min <= max and steps >= 1");
  }
  std::vector<double> as(a.steps + 1);
  std::vector<double> xs(a.steps + 1);
  for (int i = 0; i <= a.steps; ++i) as[i] = a.a_min + (a.a_max - a.a_min) * i / a.steps;
  parallel_for(as.size(), [&](std::size_t i) { xs[i] = solve_Xa(GaussianParams(as[i], a.dim)); });
  out << "a,X_a,A\n";
  for (std::size_t i = 0; i < as.size(); ++i) {
    out << csv_number(as[i]) << "," << csv_number(xs[i]) << "," << csv_number(radius_from_X(xs[i]))
        << "\n";
  }
  return kExitOk;
}

int cmd_bounds(const Args& a, std::ostream& out, bool a_given, bool grid_given) {
  const auto effort = parse_effort(a.effort);
  if (!effort) throw std::invalid_argument("unknown effort: " + a.effort);
  BoundOptions opts;
  if (a_given) opts.family_a = a.a;
  if (grid_given) opts.lp_grid = a.grid;
  opts.hermite_modes = a.modes;
  const BoundReport rep = upper_bound_assembly(a.dim, *effort, opts);
  json inputs = {{"dim", a.dim}, {"effort", a.effort}};
  if (a_given) inputs["a"] = a.a;
  if (grid_given) inputs["grid"] = a.grid;
  out << envelope("bounds", inputs, to_json(rep),
                  {"lower: sinc-refined bound for d = 1, ball-volume bound otherwise",
                   "upper: certified last sign change X of the witness, reported as X / pi",
                   "ceiling: (d + 2) / (2 pi) from the a -> 1 limit of the family"})
             .dump(2)
      << "\n";
  return kExitOk;
}

int cmd_optimize(const Args& a, std::ostream& out) {
  LpConfig cfg;
  cfg.nodes = a.nodes;
  cfg.x_span = a.x_span;
  cfg.r_tol = a.r_tol;
  const LpResult r = lp_min_radius(a.grid, a.dim, cfg);
  out << envelope("optimize",
                  {{"dim", a.dim}, {"grid", a.grid}, {"xmax", a.x_span}, {"nodes", a.nodes}, {"rtol", a.r_tol}},
                  {{"R", round12(r.R)},
                   {"A", round12(radius_from_X(r.R))},
                   {"upper", round12(r.R / std::numbers::pi)},
                   {"combo", to_json(r.combo)},
                   {"certificate", to_json(r.cert)},
                   {"lp_solves", r.lp_solves}},
                  {"bisection on R over LP feasibility of the sampled nonnegativity constraints",
                   "radius re-certified by Taylor screening and a tail dominance bound"})
             .dump(2)
      << "\n";
  return kExitOk;
}

int cmd_hermite(const Args& a, std::ostream& out) {
  HermiteSearchConfig cfg;
  cfg.starts = a.starts;
  const HermiteSearchResult r = hermite_search(a.modes, cfg);
  out << envelope("hermite", {{"modes", a.modes}, {"starts", a.starts}},
                  {{"combo", to_json(r.best)},
                   {"A", round12(r.radius)},
                   {"pi_A2", round12(r.pi_a2)},
                   {"upper", round12(r.pi_a2 / std::numbers::pi)}},
                  {"self-dual Hermite modes 0, 4, ..., 4M with f(0) = 0",
                   "radius from certified sign scan of the polynomial factor"})
             .dump(2)
      << "\n";
  return kExitOk;
}

int cmd_series(const Args& a, std::ostream& out) {
  const auto checks = run_identity_checks(a.order);
  json list = json::array();
  bool all = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.detail}});
    all = all && c.passed;
  }
  const P56 p = p56_check();
  out << envelope("series-check", {{"order", a.order}},
                  {{"all_passed", all},
                   {"p5", p.p5.get_str()},
                   {"p6", p.p6.get_str()},
                   {"checks", std::move(list)}},
                  {"exact rational expansion with arbitrary-precision integers"})
             .dump(2)
      << "\n";
  return all ? kExitOk : kExitFailure;
}

int cmd_field(const Args& a, std::ostream& out, bool bbar_given) {
  const NumberFieldParams params(a.degree, mpz_class(a.disc));
  const double bbar = bbar_given ? a.bbar : analytic_ceiling(static_cast<int>(a.degree));
  const Prop1Margin r = prop1_margin(params, bbar);
  out << envelope("field-check", {{"degree", a.degree}, {"disc", a.disc}, {"bbar", round12(bbar)}},
                  {{"value", round12(r.value)},
                   {"root_discriminant", round12(r.root_discriminant)},
                   {"verdict", to_string(r.verdict)},
                   {"two_pi_e", round12(kTwoPiE)},
                   {"discriminant_condition_automatic", r.discriminant_condition_automatic}},
                  {"value = d |D|^{-1/d}; no real zero certified when value > bbar"})
             .dump(2)
      << "\n";
  return kExitOk;
}

int cmd_tower(const Args& a, std::ostream& out) {
  const mpz_class D0(a.disc0);
  if (mpz_probab_prime_p(mpz_class(std::to_string(a.p)).get_mpz_t(), 30) == 0) {
    throw std::invalid_argument("tower: p must be prime");
  }
  const TowerLevel t = tower(a.d0, D0, a.p, a.m);
  json res = {{"degree", t.degree},
              {"log_disc", round12(t.log_disc)},
              {"log_root_disc", round12(t.log_disc / static_cast<double>(t.degree))},
              {"C", round12(t.C)},
              {"linear_bound", round12(t.linear_bound)}};
  res["disc"] = t.disc ? json(t.disc->get_str()) : json(nullptr);
  if (!t.note.empty()) res["note"] = t.note;
  out << envelope("tower", {{"d0", a.d0}, {"disc0", a.disc0}, {"p", a.p}, {"m", a.m}}, res,
                  {"D(F_m) = D0^{p^m}, d_m = d0 p^m, linear bound C d_m with C = D0^{-1/d0}"})
             .dump(2)
      << "\n";
  return kExitOk;
}

int cmd_plot(const Args& a, std::ostream& out) {
  if (a.what != "H" && a.what != "G") throw std::invalid_argument("--what must be H or G");
  if (!(a.x_max > 0.0) || a.steps < 1) throw std::invalid_argument("plot-data: need xmax > 0, steps >= 1");
  const GaussianParams p(a.a, a.dim);
  out << "X," << a.what << "\n";
  for (int i = 0; i <= a.steps; ++i) {
    const double X = a.x_max * i / a.steps;
    const double v = a.what == "H" ? eval_H(p, X) : eval_G(p, X);
    out << csv_number(X) << "," << csv_number(v) << "\n";
  }
  return kExitOk;
}

int cmd_certify(const Args& a, std::ostream& out) {
  std::ifstream in(a.witness_path);
  if (!in) throw std::invalid_argument("cannot open witness file " + a.witness_path);
  json j = json::parse(in);
  // Accept a bare witness or any envelope that carries one.
  if (j.contains("results")) j = j["results"];
  if (j.contains("witness")) j = j["witness"];
  else if (j.contains("combo")) j = j["combo"];
  const Witness w = witness_from_json(j);
  const double X = recertify(w);
  out << envelope("certify", {{"witness", a.witness_path}},
                  {{"X", round12(X)}, {"A", round12(radius_from_X(X))}, {"upper", round12(X / std::numbers::pi)}},
                  {"re-certified last sign change of the stored witness"})
             .dump(2)
      << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Upper and lower bounds for sign-uncertainty constants of self-dual functions"};
  app.require_subcommand(1);
  Args a;

  auto* xa = app.add_subcommand("xa", "zero X_a of the family profile and radius A(g_a)");
  xa->add_option("--a", a.a, "family parameter (> 1)")->required()->check(kFinite);
  xa->add_option("--dim", a.dim, "dimension")->check(CLI::PositiveNumber);
  xa->add_option("--tol", a.tol, "absolute tolerance in X")->check(kFinite);

  auto* scan = app.add_subcommand("scan-a", "CSV table of (a, X_a, A) over a range of a");
  scan->add_option("--dim", a.dim, "dimension")->check(CLI::PositiveNumber);
  scan->add_option("--min", a.a_min, "smallest a (> 1)")->check(kFinite);
  scan->add_option("--max", a.a_max, "largest a")->check(kFinite);
  scan->add_option("--steps", a.steps, "number of intervals")->check(CLI::PositiveNumber);

  auto* bounds = app.add_subcommand("bounds", "lower and upper bound report for one dimension");
  bounds->add_option("--dim", a.dim, "dimension")->check(CLI::PositiveNumber);
  bounds->add_option("--effort", a.effort, "family | correction | lp | hermite")
      ->check(CLI::IsMember({"family", "correction", "lp", "hermite"}));
  auto* bounds_a = bounds->add_option("--a", a.a, "evaluate the family at this a")->check(kFinite);
  auto* bounds_grid =
      bounds->add_option("--grid", a.grid, "LP grid, comma separated (1 = limit profile)")
          ->delimiter(',')
          ->check(kFinite);
  bounds->add_option("--modes", a.modes, "Hermite modes M for the hermite effort")
      ->check(CLI::Range(1, kMaxHermiteDegree / 4));

  auto* opt = app.add_subcommand("optimize", "LP search over a grid of family parameters");
  opt->add_option("--dim", a.dim, "dimension")->check(CLI::PositiveNumber);
  opt->add_option("--grid", a.grid, "grid a1,a2,... (1 = limit profile)")
      ->required()
      ->delimiter(',')
      ->check(kFinite);
  opt->add_option("--xmax", a.x_span, "sampling window length above the trial radius")->check(kFinite);
  opt->add_option("--nodes", a.nodes, "sample count per LP")->check(CLI::Range(2, 100000));
  opt->add_option("--rtol", a.r_tol, "bisection tolerance on R")->check(kFinite);

  auto* herm = app.add_subcommand("hermite", "search over self-dual Hermite combinations (d = 1)");
  herm->add_option("--modes", a.modes, "highest mode index M (modes 0, 4, ..., 4M)")
      ->check(CLI::Range(1, kMaxHermiteDegree / 4));
  herm->add_option("--starts", a.starts, "random multi-starts")->check(CLI::Range(1, 100000));

  auto* series = app.add_subcommand("series-check", "exact verification of expansion coefficients");
  series->add_option("--order", a.order, "series order (4..8)")->check(CLI::Range(4, kMaxSeriesOrder));

  auto* field = app.add_subcommand("field-check", "compare d |D|^{-1/d} with an upper bound");
  field->add_option("--degree", a.degree, "field degree")->required()->check(CLI::PositiveNumber);
  field->add_option("--disc", a.disc, "absolute discriminant")->required()->check(kBigInt);
  auto* field_bbar = field->add_option("--bbar", a.bbar, "upper bound on Bbar_d")->check(kFinite);

  auto* tow = app.add_subcommand("tower", "degree and discriminant along an unramified p-tower");
  tow->add_option("--d0", a.d0, "base degree")->required()->check(CLI::PositiveNumber);
  tow->add_option("--disc0", a.disc0, "base absolute discriminant")->required()->check(kBigInt);
  tow->add_option("--p", a.p, "prime step degree")->required()->check(CLI::Range(2LL, 1LL << 40));
  tow->add_option("--m", a.m, "tower level")->required()->check(CLI::Range(0, 1 << 20));

  auto* plot = app.add_subcommand("plot-data", "CSV samples of H_a or G_a");
  plot->add_option("--dim", a.dim, "dimension")->check(CLI::PositiveNumber);
  plot->add_option("--what", a.what, "H or G")->check(CLI::IsMember({"H", "G"}));
  plot->add_option("--a", a.a, "family parameter (> 1)")->required()->check(kFinite);
  plot->add_option("--xmax", a.x_max, "largest X")->check(kFinite);
  plot->add_option("--steps", a.steps, "number of intervals")->check(CLI::PositiveNumber);

  auto* cert = app.add_subcommand("certify", "re-certify a stored witness (JSON)");
  cert->add_option("--witness", a.witness_path, "witness or result file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*xa) return cmd_xa(a, out);
    if (*scan) return cmd_scan(a, out);
    if (*bounds) return cmd_bounds(a, out, bounds_a->count() > 0, bounds_grid->count() > 0);
    if (*opt) return cmd_optimize(a, out);
    if (*herm) return cmd_hermite(a, out);
    if (*series) return cmd_series(a, out);
    if (*field) return cmd_field(a, out, field_bbar->count() > 0);
    if (*tow) return cmd_tower(a, out);
    if (*plot) return cmd_plot(a, out);
    if (*cert) return cmd_certify(a, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace selfdual
