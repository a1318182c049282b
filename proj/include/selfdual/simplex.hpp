#pragma once

#include <Eigen/Dense>

namespace selfdual::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status s);

struct Solution {
  Status status = Status::infeasible;
  Eigen::VectorXd x;       ///< primal solution of the standard-form problem
  Eigen::VectorXd duals;   ///< simplex multipliers y with A^T y <= c at optimum
  double objective = 0.0;
  int pivots = 0;
};

struct Options {
  double tol = 1e-10;
  int max_pivots = 50000;
};

/// Dense two-phase tableau simplex for
///
///   minimize c^T x  subject to  A x = b,  x >= 0.
///
/// Entering and leaving choices follow Bland's rule (lowest index wins
/// every tie), so the method terminates on degenerate problems. Intended
/// for few rows and up to a few thousand columns.
Solution solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c, const Options& opts = {});

}  // namespace selfdual::lp
