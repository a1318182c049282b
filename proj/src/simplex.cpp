#include "selfdual/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace selfdual::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Tableau layout: rows 0..m-1 are constraints, row m is the reduced-cost
// row; columns 0..n-1 structural, n..n+m-1 artificial, last column rhs.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
      : m_(A.rows()), n_(A.cols()), t_(m_ + 1, n_ + m_ + 1), basis_(m_) {
    t_.setZero();
    for (int i = 0; i < m_; ++i) {
      const double sign = b(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign * A.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = sign * b(i);
      basis_[i] = n_ + i;
    }
  }

  int rhs() const { return n_ + m_; }
  bool is_artificial(int j) const { return j >= n_; }

  // Loads the cost row for the given column costs and prices out the basis.
  void set_costs(const Eigen::VectorXd& full_costs) {
    t_.row(m_).setZero();
    t_.row(m_).head(n_ + m_) = full_costs.transpose();
    for (int i = 0; i < m_; ++i) {
      const double cb = full_costs(basis_[i]);
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  // Pivots until optimal: steepest reduced cost, switching to Bland's rule
  // for good after a run of degenerate pivots. `allow_artificial` controls
  // whether artificial columns may enter.
  Status iterate(bool allow_artificial, const Options& opts, int& pivots) {
    const int limit = allow_artificial ? n_ + m_ : n_;
    constexpr int kDegenerateRun = 50;
    int degenerate = 0;
    bool bland = false;
    while (true) {
      int enter = -1;
      double most_negative = -opts.tol;
      for (int j = 0; j < limit; ++j) {
        if (t_(m_, j) < most_negative) {
          enter = j;
          if (bland) break;
          most_negative = t_(m_, j);
        }
      }
      if (enter < 0) return Status::optimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double piv = t_(i, enter);
        if (piv <= opts.tol) continue;
        const double ratio = t_(i, rhs()) / piv;
        if (ratio < best_ratio - opts.tol ||
            (std::abs(ratio - best_ratio) <= opts.tol && leave >= 0 &&
             basis_[i] < basis_[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) return Status::unbounded;
      if (best_ratio <= opts.tol) {
        if (++degenerate >= kDegenerateRun) bland = true;
      } else {
        degenerate = 0;
      }
      pivot(leave, enter);
      if (++pivots > opts.max_pivots) return Status::iteration_limit;
    }
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  // Pivots zero-level artificials out of the basis where a structural
  // column allows it; rows with no such column are redundant.
  void expel_artificials(double tol) {
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (int j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > tol) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double objective_value() const { return -t_(m_, rhs()); }
  int basis(int i) const { return basis_[i]; }
  double value(int i) const { return t_(i, rhs()); }
  int rows() const { return m_; }

 private:
  int m_;
  int n_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> t_;
  std::vector<int> basis_;
};

}  // namespace

Solution solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c, const Options& opts) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) {
    throw std::invalid_argument("solve_standard_form: dimension mismatch");
  }

  Solution sol;
  Tableau tab(A, b);

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  tab.set_costs(phase1);
  Status st = tab.iterate(true, opts, sol.pivots);
  if (st != Status::optimal) {
    sol.status = st;
    return sol;
  }
  const double scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (tab.objective_value() > 1e-9 * scale) {
    sol.status = Status::infeasible;
    return sol;
  }
  tab.expel_artificials(opts.tol);

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = c;
  tab.set_costs(phase2);
  st = tab.iterate(false, opts, sol.pivots);
  sol.status = st;
  if (st != Status::optimal) return sol;

  sol.x = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd basis_matrix(m, m);
  Eigen::VectorXd basis_costs(m);
  for (int i = 0; i < m; ++i) {
    const int j = tab.basis(i);
    if (j < n) {
      sol.x(j) = tab.value(i);
      basis_matrix.col(i) = A.col(j);
      basis_costs(i) = c(j);
    } else {
      // Redundant row: its artificial stays basic at level zero.
      basis_matrix.col(i) = Eigen::VectorXd::Unit(m, j - n);
      basis_costs(i) = 0.0;
    }
  }
  sol.duals = basis_matrix.transpose().fullPivLu().solve(basis_costs);
  sol.objective = c.dot(sol.x);
  return sol;
}

}  // namespace selfdual::lp
