#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "selfdual/rational_poly.hpp"

namespace selfdual {

inline constexpr int kMaxSeriesOrder = 8;

/// Coefficients P_0..P_order (polynomials in X) of H_{1+h}(X) in powers
/// of h, dimension 1.
PolySeries taylor_h_d1(int order);

/// Coefficients P_0..P_order of H_a(X) in powers of k = a^2 - 1 with the
/// half-dimension c = d/2 given exactly:
///   (1+k)^c e^{-kX} + e^{(1 - (1+k)^{-1}) X} - 1 - (1+k)^c.
PolySeries taylor_k_general(const mpq_class& c, int order);

/// Re-expands a k-series in h through k = 2h + h^2 (so a = 1 + h).
PolySeries substitute_k_in_h(const PolySeries& k_series, int order);

/// Coefficient of w^n in (1 - w)^{n-1} e^{2w}, i.e. the n-th Taylor
/// coefficient of e^{2z/(1+z)}.
mpq_class residue_q(int n);

/// Coefficient of k^n in (1+k) e^{-2k} for n >= 2.
mpq_class first_part_coeff(int n);

struct P56 {
  mpq_class p5;
  mpq_class p6;
};

/// Coefficients of k^5 and k^6 in (1+k) e^{-2k} + e^{2(1 - 1/(1+k))} - 2 - k.
P56 p56_check();

struct IdentityCheck {
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs every exact coefficient identity; `order` (4..8) bounds the series
/// used for the cross-parametrization check.
std::vector<IdentityCheck> run_identity_checks(int order = 4);

}  // namespace selfdual
