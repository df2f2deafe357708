#pragma once

#include "finsleroid/core.hpp"

namespace finsleroid {

// Generalized trigonometric functions of the Finsleroid-Minkowski plane (N = 2, r = 1).
// The unit indicatrix is R^1 = Sin(f), R^2 = Cos(f), f in [0, pi]; the other half is its mirror R^1 -> -R^1.
struct TrigTriple {
  double Cos = 1, Sin = 0, Cos_star = 1;
  double J = 1;
  // f-derivatives
  double dCos = 0, dSin = 1, dCos_star = 0;
};

TrigTriple gen_trig(const Param& p, double f);

double indicatrix_length(const Param& p);  // 2 pi / h

// Max norm of d2R/ds2 + I dR/ds + R along the indicatrix, ds = df / h.
double rund_residual(const Param& p, int f_samples, double I);
double rund_residual(const Param& p, int f_samples);  // I = -g

struct LandsbergReport {
  double wronskian = 0;         // max |R2 R1' - R1 R2' - 1/(h J^2)|
  double det_root = 0;          // max |sqrt(det g) - J^2| (relative)
  double convexity = 0;         // max |ratio - 1/h^2|
  double convexity_ratio = 1;   // ratio at the first interior sample
  double max_deviation() const;
};

LandsbergReport landsberg_check(const Param& p, int f_samples);

}  // namespace finsleroid
