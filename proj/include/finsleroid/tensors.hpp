#pragma once

#include "finsleroid/core.hpp"
#include "finsleroid/tensor.hpp"

namespace finsleroid {

// R_p = (1/2) dK^2/dR^p
Vec grad_covector(const Param& p, const Space& sp, const Vec& R);

Mat metric(const Param& p, const Space& sp, const Vec& R);
Mat metric_inverse(const Param& p, const Space& sp, const Vec& R);
// closed form J^{2N} det r
double metric_det(const Param& p, const Space& sp, const Vec& R);

Mat angular(const Param& p, const Space& sp, const Vec& R);

struct CartanSet {
  Tensor3 lower;  // C_pqr
  Tensor3 mixed;  // mixed(q, p, r) = C_q^p_r
  Vec C_low;      // C_p
  Vec C_up;       // C^p
  double CC = 0;  // C_t C^t = N^2 g^2 / (4 K^2)
};

// Components stay finite at Z = 0; only q = 0 is rejected.
CartanSet cartan(const Param& p, const Space& sp, const Vec& R);

// Right-hand side of the algebraic representation of C_pqr through h_pq and C_p.
Tensor3 cartan_representation(const Param& p, const Space& sp, const Vec& R);

struct Curvature {
  Tensor4 S;
  double S_star = 0;    // least-squares fit against (h_pr h_qs - h_ps h_qr)/K^2
  bool fitted = false;  // false for N = 2 where the basis tensor vanishes
  double fit_residual = 0;
  double indicatrix_curvature() const { return 1.0 + S_star; }
};

Curvature curvature_S(const Param& p, const Space& sp, const Vec& R);

}  // namespace finsleroid
