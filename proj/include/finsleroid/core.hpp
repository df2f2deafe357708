#pragma once

#include <Eigen/Dense>

#include "finsleroid/error.hpp"

namespace finsleroid {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Param {
  double g = 0.0;
  double h = 1.0;
  double G = 0.0;
  double g_plus = 1.0;
  double g_minus = -1.0;
  double g_up_plus = 1.0;   // same pattern with g -> -g
  double g_up_minus = -1.0;
};

Param make_param(double g);

// Input Euclidean structure. Vectors are stored with the axial component last:
// R = (R^1, ..., R^{N-1}, Z).
class Space {
 public:
  Space() = default;
  explicit Space(int N);  // identity r_ab
  explicit Space(const Mat& r_ab);

  int N() const { return N_; }
  const Mat& r() const { return r_; }          // (N-1)x(N-1)
  const Mat& r_inv() const { return r_inv_; }
  const Mat& r_full() const { return rf_; }     // NxN, r_NN = 1
  const Mat& r_full_inv() const { return rf_inv_; }
  const Mat& chol_frame() const { return frame_; }  // rows h^P_q with h^T h = r_full
  double det_r() const { return det_r_; }

  double dot(const Vec& x, const Vec& y) const { return x.dot(rf_ * y); }
  double norm(const Vec& x) const;
  Vec lower(const Vec& x) const { return rf_ * x; }
  void check_dim(const Vec& v, const char* what) const;

 private:
  int N_ = 0;
  Mat r_, r_inv_, rf_, rf_inv_, frame_;
  double det_r_ = 1.0;
};

struct ScalarForms {
  double q = 0, Z = 0, B = 0, A = 0, L = 0, Phi = 0, J = 1, K = 0;
  bool has_w = false;  // w, Q, E only defined when Z != 0
  double w = 0, Q = 0, E = 0;
  Vec rho;  // r_ab R^b
};

int sign_indicator(double Z);

ScalarForms scalar_forms(const Param& p, const Space& sp, const Vec& R);
double fmf(const Param& p, const Space& sp, const Vec& R);

}  // namespace finsleroid
