#pragma once

#include "finsleroid/core.hpp"

namespace finsleroid {

// Covectors share the layout of vectors: (R_1, ..., R_{N-1}, Zhat).
struct CoForms {
  double q = 0, Z = 0, B = 0, A = 0, Phi = 0, J = 1, H = 0;
  Vec v;  // r^ab R_b
};

CoForms co_forms(const Param& p, const Space& sp, const Vec& Rhat);
double fhf(const Param& p, const Space& sp, const Vec& Rhat);

Vec to_costate(const Param& p, const Space& sp, const Vec& R);
Vec from_costate(const Param& p, const Space& sp, const Vec& Rhat);

struct CoMetric {
  Mat upper;  // g^pq(Rhat)
  Mat lower;  // g_pq(Rhat)
};

CoMetric co_metric(const Param& p, const Space& sp, const Vec& Rhat);

// Variable maps between w = q/Z and p = qhat/Zhat at matched points.
struct VariableMaps {
  double w = 0, pw = 0;  // w and p
  double Q = 0, Qhat = 0;
  double V = 0, W = 0;   // V = K/Z, W = H/Zhat
};

VariableMaps variable_maps(const Param& p, const Space& sp, const Vec& R);

}  // namespace finsleroid
