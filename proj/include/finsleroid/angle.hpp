#pragma once

#include "finsleroid/core.hpp"

namespace finsleroid {

struct AnglePair {
  double alpha = 0;
  double scalar_product = 0;
  double ominus_sq = 0;  // squared two-point length
};

AnglePair fins_angle(const Param& p, const Space& sp, const Vec& R1, const Vec& R2);
double qe_angle(const Param& p, const Space& sp, const Vec& t1, const Vec& t2);

double axis_angle(const Param& p, const Space& sp, const Vec& R);
double equator_angle(const Param& p, const Space& sp, const Vec& R);

// Companion R_perp in span{R, e} with fins_angle(R, R_perp) = pi/2.
Vec perpendicular(const Param& p, const Space& sp, const Vec& R, const Vec& hint);

struct ParallelogramResult {
  Vec t;
  double k = 0;          // 1/h - 1
  bool warning = false;  // k above 0.2: first-order result unreliable
};

ParallelogramResult parallelogram_sum(const Param& p, const Space& sp, const Vec& t1, const Vec& t2);
ParallelogramResult parallelogram_diff(const Param& p, const Space& sp, const Vec& t1, const Vec& t3);
// s(t1, t3) of the first-order difference
Vec parallelogram_s(const Param& p, const Space& sp, const Vec& t1, const Vec& t3);

struct ParallelogramExact {
  Vec t;
  double x = 1, y = 1;  // t = x t1 + y t2
  double residual = 0;
  int iterations = 0;
};

// Residuals of the two side-length equations at t3.
Eigen::Vector2d parallelogram_residuals(const Param& p, const Space& sp, const Vec& t1, const Vec& t2, const Vec& t3);
ParallelogramExact parallelogram_exact(const Param& p, const Space& sp, const Vec& t1, const Vec& t2);

}  // namespace finsleroid
