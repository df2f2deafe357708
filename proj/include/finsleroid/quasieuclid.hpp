#pragma once

#include <optional>

#include "finsleroid/core.hpp"
#include "finsleroid/tensor.hpp"

namespace finsleroid {

// Derived data of an image-space point t = sigma(R).
struct QPoint {
  Vec t;
  double S = 0;  // sqrt(r_pq t^p t^q)
  double m = 0;  // sqrt(r_ab t^a t^b)
  Vec L;         // t / S
  Vec L_low;     // r_pq L^q
};

QPoint qpoint(const Space& sp, const Vec& t);

Vec sigma(const Param& p, const Space& sp, const Vec& R);
Vec mu(const Param& p, const Space& sp, const Vec& t);

// Row index is the differentiation slot: J(p, q) = d sigma^q / d R^p.
Mat sigma_jacobian(const Param& p, const Space& sp, const Vec& R);
// M(q, p) = d mu^p / d t^q
Mat mu_jacobian(const Param& p, const Space& sp, const Vec& t);

struct NMetric {
  Mat lower;  // n_rs
  Mat upper;  // n^rs
  double det = 0;  // h^{2(1-N)} det r
};

NMetric n_metric(const Param& p, const Space& sp, const Vec& t);

// C(p, r, q) = N_p^r_q
Tensor3 qe_christoffel(const Param& p, const Space& sp, const Vec& t);
// R(p, r, q, s) = R_prqs
Tensor4 qe_curvature(const Param& p, const Space& sp, const Vec& t);

struct QEFrames {
  Mat f;      // f(P, q) = f^P_q, n_pq = sum_P f^P_p f^P_q
  Mat m;      // m(P, q) = m_P^q, n^pq = sum_P m_P^p m_P^q
  Tensor3 ricci;  // ricci(P, Q, p) = R^{PQ}_p
};

// base(P, q) = h^P_q orthonormal for r_pq; defaults to the Cholesky frame.
QEFrames qe_frames(const Param& p, const Space& sp, const Vec& t, const std::optional<Mat>& base = std::nullopt);

double conformal_factor(const Param& p, const Space& sp, const Vec& t);

struct ConformalCheck {
  double xi = 1;
  Mat k;         // k(p, q) = k^p_q
  Mat c;         // c^pq = k^p_r k^q_s n^rs
  Mat expected;  // xi^2 r^pq
  double det_c_low = 0;       // det(c_pq)
  double det_c_expected = 0;  // xi^{-2N} det(r_pq)
};

ConformalCheck conformal_check(const Param& p, const Space& sp, const Vec& t);

// Induced geometry of the sphere S(t) = radius in the graph chart t^a = u^a.
struct SphereGeometry {
  Mat q;          // q_ab(u)
  Tensor3 I;      // I(a, e, b) = I_a^e_b
  Tensor4 R;      // R(e, c, a, b) = R_ecab
  double sectional = 0;  // curvature of the (1,2) coordinate plane
};

SphereGeometry sphere_geometry(const Param& p, const Space& sp, double radius, const Vec& u);
double sphere_curvature(const Param& p, const Space& sp, double radius, const Vec& u);

}  // namespace finsleroid
