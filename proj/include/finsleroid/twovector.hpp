#pragma once

#include <optional>

#include "finsleroid/core.hpp"

namespace finsleroid {

// Vectors whose Gram root relative to |t1||t2| falls below this are treated as coincident.
inline constexpr double coincidence_tol = 1e-8;

struct TwoVectorTensor {
  Mat n;  // n(p, q) = d^2 <t1,t2> / dt1^p dt2^q
  double A1 = 0, A2 = 0;
  double u = 0;
  double alpha = 0;
  bool coincident = false;  // routed to the one-vector tensor
};

TwoVectorTensor n2(const Param& p, const Space& sp, const Vec& t1, const Vec& t2);
// (aS sin(alpha)/u)^{N-2} h^{-N} det r
double n2_det(const Param& p, const Space& sp, const Vec& t1, const Vec& t2);

struct TwoVectorFrame {
  Mat f12;  // f12(R, p) = f^R_p(t1, t2)
  Mat f21;  // f^R_p(t2, t1); n2 = f12^T f21
  double z = 0, beta = 0, gamma = 0, delta = 0;
};

TwoVectorFrame n2_frame(const Param& p, const Space& sp, const Vec& t1, const Vec& t2,
                        const std::optional<Mat>& base = std::nullopt);

struct CovectorPair {
  Vec T1, T2;  // contravariant form; lowering by r_pq gives n2 t2 and t1 n2
  double alpha = 0;
  double u_signed = 0;  // signed Gram root of (T1, T2)
};

CovectorPair covector_pair(const Param& p, const Space& sp, const Vec& t1, const Vec& t2);

struct VectorPair {
  Vec t1, t2;
  double u_signed = 0;
};

VectorPair invert_covector_pair(const Param& p, const Space& sp, const Vec& T1, const Vec& T2, double alpha);

// cos(h alpha) minus the implicit right-hand side built from (T1, T2) and the signed root.
double implicit_angle_residual(const Param& p, const Space& sp, const Vec& T1, const Vec& T2, double alpha,
                               double u_signed);

struct ScalarGrad {
  Vec dR;  // d<R,S>/dR^p
  Vec dS;  // d<R,S>/dS^q
};

ScalarGrad scalar_grad(const Param& p, const Space& sp, const Vec& R, const Vec& S);
// M_p(R, S); M_p R^p = 0
Vec m_vector(const Param& p, const Space& sp, const Vec& R, const Vec& S);

// G(p, q) = d^2 <R,S> / dR^p dS^q
Mat G2(const Param& p, const Space& sp, const Vec& R, const Vec& S);

}  // namespace finsleroid
