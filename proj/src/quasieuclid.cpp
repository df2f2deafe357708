#include "finsleroid/quasieuclid.hpp"

#include <cmath>
#include <numbers>

namespace finsleroid {

QPoint qpoint(const Space& sp, const Vec& t) {
  sp.check_dim(t, "image vector");
  const int n = sp.N() - 1;
  QPoint qp;
  qp.t = t;
  qp.m = std::sqrt(std::max(0.0, t.head(n).dot(sp.r() * t.head(n))));
  qp.S = std::hypot(qp.m, t(n));
  if (qp.S == 0.0) throw Error(ErrorKind::DegenerateVector, "image vector t = 0 is excluded");
  qp.L = t / qp.S;
  qp.L_low = sp.r_full() * qp.L;
  return qp;
}

Vec sigma(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  const int n = sp.N() - 1;
  Vec t(sp.N());
  t.head(n) = R.head(n) * (p.h * f.J);
  t(n) = f.A * f.J;
  return t;
}

Vec mu(const Param& p, const Space& sp, const Vec& t) {
  const auto qp = qpoint(sp, t);
  const int n = sp.N() - 1;
  const double phi = std::atan2(t(n), qp.m);
  const double k = std::exp(0.5 * p.G * phi);
  const double I = t(n) - 0.5 * p.G * qp.m;
  Vec R(sp.N());
  R.head(n) = t.head(n) / (p.h * k);
  R(n) = I / k;
  return R;
}

Mat sigma_jacobian(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  const int N = sp.N(), n = N - 1;
  if (p.g == 0.0) return Mat::Identity(N, N);
  if (f.q == 0.0) throw Error(ErrorKind::AxisSingular, "sigma_jacobian needs q > 0 when g != 0");
  const double g = p.g, h = p.h, q = f.q, Z = f.Z, A = f.A, B = f.B, J = f.J;
  const Vec Ra = R.head(n);
  Mat S(N, N);
  S(n, n) = (B + 0.5 * g * q * A) * J / B;
  S.block(0, n, n, 1) = -g * (Z * A - B) / (2 * q) * J / B * f.rho;
  S.block(n, 0, 1, n) = (0.5 * g * q * J * h / B * Ra).transpose();
  S.topLeftCorner(n, n) =
      (B * Mat::Identity(n, n) - (g * Z / (2 * q)) * f.rho * Ra.transpose()) * (J * h / B);
  return S;
}

Mat mu_jacobian(const Param& p, const Space& sp, const Vec& t) {
  const auto qp = qpoint(sp, t);
  const int N = sp.N(), n = N - 1;
  if (p.g == 0.0) return Mat::Identity(N, N);
  if (qp.m == 0.0) throw Error(ErrorKind::AxisSingular, "mu_jacobian needs m(t) > 0 when g != 0");
  const double g = p.g, h = p.h, m = qp.m, tN = t(n), S2 = qp.S * qp.S;
  const double k = std::exp(0.5 * p.G * std::atan2(tN, m));
  const double I = tN - 0.5 * p.G * m;
  const Vec ta = t.head(n);
  const Vec rt = sp.r() * ta;
  Mat M(N, N);
  M(n, n) = 1.0 / k - g * m * I / (2 * h * k * S2);
  M.block(0, n, n, 1) = -g * (h * m + 0.5 * g * tN) / (2 * h * h * k * S2) * rt;
  M.block(n, 0, 1, n) = (-g * m / (2 * h * h * k * S2) * ta).transpose();
  M.topLeftCorner(n, n) =
      Mat::Identity(n, n) / (h * k) + (g * tN / (2 * m * h * h * k * S2)) * rt * ta.transpose();
  return M;
}

NMetric n_metric(const Param& p, const Space& sp, const Vec& t) {
  const auto qp = qpoint(sp, t);
  NMetric nm;
  nm.upper = p.h * p.h * sp.r_full_inv() + 0.25 * p.g * p.g * qp.L * qp.L.transpose();
  nm.lower = sp.r_full() / (p.h * p.h) - 0.25 * p.G * p.G * qp.L_low * qp.L_low.transpose();
  nm.det = std::pow(p.h, 2 * (1 - sp.N())) * sp.det_r();
  return nm;
}

Tensor3 qe_christoffel(const Param& p, const Space& sp, const Vec& t) {
  const auto qp = qpoint(sp, t);
  const int N = sp.N();
  const Mat H = sp.r_full() - qp.L_low * qp.L_low.transpose();
  const double c = -0.25 * p.G * p.G / qp.S;
  Tensor3 out(N);
  for (int a = 0; a < N; ++a)
    for (int r = 0; r < N; ++r)
      for (int b = 0; b < N; ++b) out(a, r, b) = c * qp.L(r) * H(a, b);
  return out;
}

Tensor4 qe_curvature(const Param& p, const Space& sp, const Vec& t) {
  const auto qp = qpoint(sp, t);
  const int N = sp.N();
  const Mat H = sp.r_full() - qp.L_low * qp.L_low.transpose();
  const double c = -0.25 * p.G * p.G / (qp.S * qp.S);
  Tensor4 out(N);
  for (int a = 0; a < N; ++a)
    for (int r = 0; r < N; ++r)
      for (int b = 0; b < N; ++b)
        for (int s = 0; s < N; ++s) out(a, r, b, s) = c * (H(a, b) * H(r, s) - H(a, s) * H(b, r));
  return out;
}

QEFrames qe_frames(const Param& p, const Space& sp, const Vec& t, const std::optional<Mat>& base) {
  const auto qp = qpoint(sp, t);
  const int N = sp.N();
  const Mat H = base ? *base : sp.chol_frame();
  if (H.rows() != N || H.cols() != N) throw Error(ErrorKind::BadFrame, "base frame must be N x N");
  if ((H.transpose() * H - sp.r_full()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + sp.r_full().cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::BadFrame, "base frame is not orthonormal for r_pq");
  const Mat Hd = H.inverse();  // Hd(q, P) = h_P^q
  const double h = p.h;
  const Vec LP = H * qp.L;                   // L^P
  const Vec LPlow = Hd.transpose() * qp.L_low;  // L_P
  QEFrames fr;
  fr.f = H / h + ((h - 1) / h) * LP * qp.L_low.transpose();
  fr.m = h * Hd.transpose() + (1 - h) * LPlow * qp.L.transpose();
  fr.ricci = Tensor3(N);
  for (int P = 0; P < N; ++P)
    for (int Q = 0; Q < N; ++Q)
      for (int a = 0; a < N; ++a)
        fr.ricci(P, Q, a) = (h - 1) * (LP(P) * fr.f(Q, a) - LP(Q) * fr.f(P, a)) / qp.S;
  return fr;
}

double conformal_factor(const Param& p, const Space& sp, const Vec& t) {
  const auto qp = qpoint(sp, t);
  return std::pow(0.5 * qp.S * qp.S, 0.5 * (p.h - 1));
}

ConformalCheck conformal_check(const Param& p, const Space& sp, const Vec& t) {
  const auto qp = qpoint(sp, t);
  const int N = sp.N();
  const double x = 0.5 * qp.S * qp.S, h = p.h;
  ConformalCheck cc;
  cc.xi = std::pow(x, 0.5 * (h - 1));
  const double a_prime = 0.5 * (h - 1) * std::pow(x, 0.5 * (h - 3));
  const Vec t_low = sp.r_full() * t;
  cc.k = (cc.xi * Mat::Identity(N, N) + a_prime * t * t_low.transpose()) / h;
  const auto nm = n_metric(p, sp, t);
  cc.c = cc.k * nm.upper * cc.k.transpose();
  cc.expected = cc.xi * cc.xi * sp.r_full_inv();
  cc.det_c_low = 1.0 / cc.c.determinant();
  cc.det_c_expected = std::pow(cc.xi, -2 * N) * sp.det_r();
  return cc;
}

SphereGeometry sphere_geometry(const Param& p, const Space& sp, double radius, const Vec& u) {
  const int n = sp.N() - 1;
  if (n < 2) throw Error(ErrorKind::BadInput, "sphere curvature needs N >= 3");
  if (u.size() != n) throw Error(ErrorKind::BadInput, "chart point must have N-1 components");
  if (!(radius > 0)) throw Error(ErrorKind::BadInput, "radius must be positive");
  const Vec ul = sp.r() * u;
  const double u2 = u.dot(ul), r2 = radius * radius;
  if (u2 >= r2) throw Error(ErrorKind::ChartOutOfRange, "chart point lies outside |u| < r");
  const double h2 = p.h * p.h, D = r2 - u2;

  SphereGeometry sg;
  sg.q = (sp.r() + ul * ul.transpose() / D) / h2;
  // dq(a, b, c) = d q_ab / d u^c
  Tensor3 dq(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        dq(a, b, c) = ((sp.r()(a, c) * ul(b) + ul(a) * sp.r()(b, c)) / D + 2 * ul(a) * ul(b) * ul(c) / (D * D)) / h2;

  const double s = h2 / r2;
  sg.I = Tensor3(n);
  for (int a = 0; a < n; ++a)
    for (int e = 0; e < n; ++e)
      for (int b = 0; b < n; ++b) sg.I(a, e, b) = s * u(e) * sg.q(a, b);
  // dI(a, e, b, c) = d I_a^e_b / d u^c
  auto dI = [&](int a, int e, int b, int c) { return s * ((e == c ? sg.q(a, b) : 0.0) + u(e) * dq(a, b, c)); };

  Tensor4 Rm(n);  // Rm(e, c, a, b) = R_e^c_ab
  for (int e = 0; e < n; ++e)
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double v = dI(e, c, a, b) - dI(e, c, b, a);
          for (int d = 0; d < n; ++d) v += sg.I(e, d, a) * sg.I(d, c, b) - sg.I(e, d, b) * sg.I(d, c, a);
          Rm(e, c, a, b) = v;
        }
  sg.R = Tensor4(n);
  for (int e = 0; e < n; ++e)
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double v = 0;
          for (int f = 0; f < n; ++f) v += sg.q(c, f) * Rm(e, f, a, b);
          sg.R(e, c, a, b) = v;
        }
  const double area = sg.q(0, 0) * sg.q(1, 1) - sg.q(0, 1) * sg.q(0, 1);
  sg.sectional = sg.R(0, 1, 0, 1) / area;
  return sg;
}

double sphere_curvature(const Param& p, const Space& sp, double radius, const Vec& u) {
  return sphere_geometry(p, sp, radius, u).sectional;
}

}  // namespace finsleroid
