#include "finsleroid/twovector.hpp"

#include <algorithm>
#include <cmath>

#include "finsleroid/geodesic.hpp"
#include "finsleroid/quasieuclid.hpp"
#include "finsleroid/tensors.hpp"

namespace finsleroid {

namespace {

struct Pair {
  double a, S, c, u, alpha, ca, sa;
  Vec d1, d2;
  bool coincident = false;
};

Pair pair_data(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  sp.check_dim(t1, "t1");
  sp.check_dim(t2, "t2");
  Pair d;
  d.a = sp.norm(t1);
  d.S = sp.norm(t2);
  if (d.a == 0.0 || d.S == 0.0) throw Error(ErrorKind::DegenerateVector, "vectors must be nonzero");
  d.c = sp.dot(t1, t2);
  d.u = gram_root(sp, t1, t2);
  if (d.u / (d.a * d.S) < coincidence_tol) {
    if (d.c < 0) throw Error(ErrorKind::CollinearVectors, "vectors on opposite rays");
    d.coincident = true;
    d.alpha = 0.0;
    d.ca = 1.0;
    d.sa = 0.0;
    return d;
  }
  d.alpha = std::acos(std::clamp(d.c / (d.a * d.S), -1.0, 1.0)) / p.h;
  d.ca = std::cos(d.alpha);
  d.sa = std::sin(d.alpha);
  d.d1 = (d.a * d.a * t2 - d.c * t1) / d.u;
  d.d2 = (d.S * d.S * t1 - d.c * t2) / d.u;
  return d;
}

Pair independent_pair(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  auto d = pair_data(p, sp, t1, t2);
  if (d.coincident) throw Error(ErrorKind::CollinearVectors, "vectors must be independent");
  return d;
}

}  // namespace

TwoVectorTensor n2(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  const auto d = pair_data(p, sp, t1, t2);
  TwoVectorTensor out;
  out.u = d.u;
  if (d.coincident) {
    out.coincident = true;
    out.n = n_metric(p, sp, t1).lower;
    return out;
  }
  const double h = p.h, aS = d.a * d.S;
  out.alpha = d.alpha;
  out.A1 = d.ca - d.c * d.sa / (h * d.u);
  out.A2 = d.ca / h - d.c * d.sa / d.u;
  const Vec t1l = sp.lower(t1), t2l = sp.lower(t2), d1l = sp.lower(d.d1), d2l = sp.lower(d.d2);
  out.n = (aS * d.sa / (h * d.u)) * sp.r_full() + (out.A1 / aS) * t1l * t2l.transpose() -
          (out.A2 / (h * aS)) * d1l * d2l.transpose();
  return out;
}

double n2_det(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  const auto d = independent_pair(p, sp, t1, t2);
  return std::pow(d.a * d.S * d.sa / d.u, sp.N() - 2) * std::pow(p.h, -sp.N()) * sp.det_r();
}

TwoVectorFrame n2_frame(const Param& p, const Space& sp, const Vec& t1, const Vec& t2, const std::optional<Mat>& base) {
  const auto d = independent_pair(p, sp, t1, t2);
  const int N = sp.N();
  const Mat H = base ? *base : sp.chol_frame();
  if (H.rows() != N || H.cols() != N) throw Error(ErrorKind::BadFrame, "base frame must be N x N");
  if ((H.transpose() * H - sp.r_full()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + sp.r_full().cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::BadFrame, "base frame is not orthonormal for r_pq");

  const double h = p.h, aS = d.a * d.S, c = d.c, u = d.u;
  if (!(d.sa > 0)) throw Error(ErrorKind::NegativeRadicand, "sin(alpha) <= 0: frame undefined");
  const double z2 = aS * aS * d.sa / u, z = std::sqrt(z2);
  const double X1 = h * d.ca - c * d.sa / u;
  const double X2 = d.ca / h - c * d.sa / u;

  const double rad2 = z2 + c * X2;
  if (rad2 < 0) throw Error(ErrorKind::NegativeRadicand, "frame radicand negative");
  TwoVectorFrame fr;
  fr.z = z;
  fr.gamma = -X2 / (z + std::sqrt(rad2));
  const double kap = -fr.gamma * u / (z - fr.gamma * c);
  const double C = c + 2 * kap * u - kap * kap * c;
  const double rad1 = z2 + X1 * C;
  if (rad1 < 0) throw Error(ErrorKind::NegativeRadicand, "frame radicand negative");
  fr.beta = X1 / (z + std::sqrt(rad1));
  fr.delta = kap * fr.beta;

  const double scale = 1.0 / std::sqrt(h * aS);
  auto build = [&](const Vec& x1, const Vec& x2, const Vec& e1, const Vec& e2) -> Mat {
    const Mat inner = (fr.beta * x2 + fr.delta * e2) * sp.lower(x1).transpose() +
                      fr.gamma * e2 * sp.lower(e1).transpose();
    return scale * (z * H + H * inner);
  };
  fr.f12 = build(t1, t2, d.d1, d.d2);
  fr.f21 = build(t2, t1, d.d2, d.d1);
  return fr;
}

CovectorPair covector_pair(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  const auto d = pair_data(p, sp, t1, t2);
  CovectorPair cp;
  if (d.coincident) {
    // T1 -> (S/a) t1, T2 -> (a/S) t2
    cp.T1 = (d.S / d.a) * t1;
    cp.T2 = (d.a / d.S) * t2;
    return cp;
  }
  const double h = p.h;
  cp.alpha = d.alpha;
  cp.T1 = (d.S / d.a) * d.ca * t1 + (d.S / (h * d.a)) * d.sa * d.d1;
  cp.T2 = (d.a / d.S) * d.ca * t2 + (d.a / (h * d.S)) * d.sa * d.d2;
  cp.u_signed = (2 / h) * d.c * d.sa * d.ca - (d.ca * d.ca - d.sa * d.sa / (h * h)) * d.u;
  return cp;
}

double implicit_angle_residual(const Param& p, const Space& sp, const Vec& T1, const Vec& T2, double alpha,
                               double u_signed) {
  const double h = p.h, ca = std::cos(alpha), sa = std::sin(alpha);
  const double P = ca * ca + sa * sa / (h * h);
  const double rhs = ((ca * ca - sa * sa / (h * h)) * sp.dot(T1, T2) + (2 / h) * sa * ca * u_signed) /
                     (P * sp.norm(T1) * sp.norm(T2));
  return std::cos(h * alpha) - rhs;
}

VectorPair invert_covector_pair(const Param& p, const Space& sp, const Vec& T1, const Vec& T2, double alpha) {
  sp.check_dim(T1, "T1");
  sp.check_dim(T2, "T2");
  const double TT1 = sp.dot(T1, T1), TT2 = sp.dot(T2, T2), T12 = sp.dot(T1, T2);
  if (TT1 == 0.0 || TT2 == 0.0) throw Error(ErrorKind::DegenerateVector, "covectors must be nonzero");
  const double uT = gram_root(sp, T1, T2);
  if (uT / std::sqrt(TT1 * TT2) < 1e-14) throw Error(ErrorKind::SingularXi, "xi = 0: covector pair cannot be inverted");
  // the root enters with the sign of -xi; pick the one consistent with the implicit angle equation
  const double rp = std::abs(implicit_angle_residual(p, sp, T1, T2, alpha, uT));
  const double rm = std::abs(implicit_angle_residual(p, sp, T1, T2, alpha, -uT));
  VectorPair vp;
  vp.u_signed = rp <= rm ? uT : -uT;
  const double h = p.h, ca = std::cos(alpha), sa = std::sin(alpha);
  const double P = ca * ca + sa * sa / (h * h);
  const Vec D1 = (TT1 * T2 - T12 * T1) / vp.u_signed;
  const Vec D2 = (TT2 * T1 - T12 * T2) / vp.u_signed;
  vp.t1 = std::sqrt(TT2 / TT1) * (ca / P * T1 + sa / (h * P) * D1);
  vp.t2 = std::sqrt(TT1 / TT2) * (ca / P * T2 + sa / (h * P) * D2);
  return vp;
}

namespace {

struct G2Data {
  ScalarForms fR, fS;
  double rRS = 0, P = 0, W = 0, alpha = 0, ca = 0, sa = 0;
  bool parallel = false;
};

G2Data g2_data(const Param& p, const Space& sp, const Vec& R, const Vec& S) {
  G2Data d;
  d.fR = scalar_forms(p, sp, R);
  d.fS = scalar_forms(p, sp, S);
  const int n = sp.N() - 1;
  d.rRS = d.fR.rho.dot(S.head(n));
  d.P = d.fR.A * d.fS.A + p.h * p.h * d.rRS;
  const double BB = d.fR.B * d.fS.B;
  // W = Gram root of (h R^a, A_R) and (h S^a, A_S): B is their squared r-norm, P their product
  Vec x(sp.N()), y(sp.N());
  x << p.h * R.head(n), d.fR.A;
  y << p.h * S.head(n), d.fS.A;
  d.W = gram_root(sp, x, y);
  if (d.W / std::sqrt(BB) < coincidence_tol) {
    if (d.P < 0) throw Error(ErrorKind::CollinearVectors, "vectors on opposite rays");
    d.parallel = true;
    return d;
  }
  if (!(d.W > 0)) throw Error(ErrorKind::DegenerateW, "W(g;R,S) vanishes");
  d.alpha = std::acos(std::clamp(d.P / std::sqrt(BB), -1.0, 1.0)) / p.h;
  d.ca = std::cos(d.alpha);
  d.sa = std::sin(d.alpha);
  return d;
}

void require_off_axis(const Param& p, const ScalarForms& f) {
  if (p.g != 0.0 && f.q == 0.0) throw Error(ErrorKind::AxisSingular, "two-vector tensor needs q > 0 when g != 0");
}

// M_p(R, S) from precomputed forms (fR of R, fS of S)
Vec m_of(const Space& sp, const ScalarForms& fR, const ScalarForms& fS, double rRS, const Vec& S) {
  const int n = sp.N() - 1;
  Vec M(sp.N());
  M(n) = fR.q * fR.q * fS.A - rRS * fR.A;
  const Vec rhoS = sp.r() * S.head(n);
  const double tail = fR.q > 0 ? rRS * fR.L / fR.q : 0.0;
  M.head(n) = -fR.Z * fS.A * fR.rho + fR.B * rhoS - tail * fR.rho;
  return M;
}

}  // namespace

Vec m_vector(const Param& p, const Space& sp, const Vec& R, const Vec& S) {
  const auto fR = scalar_forms(p, sp, R);
  const auto fS = scalar_forms(p, sp, S);
  require_off_axis(p, fR);
  const int n = sp.N() - 1;
  return m_of(sp, fR, fS, fR.rho.dot(S.head(n)), S);
}

ScalarGrad scalar_grad(const Param& p, const Space& sp, const Vec& R, const Vec& S) {
  const auto d = g2_data(p, sp, R, S);
  const double KR = d.fR.K, KS = d.fS.K;
  ScalarGrad out;
  if (d.parallel) {
    out.dR = grad_covector(p, sp, R) * (KS / KR);
    out.dS = grad_covector(p, sp, S) * (KR / KS);
    return out;
  }
  require_off_axis(p, d.fR);
  require_off_axis(p, d.fS);
  const double prod = KR * KS * d.ca;
  const Vec sRS = m_of(sp, d.fR, d.fS, d.rRS, S) * (KR / (d.W * d.fR.B));
  const Vec sSR = m_of(sp, d.fS, d.fR, d.rRS, R) * (KS / (d.W * d.fS.B));
  out.dR = grad_covector(p, sp, R) * (prod / (KR * KR)) + (p.h * KS * d.sa) * sRS;
  out.dS = grad_covector(p, sp, S) * (prod / (KS * KS)) + (p.h * KR * d.sa) * sSR;
  return out;
}

Mat G2(const Param& p, const Space& sp, const Vec& R, const Vec& S) {
  const auto d = g2_data(p, sp, R, S);
  if (d.parallel) return metric(p, sp, R);
  require_off_axis(p, d.fR);
  require_off_axis(p, d.fS);

  const int N = sp.N(), n = N - 1;
  const double g = p.g, h = p.h;
  const auto& fR = d.fR;
  const auto& fS = d.fS;
  const double KR = fR.K, KS = fS.K, W = d.W;
  const Vec Rl = grad_covector(p, sp, R), Sl = grad_covector(p, sp, S);
  const Vec MR = m_of(sp, fR, fS, d.rRS, S);
  const Vec sRS = MR * (KR / (W * fR.B));
  const Vec sSR = m_of(sp, fS, fR, d.rRS, R) * (KS / (W * fS.B));

  // derivatives along S^q (index q), axial slot last
  const Vec rhoS = fS.rho;
  const double invqS = 1.0 / fS.q;
  Vec dBS(N), dP(N);
  dBS(n) = 2 * fS.Z + g * fS.q;
  dBS.head(n) = (2 * fS.q + g * fS.Z) * invqS * rhoS;
  dP(n) = fR.A;
  dP.head(n) = fR.A * 0.5 * g * invqS * rhoS + h * h * fR.rho;
  const Vec dW = (fR.B * dBS - 2 * d.P * dP) / (2 * W);

  Mat dM(N, N);  // dM(p, q) = dM_p / dS^q
  dM(n, n) = fR.q * fR.q;
  dM.block(n, 0, 1, n) = (fR.q * fR.q * 0.5 * g * invqS * rhoS - fR.A * fR.rho).transpose();
  dM.block(0, n, n, 1) = -fR.Z * fR.rho;
  const double tail = fR.L / fR.q;
  dM.topLeftCorner(n, n) = -fR.Z * 0.5 * g * invqS * fR.rho * rhoS.transpose() + fR.B * sp.r() -
                           tail * fR.rho * fR.rho.transpose();

  const Mat s_pq = (KS * KR / fR.B) * (dM / W - MR * dW.transpose() / (W * W));

  return (Rl * Sl.transpose() / (KR * KS) - h * h * sRS * sSR.transpose()) * d.ca +
         h * d.sa * ((Rl / KR) * sSR.transpose() + sRS * (Sl / KS).transpose() + s_pq);
}

}  // namespace finsleroid
