#include "finsleroid/cospace.hpp"

#include <cmath>
#include <numbers>

#include "finsleroid/tensors.hpp"

namespace finsleroid {

CoForms co_forms(const Param& p, const Space& sp, const Vec& Rhat) {
  sp.check_dim(Rhat, "covector");
  const int n = sp.N() - 1;
  CoForms f;
  f.Z = Rhat(n);
  f.v = sp.r_inv() * Rhat.head(n);
  f.q = std::sqrt(std::max(0.0, Rhat.head(n).dot(f.v)));
  if (f.q == 0.0 && f.Z == 0.0) throw Error(ErrorKind::DegenerateVector, "the zero covector is excluded");
  f.B = f.Z * f.Z - p.g * f.q * f.Z + f.q * f.q;
  f.A = f.Z - 0.5 * p.g * f.q;
  f.Phi = f.q > 0 ? std::atan2(f.A, p.h * f.q) : sign_indicator(f.Z) * std::numbers::pi / 2;
  f.J = std::exp(-0.5 * p.G * f.Phi);
  f.H = std::sqrt(f.B) * f.J;
  return f;
}

double fhf(const Param& p, const Space& sp, const Vec& Rhat) { return co_forms(p, sp, Rhat).H; }

Vec to_costate(const Param& p, const Space& sp, const Vec& R) { return grad_covector(p, sp, R); }

Vec from_costate(const Param& p, const Space& sp, const Vec& Rhat) {
  const auto f = co_forms(p, sp, Rhat);
  const int n = sp.N() - 1;
  const double H2B = f.H * f.H / f.B;
  Vec R(sp.N());
  R.head(n) = f.v * H2B;
  R(n) = (f.Z - p.g * f.q) * H2B;
  return R;
}

CoMetric co_metric(const Param& p, const Space& sp, const Vec& Rhat) {
  const auto f = co_forms(p, sp, Rhat);
  CoMetric m;
  if (p.g == 0.0) {
    m.upper = sp.r_full_inv();
    m.lower = sp.r_full();
    return m;
  }
  if (f.q == 0.0) throw Error(ErrorKind::AxisSingular, "co_metric is indeterminate on the axis when g != 0");
  const int N = sp.N(), n = N - 1;
  const double g = p.g, q = f.q, Z = f.Z, B = f.B, H2 = f.H * f.H;
  const Vec Ra = Rhat.head(n);

  m.upper.resize(N, N);
  m.upper(n, n) = ((Z - g * q) * (Z - g * q) + q * q) * H2 / (B * B);
  const Vec uNa = -g * q * f.v * H2 / (B * B);
  m.upper.block(n, 0, 1, n) = uNa.transpose();
  m.upper.block(0, n, n, 1) = uNa;
  m.upper.topLeftCorner(n, n) = H2 / B * sp.r_inv() + (g * Z / q * H2 / (B * B)) * f.v * f.v.transpose();

  m.lower.resize(N, N);
  m.lower(n, n) = (Z * Z + q * q) / H2;
  const Vec lNa = g * q * Ra / H2;
  m.lower.block(n, 0, 1, n) = lNa.transpose();
  m.lower.block(0, n, n, 1) = lNa;
  m.lower.topLeftCorner(n, n) = B / H2 * sp.r() - (g * (Z - g * q) / (q * H2)) * Ra * Ra.transpose();
  return m;
}

VariableMaps variable_maps(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  if (!f.has_w) throw Error(ErrorKind::EquatorSingular, "w = q/Z is undefined at Z = 0");
  const Vec Rhat = to_costate(p, sp, R);
  const auto c = co_forms(p, sp, Rhat);
  VariableMaps m;
  m.w = f.w;
  m.pw = c.q / c.Z;
  m.Q = f.Q;
  m.Qhat = 1.0 - p.g * m.pw + m.pw * m.pw;
  m.V = f.K / f.Z;
  m.W = c.H / c.Z;
  return m;
}

}  // namespace finsleroid
