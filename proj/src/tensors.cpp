#include "finsleroid/tensors.hpp"

#include <cmath>

namespace finsleroid {

namespace {

void require_off_axis(const Param& p, const ScalarForms& f, const char* what) {
  if (f.q == 0.0 && p.g != 0.0)
    throw Error(ErrorKind::AxisSingular, std::string(what) + " is indeterminate on the axis q = 0 when g != 0");
}

}  // namespace

Vec grad_covector(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  const int n = sp.N() - 1;
  const double K2B = f.K * f.K / f.B;
  Vec out(sp.N());
  out.head(n) = f.rho * K2B;
  out(n) = (f.Z + p.g * f.q) * K2B;
  return out;
}

Mat metric(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  if (p.g == 0.0) return sp.r_full();
  require_off_axis(p, f, "metric");
  const int n = sp.N() - 1;
  const double g = p.g, q = f.q, Z = f.Z, B = f.B, K2 = f.K * f.K;
  Mat m(sp.N(), sp.N());
  m(n, n) = ((Z + g * q) * (Z + g * q) + q * q) * K2 / (B * B);
  const Vec gNa = g * q * f.rho * K2 / (B * B);
  m.block(n, 0, 1, n) = gNa.transpose();
  m.block(0, n, n, 1) = gNa;
  m.topLeftCorner(n, n) = K2 / B * sp.r() - (g * Z / q * K2 / (B * B)) * f.rho * f.rho.transpose();
  return m;
}

Mat metric_inverse(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  if (p.g == 0.0) return sp.r_full_inv();
  require_off_axis(p, f, "metric_inverse");
  const int n = sp.N() - 1;
  const double g = p.g, q = f.q, Z = f.Z, B = f.B, K2 = f.K * f.K;
  const Vec Ra = R.head(n);
  Mat m(sp.N(), sp.N());
  m(n, n) = (Z * Z + q * q) / K2;
  const Vec gNa = -g * q * Ra / K2;
  m.block(n, 0, 1, n) = gNa.transpose();
  m.block(0, n, n, 1) = gNa;
  m.topLeftCorner(n, n) = B / K2 * sp.r_inv() + (g * (Z + g * q) / (q * K2)) * Ra * Ra.transpose();
  return m;
}

double metric_det(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  return std::pow(f.J, 2 * sp.N()) * sp.det_r();
}

Mat angular(const Param& p, const Space& sp, const Vec& R) {
  const Mat g = metric(p, sp, R);
  const Vec Rl = g * R;
  const double K2 = R.dot(Rl);
  return g - Rl * Rl.transpose() / K2;
}

CartanSet cartan(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  const int N = sp.N(), n = N - 1;
  CartanSet c;
  c.lower = Tensor3(N);
  c.mixed = Tensor3(N);
  c.C_low = Vec::Zero(N);
  c.C_up = Vec::Zero(N);
  if (p.g == 0.0) return c;
  require_off_axis(p, f, "cartan");

  const double g = p.g, q = f.q, Z = f.Z, B = f.B, K2 = f.K * f.K;
  const Vec Ra = R.head(n);
  const Vec& rho = f.rho;
  const Mat& r = sp.r();
  auto& Cm = c.mixed;  // Cm(q, p, r) = C_q^p_r

  Cm(n, n, n) = g * q * q * q / (B * B);
  for (int a = 0; a < n; ++a) {
    const double v = -g * q * rho(a) * Z / (B * B);
    Cm(a, n, n) = v;
    Cm(n, n, a) = v;
    Cm(n, a, n) = -g * q * (Z + g * q) * Ra(a) / (B * B);
    for (int b = 0; b < n; ++b) {
      Cm(a, n, b) = 0.5 * g * q * r(a, b) / B +
                    0.5 * g * (Z * Z - g * q * Z - q * q) * rho(a) * rho(b) / (q * B * B);
      const double v2 = 0.5 * g * q * (a == b ? 1.0 : 0.0) / B +
                        0.5 * g * (Z * Z + g * q * Z - q * q) * Ra(a) * rho(b) / (q * B * B);
      Cm(n, a, b) = v2;
      Cm(b, a, n) = v2;
      for (int e = 0; e < n; ++e) {
        // C_a^b_e
        Cm(a, b, e) = -0.5 * g *
                          ((a == b ? rho(e) * Z : 0.0) + (e == b ? rho(a) * Z : 0.0) +
                           (Z + g * q) * r(a, e) * Ra(b)) /
                          (q * B) +
                      0.5 * g * (g * q * B + Z * B + 2 * q * q * Z) * rho(a) * Ra(b) * rho(e) /
                          (q * q * q * B * B);
      }
    }
  }

  // lower the middle index with the metric
  const Mat gm = metric(p, sp, R);
  for (int i = 0; i < N; ++i)
    for (int s = 0; s < N; ++s)
      for (int k = 0; k < N; ++k) {
        double acc = 0;
        for (int t = 0; t < N; ++t) acc += gm(s, t) * Cm(i, t, k);
        c.lower(i, s, k) = acc;
      }

  const double half_N = 0.5 * N;
  c.C_low(n) = half_N * g * q / B;
  c.C_low.head(n) = -half_N * g * Z / (q * B) * rho;
  c.C_up(n) = half_N * g * q / K2;
  c.C_up.head(n) = -half_N * g * (Z + g * q) / (q * K2) * Ra;
  c.CC = N * N * g * g / (4.0 * K2);
  return c;
}

Tensor3 cartan_representation(const Param& p, const Space& sp, const Vec& R) {
  const int N = sp.N();
  Tensor3 out(N);
  if (p.g == 0.0) return out;
  const auto c = cartan(p, sp, R);
  const Mat h = angular(p, sp, R);
  const Vec& C = c.C_low;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        out(i, j, k) = (h(i, j) * C(k) + h(i, k) * C(j) + h(j, k) * C(i) - C(i) * C(j) * C(k) / c.CC) / N;
  return out;
}

Curvature curvature_S(const Param& p, const Space& sp, const Vec& R) {
  const int N = sp.N();
  Curvature out;
  out.S = Tensor4(N);
  const auto c = cartan(p, sp, R);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          double acc = 0;
          for (int t = 0; t < N; ++t) acc += c.lower(t, b, i) * c.mixed(a, t, j) - c.lower(t, b, j) * c.mixed(a, t, i);
          out.S(a, b, i, j) = acc;
        }

  if (N < 3) {
    out.S_star = -0.25 * p.g * p.g;
    return out;
  }
  if (p.g == 0.0) {
    out.fitted = true;
    return out;
  }
  const Mat h = angular(p, sp, R);
  const double K2 = R.dot(metric(p, sp, R) * R);
  double num = 0, den = 0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          const double T = (h(a, i) * h(b, j) - h(a, j) * h(b, i)) / K2;
          num += out.S(a, b, i, j) * T;
          den += T * T;
        }
  out.S_star = num / den;
  out.fitted = true;
  double res = 0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          const double T = (h(a, i) * h(b, j) - h(a, j) * h(b, i)) / K2;
          res = std::max(res, std::abs(out.S(a, b, i, j) - out.S_star * T));
        }
  out.fit_residual = res;
  return out;
}

}  // namespace finsleroid
