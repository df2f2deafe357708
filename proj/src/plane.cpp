#include "finsleroid/plane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finsleroid/tensors.hpp"

namespace finsleroid {

namespace {

// interior samples of the half-generatrix; f = 0, pi lie on the axis where the metric is indeterminate
double sample_f(int i, int n) { return std::numbers::pi * (i + 0.5) / n; }

}  // namespace

TrigTriple gen_trig(const Param& p, double f) {
  const double h = p.h, G = p.G;
  // along the indicatrix Phi = pi/2 - f
  const double J = std::exp(0.5 * G * (0.5 * std::numbers::pi - f));
  const double c = std::cos(f), s = std::sin(f);
  TrigTriple t;
  t.J = J;
  t.Cos = (c - 0.5 * G * s) / J;
  t.Sin = s / (h * J);
  t.Cos_star = (c + 0.5 * G * s) / (h * h * J);
  t.dCos = -t.Sin / h;
  t.dSin = h * t.Cos_star;
  t.dCos_star = G * t.Cos_star - t.Sin / (h * h * h);
  return t;
}

double indicatrix_length(const Param& p) { return 2 * std::numbers::pi / p.h; }

double rund_residual(const Param& p, int f_samples, double I) {
  if (f_samples < 1) throw Error(ErrorKind::BadInput, "need at least one sample");
  const double h = p.h;
  double worst = 0;
  for (int i = 0; i < f_samples; ++i) {
    const auto t = gen_trig(p, sample_f(i, f_samples));
    // d/ds = h d/df
    const Eigen::Vector2d R(t.Sin, t.Cos);
    const Eigen::Vector2d d1(h * t.dSin, h * t.dCos);
    const Eigen::Vector2d d2(h * h * (h * t.dCos_star), h * h * (-t.dSin / h));
    worst = std::max(worst, (d2 + I * d1 + R).cwiseAbs().maxCoeff());
  }
  return worst;
}

double rund_residual(const Param& p, int f_samples) { return rund_residual(p, f_samples, -p.g); }

double LandsbergReport::max_deviation() const { return std::max({wronskian, det_root, convexity}); }

LandsbergReport landsberg_check(const Param& p, int f_samples) {
  if (f_samples < 1) throw Error(ErrorKind::BadInput, "need at least one sample");
  const Space sp(2);
  const double h = p.h;
  LandsbergReport rep;
  for (int i = 0; i < f_samples; ++i) {
    const double f = sample_f(i, f_samples);
    const auto t = gen_trig(p, f);
    const double R1 = t.Sin, R2 = t.Cos;
    const double R1p = t.dSin, R2p = t.dCos;
    const double R1pp = h * t.dCos_star, R2pp = -t.dSin / h;
    rep.wronskian = std::max(rep.wronskian, std::abs(R2 * R1p - R1 * R2p - 1.0 / (h * t.J * t.J)));

    Vec R(2);
    R << R1, R2;
    const double root = std::sqrt(metric(p, sp, R).determinant());
    rep.det_root = std::max(rep.det_root, std::abs(root / (t.J * t.J) - 1.0));

    const double ratio = (R2pp * R1p - R2p * R1pp) / (R2p * R1 - R2 * R1p);
    if (i == 0) rep.convexity_ratio = ratio;
    rep.convexity = std::max(rep.convexity, std::abs(ratio - 1.0 / (h * h)));
  }
  return rep;
}

}  // namespace finsleroid
