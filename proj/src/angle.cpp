#include "finsleroid/angle.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "finsleroid/geodesic.hpp"

namespace finsleroid {

namespace {

double acos_clamped(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

double euclid_angle(const Space& sp, const Vec& x, const Vec& y) {
  return acos_clamped(sp.dot(x, y) / (sp.norm(x) * sp.norm(y)));
}

void require_pair(const Space& sp, const Vec& t1, const Vec& t2, bool acute) {
  sp.check_dim(t1, "t1");
  sp.check_dim(t2, "t2");
  const double a = sp.norm(t1), S = sp.norm(t2);
  if (a == 0.0 || S == 0.0) throw Error(ErrorKind::DegenerateVector, "vectors must be nonzero");
  if (gram_root(sp, t1, t2) / (a * S) < 1e-12) throw Error(ErrorKind::CollinearVectors, "vectors must be independent");
  if (acute && sp.dot(t1, t2) <= 0) throw Error(ErrorKind::NotAcute, "the angle between the vectors must be acute");
}

}  // namespace

AnglePair fins_angle(const Param& p, const Space& sp, const Vec& R1, const Vec& R2) {
  const auto f1 = scalar_forms(p, sp, R1);
  const auto f2 = scalar_forms(p, sp, R2);
  const int n = sp.N() - 1;
  const double P = f1.A * f2.A + p.h * p.h * f1.rho.dot(R2.head(n));
  AnglePair ap;
  ap.alpha = acos_clamped(P / std::sqrt(f1.B * f2.B)) / p.h;
  const double ca = std::cos(ap.alpha);
  ap.scalar_product = f1.K * f2.K * ca;
  ap.ominus_sq = f1.K * f1.K + f2.K * f2.K - 2 * f1.K * f2.K * ca;
  return ap;
}

double qe_angle(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  sp.check_dim(t1, "t1");
  sp.check_dim(t2, "t2");
  if (sp.norm(t1) == 0.0 || sp.norm(t2) == 0.0) throw Error(ErrorKind::DegenerateVector, "vectors must be nonzero");
  return euclid_angle(sp, t1, t2) / p.h;
}

double axis_angle(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  return acos_clamped(f.A / std::sqrt(f.B)) / p.h;
}

double equator_angle(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  return acos_clamped(f.L / std::sqrt(f.B)) / p.h;
}

Vec perpendicular(const Param& p, const Space& sp, const Vec& R, const Vec& hint) {
  sp.check_dim(R, "vector");
  sp.check_dim(hint, "hint");
  const double nR = sp.norm(R);
  if (nR == 0.0) throw Error(ErrorKind::DegenerateVector, "vector must be nonzero");
  const Vec Rh = R / nR;
  Vec e = hint - sp.dot(hint, Rh) * Rh;
  const double ne = sp.norm(e);
  if (ne < 1e-12 * sp.norm(hint) || ne == 0.0) throw Error(ErrorKind::CollinearVectors, "hint must not be parallel to the vector");
  e /= ne;
  auto rot = [&](double th) -> Vec { return std::cos(th) * Rh + std::sin(th) * e; };
  auto F = [&](double th) { return fins_angle(p, sp, R, rot(th)).alpha - std::numbers::pi / 2; };
  double hi = std::numbers::pi;
  if (F(hi) < 0) throw Error(ErrorKind::NoConvergence, "no perpendicular direction in the given plane");
  auto tol = [](double a, double b) { return std::abs(b - a) < 1e-15; };
  const auto br = boost::math::tools::bisect(F, 0.0, hi, tol);
  return nR * rot(0.5 * (br.first + br.second));
}

ParallelogramResult parallelogram_sum(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  require_pair(sp, t1, t2, true);
  const Vec s = t1 + t2;
  const double c = sp.dot(t1, t2), u = gram_root(sp, t1, t2);
  const double th1 = euclid_angle(sp, t1, s), th2 = euclid_angle(sp, t2, s);
  const double m12 = (c * th1 - sp.dot(t2, t2) * th2) / u;
  const double m21 = (c * th2 - sp.dot(t1, t1) * th1) / u;
  ParallelogramResult r;
  r.k = 1.0 / p.h - 1.0;
  r.warning = r.k > 0.2;
  r.t = s + r.k * (m12 * t1 + m21 * t2);
  return r;
}

Vec parallelogram_s(const Param&, const Space& sp, const Vec& t1, const Vec& t3) {
  require_pair(sp, t1, t3, false);
  const Vec d = t3 - t1;
  const double u = gram_root(sp, t1, t3);
  const double a13 = euclid_angle(sp, t1, t3);
  const double ad3 = euclid_angle(sp, d, t3);
  const double d1 = sp.dot(d, t1);
  return ((sp.dot(t1, t1) * a13 - d1 * ad3) * d + (sp.dot(d, d) * ad3 - d1 * a13) * t1) / u;
}

ParallelogramResult parallelogram_diff(const Param& p, const Space& sp, const Vec& t1, const Vec& t3) {
  require_pair(sp, t1, t3, true);
  ParallelogramResult r;
  r.k = 1.0 / p.h - 1.0;
  r.warning = r.k > 0.2;
  r.t = t3 - t1 + r.k * parallelogram_s(p, sp, t1, t3);
  return r;
}

Eigen::Vector2d parallelogram_residuals(const Param& p, const Space& sp, const Vec& t1, const Vec& t2, const Vec& t3) {
  const double n1 = sp.norm(t1), n2 = sp.norm(t2), n3 = sp.norm(t3);
  const double a13 = euclid_angle(sp, t1, t3) / p.h;
  const double a23 = euclid_angle(sp, t2, t3) / p.h;
  return {n2 * n2 - (n1 * n1 + n3 * n3 - 2 * n1 * n3 * std::cos(a13)),
          n1 * n1 - (n3 * n3 + n2 * n2 - 2 * n3 * n2 * std::cos(a23))};
}

ParallelogramExact parallelogram_exact(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  require_pair(sp, t1, t2, true);
  const double scale = sp.dot(t1, t1) + sp.dot(t2, t2);
  const double tol = 1e-13 * scale;
  auto F = [&](const Eigen::Vector2d& v) { return parallelogram_residuals(p, sp, t1, t2, v(0) * t1 + v(1) * t2); };

  ParallelogramExact out;
  Eigen::Vector2d v(1.0, 1.0);
  Eigen::Vector2d Fv = F(v);
  for (int it = 0; it < 100; ++it) {
    out.iterations = it;
    if (Fv.cwiseAbs().maxCoeff() <= tol) break;
    Eigen::Matrix2d Jm;
    for (int j = 0; j < 2; ++j) {
      const double e = 1e-7 * (1.0 + std::abs(v(j)));
      Eigen::Vector2d vp = v, vm = v;
      vp(j) += e;
      vm(j) -= e;
      Jm.col(j) = (F(vp) - F(vm)) / (2 * e);
    }
    const Eigen::Vector2d step = Jm.fullPivLu().solve(-Fv);
    double lam = 1.0;
    Eigen::Vector2d vn = v + step, Fn = F(vn);
    while (Fn.norm() >= Fv.norm() && lam > 1e-6) {
      lam *= 0.5;
      vn = v + lam * step;
      Fn = F(vn);
    }
    if (Fn.norm() >= Fv.norm()) break;
    v = vn;
    Fv = Fn;
  }
  out.x = v(0);
  out.y = v(1);
  out.t = v(0) * t1 + v(1) * t2;
  out.residual = Fv.cwiseAbs().maxCoeff();
  if (!(out.residual <= 1e-10 * std::max(1.0, scale)))
    throw Error(ErrorKind::NoConvergence, "parallelogram Newton solve did not converge");
  return out;
}

}  // namespace finsleroid
