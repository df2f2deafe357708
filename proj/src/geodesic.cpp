#include "finsleroid/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finsleroid/quasieuclid.hpp"

namespace finsleroid {

namespace {

constexpr double radial_tol = 1e-12;

double clamp_cos(double c) {
  if (c > 1.0 + 1e-12 || c < -1.0 - 1e-12) throw Error(ErrorKind::BadInput, "cosine out of range");
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace

double gram_root(const Space& sp, const Vec& t1, const Vec& t2) {
  // Lagrange identity in an r-orthonormal frame: no cancellation for near-parallel pairs
  const Vec x = sp.chol_frame() * t1, y = sp.chol_frame() * t2;
  double s = 0;
  for (int i = 0; i < x.size(); ++i)
    for (int j = i + 1; j < x.size(); ++j) {
      const double w = x(i) * y(j) - x(j) * y(i);
      s += w * w;
    }
  return std::sqrt(s);
}

GeodesicBoundary connect(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  sp.check_dim(t1, "t1");
  sp.check_dim(t2, "t2");
  GeodesicBoundary bd;
  bd.param = p;
  bd.t1 = t1;
  bd.t2 = t2;
  bd.a = sp.norm(t1);
  bd.S_end = sp.norm(t2);
  if (bd.a == 0.0 || bd.S_end == 0.0) throw Error(ErrorKind::DegenerateVector, "geodesic endpoints must be nonzero");
  const double a = bd.a, S = bd.S_end, c = sp.dot(t1, t2);
  const double u = gram_root(sp, t1, t2);

  if (u / (a * S) < radial_tol) {
    if (c < 0) throw Error(ErrorKind::AntipodalSingular, "endpoints on opposite rays: the connecting line passes the origin");
    bd.radial = true;
    bd.alpha = 0.0;
    bd.delta_s = std::abs(S - a);
    bd.b = S >= a ? a : -a;
    bd.rho = 0.0;
    return bd;
  }

  bd.alpha = std::acos(clamp_cos(c / (a * S))) / p.h;
  if (bd.alpha >= std::numbers::pi)
    throw Error(ErrorKind::AntipodalSingular, "angle alpha >= pi: no geodesic of the closed-form family");
  const double ca = std::cos(bd.alpha), sa = std::sin(bd.alpha);
  bd.delta_s = std::sqrt(std::max(0.0, a * a + S * S - 2 * a * S * ca));
  bd.b = (a * S * ca - a * a) / bd.delta_s;
  bd.rho = a * S * sa / bd.delta_s;
  return bd;
}

double geodesic_S2(const GeodesicBoundary& bd, double s) { return bd.a * bd.a + 2 * bd.b * s + s * s; }

GeodesicPoint qe_geodesic_at(const GeodesicBoundary& bd, double s) {
  GeodesicPoint gp;
  const double S = std::sqrt(std::max(0.0, geodesic_S2(bd, s)));
  if (bd.radial) {
    gp.t = (S / bd.a) * bd.t1;
    return gp;
  }
  const double h = bd.param.h, a = bd.a;
  gp.nu = std::atan2(bd.rho * s, a * a + bd.b * s);
  const double shA = std::sin(h * bd.alpha);
  gp.t = (S / a) * std::sin(h * (bd.alpha - gp.nu)) / shA * bd.t1 + (S / bd.S_end) * std::sin(h * gp.nu) / shA * bd.t2;
  return gp;
}

Vec qe_velocity(const GeodesicBoundary& bd, double s) {
  if (bd.radial) return (bd.b >= 0 ? 1.0 : -1.0) / bd.a * bd.t1;
  const double h = bd.param.h, a = bd.a;
  const double S2 = geodesic_S2(bd, s), S = std::sqrt(S2);
  const auto gp = qe_geodesic_at(bd, s);
  const double shA = std::sin(h * bd.alpha);
  return (bd.b + s) / S2 * gp.t - bd.rho * h / (a * S) * std::cos(h * (bd.alpha - gp.nu)) / shA * bd.t1 +
         bd.rho * h / (S * bd.S_end) * std::cos(h * gp.nu) / shA * bd.t2;
}

EndpointVelocities endpoint_velocities(const GeodesicBoundary& bd) {
  return {qe_velocity(bd, 0.0), qe_velocity(bd, bd.delta_s)};
}

Vec qe_geodesic_initial(const Param& p, const Space& sp, const Vec& t1, const Vec& v1, double s) {
  sp.check_dim(t1, "t1");
  sp.check_dim(v1, "v1");
  const auto nm = n_metric(p, sp, t1);
  const double speed2 = v1.dot(nm.lower * v1);
  if (std::abs(speed2 - 1.0) > 1e-9) throw Error(ErrorKind::NotUnitSpeed, "initial velocity must satisfy n_pq v^p v^q = 1");
  const double a = sp.norm(t1), b = sp.dot(t1, v1), h = p.h;
  const double rho = std::sqrt(std::max(0.0, a * a - b * b));
  const double S = std::sqrt(std::max(0.0, a * a + 2 * b * s + s * s));
  const double den = a * a + b * s;
  const double nu = std::atan2(rho * s, den);
  double sig;  // sin(h nu) / (h rho), with its rho -> 0 limit
  if (rho > 1e-14 * a) {
    sig = std::sin(h * nu) / (h * rho);
  } else {
    if (den <= 0) throw Error(ErrorKind::DegenerateVector, "radial geodesic reaches the origin");
    sig = s / den;
  }
  const double m = (S / a) * (std::cos(h * nu) - b * sig);
  const double n = a * S * sig;
  return m * t1 + n * v1;
}

GeodesicBoundary finsleroid_boundary(const Param& p, const Space& sp, const Vec& R1, const Vec& R2) {
  return connect(p, sp, sigma(p, sp, R1), sigma(p, sp, R2));
}

Vec finsleroid_geodesic_at(const Space& sp, const GeodesicBoundary& bd, double s) {
  return mu(bd.param, sp, qe_geodesic_at(bd, s).t);
}

Vec finsleroid_geodesic(const Param& p, const Space& sp, const Vec& R1, const Vec& R2, double s) {
  return finsleroid_geodesic_at(sp, finsleroid_boundary(p, sp, R1, R2), s);
}

DifferenceGradients difference_gradients(const Param& p, const Space& sp, const Vec& t1, const Vec& t2) {
  sp.check_dim(t1, "t1");
  sp.check_dim(t2, "t2");
  const double a = sp.norm(t1), S = sp.norm(t2), c = sp.dot(t1, t2);
  if (a == 0.0 || S == 0.0) throw Error(ErrorKind::DegenerateVector, "vectors must be nonzero");
  DifferenceGradients dg;
  dg.u = gram_root(sp, t1, t2);
  if (dg.u / (a * S) < radial_tol) throw Error(ErrorKind::CollinearVectors, "difference gradients need independent vectors");
  dg.d1 = (a * a * t2 - c * t1) / dg.u;
  dg.d2 = (S * S * t1 - c * t2) / dg.u;
  const double al = std::acos(clamp_cos(c / (a * S))) / p.h;
  const double ca = std::cos(al), sa = std::sin(al);
  dg.b1 = t1 - (S / a) * ca * t1 - (S / (p.h * a)) * sa * dg.d1;
  dg.b2 = t2 - (a / S) * ca * t2 - (a / (p.h * S)) * sa * dg.d2;
  return dg;
}

}  // namespace finsleroid
