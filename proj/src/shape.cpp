#include "finsleroid/shape.hpp"

#include <cmath>
#include <numbers>

namespace finsleroid {

namespace {
constexpr double pi = std::numbers::pi;
}

double q_star_of(double g) {
  const auto p = make_param(g);
  return std::exp(-0.5 * p.G * std::atan(0.5 * p.G));
}

double z_2star_of(double g) {
  return -g / q_star_of(g);
}

ShapeReport shape_report(const Param& p) {
  ShapeReport s;
  s.q_star = std::exp(-0.5 * p.G * std::atan(0.5 * p.G));
  s.Z1 = -std::exp(p.G * pi / 4);
  s.Z2 = std::exp(-p.G * pi / 4);
  s.altitude = s.Z2 - s.Z1;
  // Widest section: dq/df = 0 at f = pi/2 + atan(G/2); there A/(hq) = -G/2.
  if (p.g == 0.0) {
    s.Phi_2star = 0.0;
  } else {
    const double f2 = pi / 2 + std::atan(0.5 * p.G);
    const double e = std::exp(0.5 * p.G * (f2 - pi / 2));
    const double q = std::sin(f2) / p.h * e;
    const double Z = (std::cos(f2) - 0.5 * p.G * std::sin(f2)) * e;
    const double A = Z + 0.5 * p.g * q;
    s.Phi_2star = std::atan(A / (p.h * q));
  }
  s.q_2star = std::exp(-0.5 * p.G * s.Phi_2star);
  s.Z_2star = -p.g * s.q_2star;
  s.width = 2 * s.q_2star;
  s.equator_radius = s.q_2star;
  s.equator_height = s.Z_2star;
  return s;
}

Vec indicatrix_point(const Param& p, const Space& sp, double f, const Vec& n) {
  const int m = sp.N() - 1;
  if (n.size() != m) throw Error(ErrorKind::BadInput, "direction must have N-1 components");
  if (std::abs(n.dot(sp.r() * n) - 1.0) > 1e-10) throw Error(ErrorKind::BadDirection, "direction n must satisfy r_ab n^a n^b = 1");
  if (!(f >= 0.0 && f <= pi)) throw Error(ErrorKind::BadInput, "f must lie in [0, pi]");
  const double e = std::exp(0.5 * p.G * (f - pi / 2));
  Vec l(sp.N());
  l.head(m) = n * (std::sin(f) / p.h * e);
  l(m) = (std::cos(f) - 0.5 * p.G * std::sin(f)) * e;
  return l;
}

std::vector<ProfilePoint> indicatrix_profile(const Param& p, int n_samples) {
  if (n_samples < 8) throw Error(ErrorKind::BadInput, "profile needs at least 8 samples");
  std::vector<ProfilePoint> out(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double f = pi * i / (n_samples - 1);
    const double e = std::exp(0.5 * p.G * (f - pi / 2));
    out[i] = {f, std::sin(f) / p.h * e, (std::cos(f) - 0.5 * p.G * std::sin(f)) * e};
  }
  out.front().q = 0.0;
  out.back().q = 0.0;
  return out;
}

std::vector<ProfilePoint> co_indicatrix_profile(const Param& p, int n_samples) {
  return indicatrix_profile(make_param(-p.g), n_samples);
}

ProfileSlopes profile_slopes(const Param& p, const Space& sp, const Vec& R) {
  const auto f = scalar_forms(p, sp, R);
  const double D = f.Z + p.g * f.q;
  if (D == 0.0) throw Error(ErrorKind::VertexSingular, "Z + gq = 0: the profile has a vertical tangent");
  ProfileSlopes s;
  s.dZ_dq = -f.q / D;
  s.d2Z_dq2 = -f.B / (D * D * D);
  if (f.q > 0) {
    s.has_dq_dZ = true;
    s.dq_dZ = -p.g - f.Z / f.q;
    s.d2q_dZ2 = -f.B / (f.q * f.q * f.q);
  }
  return s;
}

}  // namespace finsleroid
