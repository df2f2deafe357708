#pragma once

// Independent numerical oracles for the unit and acceptance tests.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <random>

#include "finsleroid/core.hpp"

namespace oracle {

using finsleroid::Mat;
using finsleroid::Param;
using finsleroid::Space;
using finsleroid::Vec;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng); }
  int pick(std::initializer_list<int> xs) {
    const int i = std::uniform_int_distribution<int>(0, static_cast<int>(xs.size()) - 1)(eng);
    return *(xs.begin() + i);
  }
  Param param(double gmax = 1.9) { return finsleroid::make_param(uniform(-gmax, gmax)); }
  Space space(int N) {
    const int n = N - 1;
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = 0.5 * normal();
    return Space(Mat(A * A.transpose() + 0.7 * Mat::Identity(n, n)));
  }
  Vec gauss(int N) {
    Vec v(N);
    for (int i = 0; i < N; ++i) v(i) = normal();
    return v;
  }
  // q bounded away from zero relative to |R|
  Vec off_axis(const Space& sp, double frac = 0.2) {
    const int n = sp.N() - 1;
    for (;;) {
      Vec R = gauss(sp.N());
      if (std::sqrt(R.head(n).dot(sp.r() * R.head(n))) > frac * sp.norm(R)) return R;
    }
  }
};

// H(a, b) = d^2 F / dx^a dx^b by the four-point central stencil.
inline Mat hessian(const std::function<double(const Vec&)>& F, const Vec& x, double e) {
  const int n = static_cast<int>(x.size());
  Mat H(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec pp = x, pm = x, mp = x, mm = x;
      pp(a) += e, pp(b) += e;
      pm(a) += e, pm(b) -= e;
      mp(a) -= e, mp(b) += e;
      mm(a) -= e, mm(b) -= e;
      H(a, b) = (F(pp) - F(pm) - F(mp) + F(mm)) / (4 * e * e);
    }
  return H;
}

// J(p, q) = d f^q / d x^p
inline Mat jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double e) {
  const int n = static_cast<int>(x.size());
  const Vec f0 = f(x);
  Mat J(n, f0.size());
  for (int p = 0; p < n; ++p) {
    Vec xp = x, xm = x;
    xp(p) += e;
    xm(p) -= e;
    J.row(p) = ((f(xp) - f(xm)) / (2 * e)).transpose();
  }
  return J;
}

inline Vec gradient(const std::function<double(const Vec&)>& F, const Vec& x, double e) {
  Vec g(x.size());
  for (int p = 0; p < x.size(); ++p) {
    Vec xp = x, xm = x;
    xp(p) += e;
    xm(p) -= e;
    g(p) = (F(xp) - F(xm)) / (2 * e);
  }
  return g;
}

// M(p, q) = d^2 F(x, y) / dx^p dy^q
inline Mat mixed_hessian(const std::function<double(const Vec&, const Vec&)>& F, const Vec& x, const Vec& y, double e) {
  Mat M(x.size(), y.size());
  for (int p = 0; p < x.size(); ++p)
    for (int q = 0; q < y.size(); ++q) {
      Vec xp = x, xm = x, yp = y, ym = y;
      xp(p) += e, xm(p) -= e, yp(q) += e, ym(q) -= e;
      M(p, q) = (F(xp, yp) - F(xp, ym) - F(xm, yp) + F(xm, ym)) / (4 * e * e);
    }
  return M;
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
