#include <doctest.h>

#include <boost/math/tools/minima.hpp>
#include <numbers>

#include "finsleroid/shape.hpp"
#include "support.hpp"

using namespace finsleroid;
constexpr double pi = std::numbers::pi;

namespace {

// (q, Z) of the generatrix at f by bisection on K = 1 along the polar ray; independent of the f-parameterization
std::pair<double, double> ray_point(const Param& p, double theta) {
  const Space sp(2);
  Vec dir(2);
  dir << std::sin(theta), std::cos(theta);
  // K is 1-homogeneous: the unit point is dir / K(dir)
  const double K = fmf(p, sp, dir);
  return {dir(0) / K, dir(1) / K};
}

}  // namespace

TEST_SUITE("shape") {
  TEST_CASE("unit ball at g = 0") {
    const auto s = shape_report(make_param(0.0));
    CHECK(s.q_star == 1.0);
    CHECK(s.Z1 == -1.0);
    CHECK(s.Z2 == 1.0);
    CHECK(s.altitude == 2.0);
    CHECK(s.width == doctest::Approx(2.0).epsilon(1e-15));
    for (const auto& pt : indicatrix_profile(make_param(0.0), 33)) CHECK(std::hypot(pt.q, pt.Z) == doctest::Approx(1.0));
  }

  TEST_CASE("altitude and width match the extremes of the body") {
    for (double g : {-1.9, -1.2, -0.6, -0.4, -0.2, 0.2, 0.4, 0.6, 1.2, 1.9}) {
      const auto p = make_param(g);
      const auto s = shape_report(p);
      CHECK(s.altitude == doctest::Approx(2 * std::cosh(p.G * pi / 4)).epsilon(1e-14));
      // extremes by optimization over the polar angle of the ray
      auto negZ = [&](double th) { return -ray_point(p, th).second; };
      auto negq = [&](double th) { return -ray_point(p, th).first; };
      const double Zmax = ray_point(p, 0.0).second, Zmin = ray_point(p, pi).second;
      CHECK(std::abs(Zmax - s.Z2) <= 1e-8);
      CHECK(std::abs(Zmin - s.Z1) <= 1e-8);
      CHECK(-boost::math::tools::brent_find_minima(negZ, -0.5, 0.5, 52).second <= s.Z2 + 1e-12);
      const auto wq = boost::math::tools::brent_find_minima(negq, 0.01, pi - 0.01, 52);
      CHECK(std::abs(-wq.second - s.q_2star) <= 1e-8);
      CHECK(std::abs(ray_point(p, wq.first).second - s.Z_2star) <= 1e-6);
      CHECK(s.width == doctest::Approx(2 * s.q_2star).epsilon(1e-15));
      CHECK(s.Z_2star == doctest::Approx(-g * s.q_2star).epsilon(1e-14));
      CHECK(s.equator_radius == s.q_2star);
      CHECK(s.equator_height == s.Z_2star);
      // section Z = 0
      CHECK(ray_point(p, pi / 2).first == doctest::Approx(s.q_star).epsilon(1e-14));
      CHECK(q_star_of(g) == doctest::Approx(s.q_star).epsilon(1e-15));
      CHECK(z_2star_of(g) == doctest::Approx(s.Z_2star).epsilon(1e-13));
      // the polyline scan agrees too
      double qmax = 0, zlo = 1e9, zhi = -1e9;
      for (const auto& pt : indicatrix_profile(p, 200001)) {
        qmax = std::max(qmax, pt.q);
        zlo = std::min(zlo, pt.Z);
        zhi = std::max(zhi, pt.Z);
      }
      CHECK(std::abs(zhi - zlo - s.altitude) <= 1e-8);
      CHECK(std::abs(qmax - s.q_2star) <= 1e-7);
    }
  }

  TEST_CASE("limiting vertex ratio") {
    for (double g : {1.99, -1.99, 1.9999, -1.9999}) {
      const auto s = shape_report(make_param(g));
      REQUIRE(std::isfinite(s.q_2star));
      CHECK(s.q_2star / std::abs(s.Z_2star) == doctest::Approx(1 / std::abs(g)).epsilon(1e-14));
      CHECK(s.q_2star / std::abs(s.Z_2star) == doctest::Approx(0.5).epsilon(0.01));
    }
    CHECK(shape_report(make_param(0.4)).altitude == doctest::Approx(2.1034).epsilon(1e-4));
  }

  TEST_CASE("profile points lie on the indicatrix") {
    oracle::Rng rng(71);
    for (int i = 0; i < 50; ++i) {
      const auto p = rng.param();
      for (const auto& pt : indicatrix_profile(p, 64)) {
        Vec R(2);
        R << pt.q, pt.Z;
        CHECK(std::abs(fmf(p, Space(2), R) - 1.0) <= 1e-12);
        if (pt.q > 0) CHECK(std::atan2(p.h * pt.q, pt.Z + 0.5 * p.g * pt.q) == doctest::Approx(pt.f).epsilon(1e-12));
      }
      const Space sp = rng.space(4);
      Vec n = rng.gauss(3);
      n /= std::sqrt(n.dot(sp.r() * n));
      const double f = rng.uniform(0, pi);
      CHECK(std::abs(fmf(p, sp, indicatrix_point(p, sp, f, n)) - 1.0) <= 1e-12);
      CHECK_THROWS_AS(indicatrix_point(p, sp, f, 2 * n), Error);
    }
    const auto pole = indicatrix_point(make_param(0.4), Space(2), 0.0, Vec::Ones(1));
    CHECK(pole(0) == 0.0);
    CHECK(pole(1) == doctest::Approx(std::exp(-make_param(0.4).G * pi / 4)).epsilon(1e-15));
  }

  TEST_CASE("gZ parity and co-Finsleroid mirror") {
    oracle::Rng rng(72);
    for (int i = 0; i < 30; ++i) {
      const auto p = rng.param();
      const auto a = indicatrix_profile(p, 101);
      const auto b = indicatrix_profile(make_param(-p.g), 101);
      const auto c = co_indicatrix_profile(p, 101);
      for (size_t k = 0; k < a.size(); ++k) {
        const auto& m = b[a.size() - 1 - k];
        CHECK(std::abs(a[k].q - m.q) <= 1e-10);
        CHECK(std::abs(a[k].Z + m.Z) <= 1e-10);
        CHECK(std::abs(c[k].q - b[k].q) <= 1e-12);
        CHECK(std::abs(c[k].Z - b[k].Z) <= 1e-12);
      }
    }
  }

  TEST_CASE("slopes and strict convexity") {
    oracle::Rng rng(73);
    const Space sp(2);
    for (int i = 0; i < 30; ++i) {
      const auto p = rng.param();
      const auto prof = indicatrix_profile(p, 401);
      for (size_t k = 1; k + 1 < prof.size(); ++k) {
        Vec R(2);
        R << prof[k].q, prof[k].Z;
        const auto sl = profile_slopes(p, sp, R);
        REQUIRE(sl.has_dq_dZ);
        CHECK(sl.d2q_dZ2 < 0);
        // dq/dZ against the chord of the f-parameterization
        const double e = 1e-6;
        auto at = [&](double f) {
          const Vec l = indicatrix_point(p, sp, f, Vec::Ones(1));
          return std::pair{l(0), l(1)};
        };
        const auto [q1, z1] = at(prof[k].f - e);
        const auto [q2, z2] = at(prof[k].f + e);
        CHECK(sl.dq_dZ == doctest::Approx((q2 - q1) / (z2 - z1)).epsilon(1e-6).scale(1.0));
        CHECK(sl.dZ_dq * sl.dq_dZ == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
    // slope zero on the axis; approaching the equator from above the slope tends to -1/g
    const auto p = make_param(0.5);
    Vec top(2);
    top << 0.0, 1.0;
    CHECK(profile_slopes(p, sp, top).dZ_dq == 0.0);
    Vec eq(2);
    eq << 1.0, 1e-9;
    CHECK(profile_slopes(p, sp, eq).dZ_dq == doctest::Approx(-1.0 / p.g).epsilon(1e-6));
    Vec v(2);
    v << 1.0, -0.5;
    try {
      profile_slopes(p, sp, v);
      FAIL("expected VertexSingular");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::VertexSingular);
    }
  }

  TEST_CASE("figure curves are monotone") {
    double prev_q = 0, prev_z = 1e9;
    for (int i = 0; i <= 380; ++i) {
      const double g = -1.9 + i * 0.01;
      const double q = q_star_of(g), z = z_2star_of(g);
      if (g > 0.005) CHECK(q < prev_q);
      if (g < -0.005 && i > 0) CHECK(q > prev_q);
      if (i > 0) CHECK(z < prev_z);
      prev_q = q;
      prev_z = z;
    }
    CHECK(q_star_of(0.0) == 1.0);
  }
}
