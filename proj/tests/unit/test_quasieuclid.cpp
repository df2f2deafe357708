#include <doctest.h>

#include "finsleroid/quasieuclid.hpp"
#include "support.hpp"

using namespace finsleroid;

namespace {

// Levi-Civita connection of n_pq by central differences: G(a, r, b) = Gamma^r_ab
Tensor3 fd_christoffel(const Param& p, const Space& sp, const Vec& t, double e) {
  const int N = sp.N();
  std::vector<Mat> dn(N);
  for (int c = 0; c < N; ++c) {
    Vec tp = t, tm = t;
    tp(c) += e;
    tm(c) -= e;
    dn[c] = (n_metric(p, sp, tp).lower - n_metric(p, sp, tm).lower) / (2 * e);
  }
  const Mat up = n_metric(p, sp, t).upper;
  Tensor3 G(N);
  for (int a = 0; a < N; ++a)
    for (int r = 0; r < N; ++r)
      for (int b = 0; b < N; ++b) {
        double v = 0;
        for (int s = 0; s < N; ++s) v += 0.5 * up(r, s) * (dn[a](s, b) + dn[b](s, a) - dn[s](a, b));
        G(a, r, b) = v;
      }
  return G;
}

}  // namespace

TEST_SUITE("quasieuclid") {
  TEST_CASE("sigma / mu roundtrip and norm preservation") {
    oracle::Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
      const auto p = rng.param();
      const Space sp = rng.space(rng.pick({2, 3, 5}));
      const Vec R = rng.gauss(sp.N());
      const Vec t = sigma(p, sp, R);
      CHECK((mu(p, sp, t) - R).norm() <= 1e-10 * R.norm());
      CHECK(std::abs(sp.norm(t) - fmf(p, sp, R)) <= 1e-12 * sp.norm(t));
    }
  }

  TEST_CASE("sigma Jacobian: finite differences and determinant") {
    oracle::Rng rng(32);
    for (int i = 0; i < 200; ++i) {
      const auto p = rng.param();
      const Space sp = rng.space(rng.pick({2, 3, 5}));
      const Vec R = rng.off_axis(sp, 0.1);
      const Mat J = sigma_jacobian(p, sp, R);
      const Mat fd = oracle::jacobian([&](const Vec& x) { return sigma(p, sp, x); }, R, 1e-6 * R.norm());
      CHECK(oracle::max_abs(J - fd) <= 1e-7 * oracle::max_abs(J));
      const double Jf = scalar_forms(p, sp, R).J;
      const double expected = std::pow(p.h, sp.N() - 1) * std::pow(Jf, sp.N());
      CHECK(std::abs(J.determinant() - expected) <= 1e-10 * expected);
    }
  }

  TEST_CASE("mu Jacobian is the inverse of the sigma Jacobian") {
    oracle::Rng rng(33);
    for (int i = 0; i < 200; ++i) {
      const auto p = rng.param();
      const Space sp = rng.space(rng.pick({2, 3, 5}));
      const Vec R = rng.off_axis(sp, 0.1);
      const Vec t = sigma(p, sp, R);
      const Mat M = mu_jacobian(p, sp, t);
      const Mat fd = oracle::jacobian([&](const Vec& x) { return mu(p, sp, x); }, t, 1e-6 * t.norm());
      CHECK(oracle::max_abs(M - fd) <= 1e-7 * oracle::max_abs(M));
      const int N = sp.N();
      CHECK(oracle::max_abs(sigma_jacobian(p, sp, R) * M - Mat::Identity(N, N)) <= 1e-10);
    }
  }

  TEST_CASE("n metric: inverse, determinant and pullback of the Finsleroid metric") {
    oracle::Rng rng(34);
    for (int i = 0; i < 200; ++i) {
      const auto p = rng.param();
      const Space sp = rng.space(rng.pick({2, 3, 5}));
      const Vec R = rng.off_axis(sp, 0.1);
      const Vec t = sigma(p, sp, R);
      const auto nm = n_metric(p, sp, t);
      const int N = sp.N();
      CHECK(oracle::max_abs(nm.lower * nm.upper - Mat::Identity(N, N)) <= 1e-11);
      const double expected = std::pow(p.h, 2 * (1 - N)) * sp.det_r();
      CHECK(std::abs(nm.lower.determinant() - expected) <= 1e-10 * expected);
      CHECK(nm.det == doctest::Approx(expected).epsilon(1e-14));
      // g_pq(R) = sigma_p^r sigma_q^s n_rs(t)
      const Mat J = sigma_jacobian(p, sp, R);
      const Mat pulled = J * nm.lower * J.transpose();
      const Mat g = oracle::hessian(
          [&](const Vec& x) {
            const double K = fmf(p, sp, x);
            return 0.5 * K * K;
          },
          R, 1e-4 * R.norm());
      CHECK(oracle::max_abs(pulled - g) <= 1e-6 * oracle::max_abs(g));
      // radial unit
      CHECK(t.dot(nm.lower * t) == doctest::Approx(sp.dot(t, t)).epsilon(1e-12));
    }
  }

  TEST_CASE("Christoffel symbols against finite differences") {
    oracle::Rng rng(35);
    for (int i = 0; i < 50; ++i) {
      const auto p = rng.param();
      const Space sp = rng.space(rng.pick({2, 3, 5}));
      const Vec t = rng.gauss(sp.N());
      const auto C = qe_christoffel(p, sp, t);
      const auto G = fd_christoffel(p, sp, t, 1e-5 * t.norm());
      double worst = 0;
      for (size_t k = 0; k < C.data().size(); ++k) worst = std::max(worst, std::abs(C.data()[k] - G.data()[k]));
      CHECK(worst <= 1e-7 * (1 + C.max_abs()));
    }
  }

  TEST_CASE("curvature tensor against derivatives of the connection") {
    // R_p^r_qs = d_s N_p^r_q - d_q N_p^r_s + N_p^w_q N_w^r_s - N_p^w_s N_w^r_q, assembled by finite differences.
    // The closed form carries the contravariant slot lowered with r_pq; lowering with n_pq divides it by h^2.
    oracle::Rng rng(36);
    for (int i = 0; i < 20; ++i) {
      const auto p = rng.param();
      const Space sp = rng.space(rng.pick({2, 3, 5}));
      const Vec t = rng.gauss(sp.N());
      const int N = sp.N();
      const double e = 1e-5 * t.norm();
      std::vector<Tensor3> dN(N);
      for (int c = 0; c < N; ++c) {
        Vec tp = t, tm = t;
        tp(c) += e;
        tm(c) -= e;
        const auto Gp = qe_christoffel(p, sp, tp), Gm = qe_christoffel(p, sp, tm);
        dN[c] = Tensor3(N);
        for (int a = 0; a < N; ++a)
          for (int r = 0; r < N; ++r)
            for (int b = 0; b < N; ++b) dN[c](a, r, b) = (Gp(a, r, b) - Gm(a, r, b)) / (2 * e);
      }
      const auto C = qe_christoffel(p, sp, t);
      const Mat n = n_metric(p, sp, t).lower;
      const Mat& r = sp.r_full();
      const auto Rm = qe_curvature(p, sp, t);
      const Vec L = t / sp.norm(t);
      Tensor4 mixed(N);
      for (int a = 0; a < N; ++a)
        for (int k = 0; k < N; ++k)
          for (int q = 0; q < N; ++q)
            for (int s = 0; s < N; ++s) {
              double v = dN[s](a, k, q) - dN[q](a, k, s);
              for (int w = 0; w < N; ++w) v += C(a, w, q) * C(w, k, s) - C(a, w, s) * C(w, k, q);
              mixed(a, k, q, s) = v;
            }
      double w_r = 0, w_n = 0, w_L = 0;
      const double h2 = p.h * p.h;
      for (int a = 0; a < N; ++a)
        for (int rr = 0; rr < N; ++rr)
          for (int q = 0; q < N; ++q)
            for (int s = 0; s < N; ++s) {
              double by_r = 0, by_n = 0, lc = 0;
              for (int k = 0; k < N; ++k) {
                by_r += r(rr, k) * mixed(a, k, q, s);
                by_n += n(rr, k) * mixed(a, k, q, s);
                lc += L(k) * Rm(k, rr, q, s);
              }
              w_r = std::max(w_r, std::abs(by_r - Rm(a, rr, q, s)));
              w_n = std::max(w_n, std::abs(by_n - Rm(a, rr, q, s) / h2));
              w_L = std::max(w_L, std::abs(lc));
            }
      const double sc = 1 + Rm.max_abs();
      CHECK(w_r <= 1e-6 * sc);
      CHECK(w_n <= 1e-6 * sc);
      CHECK(w_L <= 1e-13 * sc);
    }
  }

  TEST_CASE("orthonormal frames") {
    oracle::Rng rng(37);
    for (int i = 0; i < 100; ++i) {
      const auto p = rng.param();
      const Space sp = rng.space(rng.pick({2, 3, 5}));
      const Vec t = rng.gauss(sp.N());
      const int N = sp.N();
      const auto nm = n_metric(p, sp, t);
      const auto fr = qe_frames(p, sp, t);
      CHECK(oracle::max_abs(fr.f.transpose() * fr.f - nm.lower) <= 1e-11 * oracle::max_abs(nm.lower));
      CHECK(oracle::max_abs(fr.m.transpose() * fr.m - nm.upper) <= 1e-11 * oracle::max_abs(nm.upper));
      CHECK(oracle::max_abs(fr.m.transpose() * fr.f - Mat::Identity(N, N)) <= 1e-11);
      for (int P = 0; P < N; ++P)
        for (int Q = 0; Q < N; ++Q)
          for (int a = 0; a < N; ++a) CHECK(std::abs(fr.ricci(P, Q, a) + fr.ricci(Q, P, a)) <= 1e-12);
      // rotated base
      Eigen::HouseholderQR<Mat> qr(rng.gauss(N * N).reshaped(N, N));
      const Mat O = qr.householderQ();
      const Mat base = O * sp.chol_frame();
      const auto fr2 = qe_frames(p, sp, t, base);
      CHECK(oracle::max_abs(fr2.f.transpose() * fr2.f - nm.lower) <= 1e-10 * oracle::max_abs(nm.lower));
    }
    CHECK_THROWS_AS(qe_frames(make_param(0.3), Space(3), Vec::Ones(3), Mat::Identity(3, 3) * 2), Error);
  }

  TEST_CASE("conformal flatness") {
    oracle::Rng rng(38);
    for (int i = 0; i < 100; ++i) {
      const auto p = rng.param();
      const Space sp = rng.space(rng.pick({2, 3, 5}));
      const Vec t = rng.gauss(sp.N());
      const auto cc = conformal_check(p, sp, t);
      CHECK(oracle::max_abs(cc.c - cc.expected) <= 1e-10 * oracle::max_abs(cc.expected));
      CHECK(cc.det_c_low == doctest::Approx(cc.det_c_expected).epsilon(1e-10));
      CHECK(cc.xi == doctest::Approx(conformal_factor(p, sp, t)).epsilon(1e-14));
    }
  }

  TEST_CASE("sphere curvature is h^2 / radius^2") {
    const Space sp(3);
    Vec u(2);
    u << 0.1, -0.2;
    CHECK(sphere_curvature(make_param(0.6), sp, 1.0, u) == doctest::Approx(0.91).epsilon(1e-12));
    CHECK(sphere_curvature(make_param(0.4), sp, 2.0, u) == doctest::Approx(0.24).epsilon(1e-12));
    oracle::Rng rng(39);
    for (int i = 0; i < 50; ++i) {
      const auto p = rng.param();
      const Space s = rng.space(rng.pick({3, 5}));
      const double rad = rng.uniform(0.5, 3.0);
      Vec v = rng.gauss(s.N() - 1);
      v *= 0.5 * rad / std::sqrt(v.dot(s.r() * v));
      CHECK(sphere_curvature(p, s, rad, v) == doctest::Approx(p.h * p.h / (rad * rad)).epsilon(1e-10));
    }
    Vec far(2);
    far << 2.0, 0.0;
    try {
      sphere_curvature(make_param(0.2), sp, 1.0, far);
      FAIL("expected ChartOutOfRange");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ChartOutOfRange);
    }
  }

  TEST_CASE("Euclidean limit is the identity map") {
    const auto p = make_param(0.0);
    oracle::Rng rng(40);
    const Space sp = rng.space(4);
    const Vec R = rng.gauss(4);
    CHECK((sigma(p, sp, R) - R).norm() <= 1e-15 * R.norm());
    CHECK(qe_christoffel(p, sp, R).max_abs() == 0.0);
  }
}
