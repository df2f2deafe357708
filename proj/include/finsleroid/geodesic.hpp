#pragma once

#include "finsleroid/core.hpp"

namespace finsleroid {

struct GeodesicBoundary {
  Param param;
  Vec t1, t2;
  double a = 0;        // |t1|
  double b = 0;        // S^2(s) = a^2 + 2bs + s^2
  double delta_s = 0;  // arc length
  double S_end = 0;    // |t2|
  double alpha = 0;    // Euclidean angle / h
  double rho = 0;      // sqrt(a^2 - b^2)
  bool radial = false; // t1, t2 on one ray
};

GeodesicBoundary connect(const Param& p, const Space& sp, const Vec& t1, const Vec& t2);

double geodesic_S2(const GeodesicBoundary& bd, double s);  // a^2 + 2bs + s^2

struct GeodesicPoint {
  Vec t;
  double nu = 0;
};

GeodesicPoint qe_geodesic_at(const GeodesicBoundary& bd, double s);
Vec qe_velocity(const GeodesicBoundary& bd, double s);

struct EndpointVelocities {
  Vec v1, v2;
};
EndpointVelocities endpoint_velocities(const GeodesicBoundary& bd);

// Unit-speed initial-value form t(s) = m(s) t1 + n(s) v1.
Vec qe_geodesic_initial(const Param& p, const Space& sp, const Vec& t1, const Vec& v1, double s);

// Boundary of the sigma-images of R1, R2.
GeodesicBoundary finsleroid_boundary(const Param& p, const Space& sp, const Vec& R1, const Vec& R2);
Vec finsleroid_geodesic_at(const Space& sp, const GeodesicBoundary& bd, double s);
Vec finsleroid_geodesic(const Param& p, const Space& sp, const Vec& R1, const Vec& R2, double s);

struct DifferenceGradients {
  Vec b1, b2, d1, d2;
  double u = 0;
};

DifferenceGradients difference_gradients(const Param& p, const Space& sp, const Vec& t1, const Vec& t2);

// u(t1, t2) = sqrt((t1 t1)(t2 t2) - (t1 t2)^2)
double gram_root(const Space& sp, const Vec& t1, const Vec& t2);

}  // namespace finsleroid
