#pragma once

#include <vector>

#include "finsleroid/core.hpp"

namespace finsleroid {

struct ShapeReport {
  double q_star = 1;     // equatorial radius on the plane Z = 0
  double Z1 = -1;        // south vertex
  double Z2 = 1;         // north vertex
  double altitude = 2;
  double Phi_2star = 0;
  double q_2star = 1;    // maximal radius
  double Z_2star = 0;    // height of the maximal radius
  double width = 2;
  double equator_radius = 1;
  double equator_height = 0;
};

ShapeReport shape_report(const Param& p);

// Closed-form curves over g.
double q_star_of(double g);
double z_2star_of(double g);

// Point of the indicatrix K = 1 at polar parameter f in [0, pi] along unit direction n.
Vec indicatrix_point(const Param& p, const Space& sp, double f, const Vec& n);

struct ProfilePoint {
  double f, q, Z;
};

// Generatrix of the indicatrix, f uniform on [0, pi].
std::vector<ProfilePoint> indicatrix_profile(const Param& p, int n_samples);
// Same curve for the co-Finsleroid H = 1.
std::vector<ProfilePoint> co_indicatrix_profile(const Param& p, int n_samples);

struct ProfileSlopes {
  double dZ_dq = 0, d2Z_dq2 = 0;
  double dq_dZ = 0, d2q_dZ2 = 0;
  bool has_dq_dZ = false;
};

ProfileSlopes profile_slopes(const Param& p, const Space& sp, const Vec& R);

}  // namespace finsleroid
