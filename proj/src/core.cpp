#include "finsleroid/core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace finsleroid {

std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateVector: return "DegenerateVector";
    case ErrorKind::AxisSingular: return "AxisSingular";
    case ErrorKind::EquatorSingular: return "EquatorSingular";
    case ErrorKind::BadDirection: return "BadDirection";
    case ErrorKind::VertexSingular: return "VertexSingular";
    case ErrorKind::ChartOutOfRange: return "ChartOutOfRange";
    case ErrorKind::BadFrame: return "BadFrame";
    case ErrorKind::AntipodalSingular: return "AntipodalSingular";
    case ErrorKind::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorKind::CollinearVectors: return "CollinearVectors";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::SingularXi: return "SingularXi";
    case ErrorKind::DegenerateW: return "DegenerateW";
    case ErrorKind::NotAcute: return "NotAcute";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

bool is_geometric(ErrorKind k) {
  switch (k) {
    case ErrorKind::OutOfRange:
    case ErrorKind::BadInput:
    case ErrorKind::BadDirection:
    case ErrorKind::BadFrame:
    case ErrorKind::NotUnitSpeed:
      return false;
    default:
      return true;
  }
}

Param make_param(double g) {
  if (!std::isfinite(g) || std::abs(g) >= 2.0) {
    std::ostringstream os;
    os << "characteristic parameter g=" << g << " must satisfy -2 < g < 2";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  Param p;
  p.g = g;
  p.h = std::sqrt(1.0 - 0.25 * g * g);
  p.G = g / p.h;
  p.g_plus = 0.5 * g + p.h;
  p.g_minus = 0.5 * g - p.h;
  p.g_up_plus = -0.5 * g + p.h;
  p.g_up_minus = -0.5 * g - p.h;
  return p;
}

Space::Space(int N) : Space(Mat::Identity(N - 1, N - 1)) {
  if (N < 2) throw Error(ErrorKind::BadInput, "dimension N must be >= 2");
}

Space::Space(const Mat& r_ab) {
  const auto n = r_ab.rows();
  if (n < 1 || r_ab.cols() != n) throw Error(ErrorKind::BadInput, "r_ab must be square with N-1 >= 1 rows");
  if (!r_ab.allFinite()) throw Error(ErrorKind::BadInput, "r_ab has non-finite entries");
  if ((r_ab - r_ab.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + r_ab.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::BadInput, "r_ab must be symmetric");
  Eigen::LLT<Mat> llt(r_ab);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::BadInput, "r_ab must be positive definite");
  N_ = static_cast<int>(n) + 1;
  r_ = 0.5 * (r_ab + r_ab.transpose());
  r_inv_ = llt.solve(Mat::Identity(n, n));
  det_r_ = r_.determinant();
  rf_ = Mat::Zero(N_, N_);
  rf_.topLeftCorner(n, n) = r_;
  rf_(n, n) = 1.0;
  rf_inv_ = Mat::Zero(N_, N_);
  rf_inv_.topLeftCorner(n, n) = r_inv_;
  rf_inv_(n, n) = 1.0;
  // r_full = L L^T, frame rows h^P = L^T rows
  frame_ = Eigen::LLT<Mat>(rf_).matrixL().transpose();
}

double Space::norm(const Vec& x) const { return std::sqrt(std::max(0.0, dot(x, x))); }

void Space::check_dim(const Vec& v, const char* what) const {
  if (v.size() != N_) {
    std::ostringstream os;
    os << what << " has " << v.size() << " components, expected N=" << N_;
    throw Error(ErrorKind::BadInput, os.str());
  }
  if (!v.allFinite()) throw Error(ErrorKind::BadInput, std::string(what) + " has non-finite components");
}

int sign_indicator(double Z) { return (Z > 0) - (Z < 0); }

ScalarForms scalar_forms(const Param& p, const Space& sp, const Vec& R) {
  sp.check_dim(R, "vector");
  const int n = sp.N() - 1;
  ScalarForms f;
  const auto Ra = R.head(n);
  f.Z = R(n);
  f.rho = sp.r() * Ra;
  f.q = std::sqrt(std::max(0.0, Ra.dot(f.rho)));
  if (f.q == 0.0 && f.Z == 0.0) throw Error(ErrorKind::DegenerateVector, "the origin R = 0 is excluded");
  const double g = p.g, q = f.q, Z = f.Z;
  f.B = Z * Z + g * q * Z + q * q;
  f.A = Z + 0.5 * g * q;
  f.L = q + 0.5 * g * Z;
  f.Phi = q > 0 ? std::atan2(f.A, p.h * q) : sign_indicator(Z) * std::numbers::pi / 2;
  f.J = std::exp(0.5 * p.G * f.Phi);
  f.K = std::sqrt(f.B) * f.J;
  if (Z != 0.0) {
    f.has_w = true;
    f.w = q / Z;
    f.Q = 1.0 + g * f.w + f.w * f.w;
    f.E = 1.0 + 0.5 * g * f.w;
  }
  return f;
}

double fmf(const Param& p, const Space& sp, const Vec& R) { return scalar_forms(p, sp, R).K; }

}  // namespace finsleroid
