#pragma once

#include <cmath>
#include <vector>

namespace finsleroid {

// Dense rank-3 / rank-4 arrays over N indices, row-major.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), d_(static_cast<size_t>(n) * n * n, 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k) { return d_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  double operator()(int i, int j, int k) const { return d_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
  const std::vector<double>& data() const { return d_; }
  double max_abs() const {
    double m = 0;
    for (double x : d_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), d_(static_cast<size_t>(n) * n * n * n, 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k, int l) { return d_[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return d_[idx(i, j, k, l)]; }
  const std::vector<double>& data() const { return d_; }
  double max_abs() const {
    double m = 0;
    for (double x : d_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_ = 0;
  std::vector<double> d_;
};

}  // namespace finsleroid
