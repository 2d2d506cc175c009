#ifndef QBOOTS_GAUSSIAN_HPP
#define QBOOTS_GAUSSIAN_HPP

#include <cmath>
#include <vector>

#include "qboots/common.hpp"

namespace qboots {

/// Discrete Gaussian over the support {-B..B}, sampled from a cumulative
/// table of exp(-pi x^2 / B^2) weights. B = 0 degenerates to the constant 0.
class DiscreteGaussian {
 public:
  explicit DiscreteGaussian(u64 bound) : bound_(static_cast<i64>(bound)) {
    if (bound_ == 0) return;
    double s = static_cast<double>(bound_);
    double acc = 0.0;
    for (i64 x = -bound_; x <= bound_; ++x) {
      acc += std::exp(-M_PI * double(x) * double(x) / (s * s));
      cdf_.push_back(acc);
    }
    for (double& c : cdf_) c /= acc;
  }

  i64 sample(Rng& rng) const {
    if (bound_ == 0) return 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double p = u(rng);
    std::size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cdf_[mid] < p) lo = mid + 1; else hi = mid;
    }
    return static_cast<i64>(lo) - bound_;
  }

  i64 bound() const { return bound_; }

 private:
  i64 bound_;
  std::vector<double> cdf_;
};

}  // namespace qboots

#endif
