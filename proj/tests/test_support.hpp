#pragma once

// Test-only oracles and generators. These deliberately avoid the library's
// evaluation and product routines so they can check them independently.

#include <cmath>
#include <vector>

#include "slicereg/quaternion.hpp"
#include "slicereg/sampling.hpp"
#include "slicereg/series.hpp"

namespace slicereg::testing {

inline double max_coeff_diff(const SliceSeries& f, const SliceSeries& g, std::size_t upto) {
  double worst = 0.0;
  for (std::size_t n = 0; n <= upto; ++n) worst = std::max(worst, (f[n] - g[n]).norm());
  return worst;
}

/// sum_n q^n a_n with q^n built by repeated multiplication.
inline Quaternion naive_eval(const std::vector<Quaternion>& a, const Quaternion& q) {
  Quaternion power(1.0);
  Quaternion acc;
  for (const auto& c : a) {
    acc += power * c;
    power = power * q;
  }
  return acc;
}

/// Full (uncapped) coefficient convolution.
inline std::vector<Quaternion> naive_convolution(const std::vector<Quaternion>& a,
                                                 const std::vector<Quaternion>& b) {
  std::vector<Quaternion> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline SliceSeries random_polynomial(Sampler& s, std::size_t degree, double scale = 1.0,
                                     double radius = 1.0) {
  std::vector<Quaternion> a(degree + 1);
  for (auto& c : a) c = s.gaussian(scale / 2.0);
  return SliceSeries(std::move(a), radius);
}

}  // namespace slicereg::testing
