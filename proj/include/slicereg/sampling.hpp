#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "slicereg/series.hpp"

namespace slicereg {

/// Seeded source of quaternion samples. Every sampled quantity in the library
/// flows from one of these, so (seed, parameters) fix all results.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  /// Uniform on the unit 3-sphere.
  Quaternion unit();
  /// Uniform on the 2-sphere of imaginary units.
  Quaternion imaginary_unit();
  /// Radius uniform in [0, r_max], direction uniform on the 3-sphere.
  Quaternion in_ball(double r_max);
  /// Gaussian components with the given standard deviation.
  Quaternion gaussian(double sigma = 1.0);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// `count` points on the 3-sphere of radius r, reproducible from `seed`.
std::vector<Quaternion> sphere_sample(std::size_t count, double r, std::uint64_t seed);

/// Largest |f| over `sphere_sample(count, r, seed)`.
double max_modulus_on_sphere(const SliceSeries& f, double r, std::size_t count, std::uint64_t seed);

}  // namespace slicereg
