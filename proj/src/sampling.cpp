#include "slicereg/sampling.hpp"

#include <algorithm>

namespace slicereg {

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Quaternion Sampler::unit() {
  for (;;) {
    const Quaternion g = gaussian();
    const double n = g.norm();
    if (n > 1e-12) return g / n;
  }
}

Quaternion Sampler::imaginary_unit() {
  for (;;) {
    const Quaternion g(0.0, normal_(rng_), normal_(rng_), normal_(rng_));
    const double n = g.norm();
    if (n > 1e-12) return g / n;
  }
}

Quaternion Sampler::in_ball(double r_max) {
  const double r = uniform(0.0, r_max);
  return r * unit();
}

Quaternion Sampler::gaussian(double sigma) {
  return Quaternion(normal_(rng_), normal_(rng_), normal_(rng_), normal_(rng_)) * sigma;
}

std::vector<Quaternion> sphere_sample(std::size_t count, double r, std::uint64_t seed) {
  Sampler sampler(seed);
  std::vector<Quaternion> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(r * sampler.unit());
  return out;
}

double max_modulus_on_sphere(const SliceSeries& f, double r, std::size_t count, std::uint64_t seed) {
  double m = 0.0;
  for (const auto& q : sphere_sample(count, r, seed)) m = std::max(m, eval(f, q).norm());
  return m;
}

}  // namespace slicereg
