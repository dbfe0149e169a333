#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "curvhom/expr.hpp"
#include "curvhom/geometry.hpp"
#include "curvhom/tensor.hpp"

namespace curvhom::testing {

inline double rel_err(double actual, double expected) {
  return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

inline TensorAtPoint random_tensor(std::mt19937_64& rng, int up, int down) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TensorAtPoint t(up, down);
  for (double& c : t.components()) c = u(rng);
  return t;
}

inline Eigen::Matrix3d random_invertible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix3d m;
  do {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = u(rng);
  } while (std::abs(m.determinant()) < 0.1);
  return m;
}

inline double max_abs_diff(const TensorAtPoint& a, const TensorAtPoint& b) { return (a - b).max_abs(); }

/// Random polynomial of degree <= 2 in t, x, y with small coefficients.
inline std::string random_quadratic(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  static const char* monomials[] = {"t", "x", "y", "t*t", "x*x", "y*y", "t*x", "x*y", "t*y"};
  std::ostringstream os;
  os.precision(17);
  os << u(rng);
  for (const char* m : monomials) os << " + (" << u(rng) << ")*" << m;
  return os.str();
}

/// Lorentzian metric: a fixed constant metric of signature (+,+,-) plus a
/// random quadratic perturbation in every component.
inline MetricField random_polynomial_metric(std::mt19937_64& rng) {
  auto c = [&](double base) { return parse(std::to_string(base) + " + " + random_quadratic(rng, 0.05)); };
  return MetricField(c(1.0), c(0.0), c(0.0), c(0.0), c(1.0), c(0.5));
}

}  // namespace curvhom::testing
