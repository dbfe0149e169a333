#pragma once

#include <string>
#include <vector>

#include "curvhom/classify.hpp"
#include "curvhom/families.hpp"
#include "curvhom/geometry.hpp"

namespace curvhom {

inline constexpr double kOracleRelativeTol = 1e-8;
inline constexpr double kOracleZeroTol = 1e-10;
inline constexpr double kIdentityTol = 1e-8;

/// Componentwise comparison of two tensors of equal shape: relative error on
/// entries where `expected` is nonzero, absolute error where it is zero.
struct TensorComparison {
  double max_relative = 0.0;
  double max_absolute_on_zero = 0.0;
  bool ok(double rel_tol = kOracleRelativeTol, double zero_tol = kOracleZeroTol) const {
    return max_relative <= rel_tol && max_absolute_on_zero <= zero_tol;
  }
};
TensorComparison compare_tensors(const TensorAtPoint& actual, const TensorAtPoint& expected);

/// Residuals of the curvature identities at p, each relative to the size of
/// the tensor involved (max(1, max |entry|)).
struct IdentityResiduals {
  double antisymmetry_first_pair = 0.0;   ///< R(a,b,c,d) + R(b,a,c,d)
  double antisymmetry_second_pair = 0.0;  ///< R(a,b,c,d) + R(a,b,d,c)
  double pair_symmetry = 0.0;             ///< R(a,b,c,d) - R(c,d,a,b)
  double first_bianchi = 0.0;             ///< R(a,b,c,d) + R(b,c,a,d) + R(c,a,b,d)
  double second_bianchi = 0.0;            ///< nabla R(a,b,c,d;e) + nabla R(b,e,c,d;a) + nabla R(e,a,c,d;b)
  double metric_compatibility = 0.0;      ///< |nabla g|
  double max() const;
};
IdentityResiduals curvature_identity_residuals(const MetricField& g, const Point& p);

struct OrderCheck {
  int order = 0;
  TensorComparison worst;
  bool ok = true;
};

struct VerificationReport {
  Family family = Family::f;
  int order = 0;
  std::vector<Point> points;
  /// Engine against the closed forms, one row per order (worst over points).
  std::vector<OrderCheck> oracle;
  IdentityResiduals identities;  ///< worst over points
  bool identities_ok = true;
  std::vector<Exclusion> exclusions;
  std::vector<std::string> notes;
  bool passed = true;
};

/// Runs the engine at every sample point and compares it with the closed-form
/// curvature of the family (orders the closed forms cover) and with the
/// curvature identities. Points where evaluation raises a domain or geometry
/// error are excluded. Throws HypothesisError when every point is excluded.
VerificationReport verify(const FamilySpec& spec, int r, const SampleSet& samples);

}  // namespace curvhom
