#pragma once

#include <optional>
#include <string>

#include "curvhom/expr.hpp"
#include "curvhom/geometry.hpp"
#include "curvhom/tensor.hpp"

namespace curvhom {

enum class Family { f, h, custom };

std::string family_name(Family family);

/// Which metric to study: one of the two built-in families (given by a single
/// function) or an arbitrary metric.
struct FamilySpec {
  Family family = Family::f;
  /// f(x) for Family::f, h(t) for Family::h; unused for Family::custom.
  std::optional<Expr> function;
  std::optional<MetricField> custom;

  static FamilySpec f_family(Expr f);
  static FamilySpec h_family(Expr h);
  static FamilySpec custom_metric(MetricField g);

  MetricField metric() const;
};

/// g_f: g(dt, dt) = e^{2f}, g(dx, dy) = 1. Throws FamilyError unless f = f(x).
MetricField gf_metric(const Expr& f);

/// g_h: g(dt, dt) = g(dx, dy) = 1, g(dx, dx) = -2h. Throws FamilyError unless h = h(t).
MetricField gh_metric(const Expr& h);

/// Delta = f'' + (f')^2 as a jet in x (order `order`), from f jets of order+2.
Jet delta_jet(const Expr& f, const Point& p, int order);

/// d^k Delta / dx^k at p.
double delta_derivative(const Expr& f, const Point& p, int k);

/// h', h'', h''', h'''' at p.
struct HDerivatives {
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double h4 = 0.0;
};

HDerivatives h_derivatives(const Expr& h, const Point& p);

/// Closed form of nabla^k R for g_f: the only independent entry is
/// nabla^k R(dx, dt, dt, dx; dx, ..., dx) = -e^{2f} Delta^(k); the other three
/// sign-related images are filled in explicitly.
TensorAtPoint gf_oracle(const Expr& f, const Point& p, int k);

/// Closed form of nabla^k R for g_h, k <= 2:
///   R(dt, dx, dx, dt) = h''
///   nabla R(dt, dx, dx, dt; dt) = h'''
///   nabla^2 R(dt, dx, dx, dt; dt, dt) = h''''
///   nabla^2 R(dt, dx, dx, dt; dx, dx) = -h' h'''
/// Throws std::invalid_argument for k > 2.
TensorAtPoint gh_oracle(const Expr& h, const Point& p, int k);

/// Largest k accepted by gh_oracle.
inline constexpr int kGhOracleMaxOrder = 2;

}  // namespace curvhom
