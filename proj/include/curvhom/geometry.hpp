#pragma once

#include <array>
#include <vector>

#include "curvhom/expr.hpp"
#include "curvhom/jet.hpp"
#include "curvhom/tensor.hpp"

namespace curvhom {

/// Symmetric 3x3 matrix of expressions on the coordinate frame (dt, dx, dy).
class MetricField {
 public:
  /// Upper triangle in the order tt, tx, ty, xx, xy, yy.
  MetricField(Expr tt, Expr tx, Expr ty, Expr xx, Expr xy, Expr yy);

  const Expr& component(int i, int j) const;
  /// Jets of all six independent components at p.
  std::array<std::array<Jet, 3>, 3> jets(const Point& p, int order) const;
  /// Metric tensor g_P on the coordinate frame.
  TensorAtPoint at(const Point& p) const;

 private:
  std::array<Expr, 6> upper_;
};

/// Christoffel symbols of the second kind as jets: gamma(k, i, j) = Gamma^k_{ij}.
class ConnectionJet {
 public:
  ConnectionJet(int order, std::array<Jet, 27> symbols);

  int order() const noexcept { return order_; }
  const Jet& operator()(int k, int i, int j) const {
    return symbols_[static_cast<std::size_t>(9 * k + 3 * i + j)];
  }
  /// Values Gamma^k_{ij}(P).
  double value(int k, int i, int j) const { return (*this)(k, i, j).value(); }

 private:
  int order_;
  std::array<Jet, 27> symbols_;
};

/// Covariant tensor field near a point: one jet per component.
struct CovariantJetTensor {
  int rank = 0;
  std::vector<Jet> components;
  /// Antisymmetric in slots (0, 1) and in slots (2, 3). Only the components
  /// with slot0 < slot1 and slot2 < slot3 are computed; the rest are exact
  /// sign flips or zero. Covariant derivatives inherit the flag.
  bool curvature_symmetric = false;

  int order() const;
  TensorAtPoint values() const;
};

/// Christoffel symbols up to jet order `order` (uses metric jets of order+1).
/// Throws GeometryError when the metric is degenerate at p.
ConnectionJet christoffel(const MetricField& g, const Point& p, int order);

/// Covariant derivative; the new slot is appended last.
CovariantJetTensor covariant_derivative(const CovariantJetTensor& t, const ConnectionJet& gamma);

/// Jet-valued curvature tensor R_{ijkl} = g(R(d_i, d_j) d_k, d_l) with
/// R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y]. Order is gamma.order() - 1.
CovariantJetTensor riemann_jets(const MetricField& g, const ConnectionJet& gamma, const Point& p);

TensorAtPoint riemann(const MetricField& g, const Point& p);

/// nabla^k R at p as a (0, 4+k) tensor.
TensorAtPoint nabla_k_riemann(const MetricField& g, const Point& p, int k);

/// nabla^0 R ... nabla^k R computed in one pass (metric jets of order k+2).
std::vector<TensorAtPoint> curvature_tower(const MetricField& g, const Point& p, int k);

/// nabla g at p on the coordinate frame; vanishes for the Levi-Civita connection.
TensorAtPoint metric_covariant_derivative(const MetricField& g, const Point& p);

}  // namespace curvhom
