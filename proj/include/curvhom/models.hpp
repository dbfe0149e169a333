#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "curvhom/expr.hpp"
#include "curvhom/geometry.hpp"
#include "curvhom/tensor.hpp"

namespace curvhom {

/// (V, phi, A_0, ..., A_r): an inner product and tensors A_k of valence (0, 4+k).
struct ModelSpace {
  int r = 0;
  TensorAtPoint phi;
  std::vector<TensorAtPoint> A;
};

/// Frame T = e^{-f} dt, X = lambda dx, Y = dy / lambda for g_f. Throws on lambda <= 0.
Frame adapted_basis_gf(const Expr& f, const Point& p, double lambda);

/// Frame T = dt, X = lambda (dx + h dy), Y = dy / lambda for g_h. Throws on lambda <= 0.
Frame adapted_basis_gh(const Expr& h, const Point& p, double lambda);

/// Pullbacks of g, R, ..., nabla^r R at p onto `frame`.
ModelSpace build_model(const MetricField& g, const Point& p, int r, const Frame& frame);

/// Basis labels of the structured models: index 0 = T, 1 = X, 2 = Y.
enum class Axis : int { T = 0, X = 1, Y = 2 };

/// Inner product phi(T, T) = phi(X, Y) = 1, all other entries zero.
TensorAtPoint canonical_inner_product();

/// Model whose only nonzero entries (up to curvature symmetries) are the
/// canonical inner product and A_0(T, X, X, T) = eps0.
ModelSpace canonical_curvature_model(double eps0);

/// Adds A_1(T, X, X, T; T) = eps1 to canonical_curvature_model(eps0).
ModelSpace canonical_first_derivative_model(double eps0, double eps1);

/// One curvature entry A_k(T, X, X, T; w_1, ..., w_k) with w_i in {T, X}.
struct ModelEntry {
  int order = 0;
  std::string word;  // differentiation slots, e.g. "TX"
  double value = 0.0;

  int t_count() const;  // T occurrences over all 4+k slots
  int x_count() const;  // X occurrences over all 4+k slots
};

/// True when phi is canonical and every entry of every A_k with a Y slot, or
/// whose first four slots are not a curvature image of (T, X, X, T), vanishes
/// (relative tolerance against the largest entry of that tensor).
bool is_structured(const ModelSpace& model, double tol = 1e-9);

/// Entries A_k(T, X, X, T; w) for all k <= r and all words w in {T, X}^k,
/// ordered by k, then lexicographically with T before X.
/// Throws ModelError when the model is not structured.
std::vector<ModelEntry> structured_entries(const ModelSpace& model, double tol = 1e-9);

/// Result of testing a frame against the isomorphism group of a canonical model.
struct IsomorphismCheck {
  bool accepted = false;
  /// Coefficients read off the frame columns:
  /// order 0: a1..a6 with FT = a1 T + a2 Y, FX = a3 T + a4 X + a5 Y, FY = a6 Y
  /// order 1: b1..b4 with FT = T + b1 Y, FX = b2 X + b3 Y, FY = b4 Y
  std::vector<double> parameters;
  /// Frame columns have the triangular shape listed above.
  bool shape_ok = false;
  /// phi(FX, FY) = 1, i.e. a4 a6 = 1 (resp. b2 b4 = 1).
  bool metric_pairing_ok = false;
  double max_deviation = 0.0;
  std::string note;
};

/// Tests F^* phi = phi and F^* A_0 = A_0 for a model of canonical_curvature_model
/// form (tolerance 1e-9 relative). Throws ModelError for any other model.
IsomorphismCheck check_curvature_isomorphism(const Frame& F, const ModelSpace& model);

/// As above for a model of canonical_first_derivative_model form; the frame
/// must additionally preserve A_1.
IsomorphismCheck check_first_derivative_isomorphism(const Frame& F, const ModelSpace& model);

/// Largest |F^* M2 - M1| over phi and all A_k, relative to the largest entry of M1.
double pullback_deviation(const Frame& F, const ModelSpace& m2, const ModelSpace& m1);

/// A frame F with F^* M2 = M1 (within 1e-8), or nullopt.
///
/// Both models must be structured. The search runs over the rescalings
/// X -> mu X, Y -> Y / mu combined with the sign flips T -> -T and
/// (X, Y) -> -(X, Y); shears of the structured group fix every structured
/// entry whose T-differentiated companions vanish, so they are not searched.
std::optional<Frame> find_isomorphism(const ModelSpace& m1, const ModelSpace& m2);

}  // namespace curvhom
