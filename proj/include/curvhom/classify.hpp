#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvhom/expr.hpp"
#include "curvhom/families.hpp"
#include "curvhom/jet.hpp"

namespace curvhom {

/// |R(T, X, X, T)| below this on the unit adapted basis excludes a point.
inline constexpr double kHypothesisFloor = 1e-8;
inline constexpr double kDefaultTolerance = 1e-6;

struct GridAxis {
  Coord coord = Coord::x;
  double min = 0.0;
  double max = 0.0;
  int count = 1;
};

/// Finite set of sample points, sorted lexicographically by (t, x, y).
struct SampleSet {
  std::vector<GridAxis> axes;
  std::vector<Point> points;

  /// Cartesian product of evenly spaced axes; coordinates without an axis are
  /// pinned to 0. Throws std::invalid_argument on an empty axis list, a
  /// repeated coordinate, count < 1 or min > max.
  static SampleSet grid(std::vector<GridAxis> axes);
  static SampleSet from_points(std::vector<Point> points);
};

// Scalar invariants, all read off curvature entries computed by the engine on
// an adapted basis. Each throws HypothesisError when its nonvanishing
// hypothesis fails at p.

/// (Delta')^2: the squared nabla R(T, X, X, T; X) entry on the unit (lambda = 1) basis.
double invariant_Xi_f(const Expr& f, const Point& p);
/// (Delta')^2 / |Delta|^3: the same entry squared on the basis with R(T, X, X, T) = +-1.
double invariant_Xi_f_normalized(const Expr& f, const Point& p);
/// nabla R(T, X, X, T; X)^2 / R(T, X, X, T)^3 = (Delta')^2 / (-Delta)^3.
double invariant_ratio_f(const Expr& f, const Point& p);
/// Delta^(k) / |Delta|^{(k+2)/2}: minus the nabla^k R(T, X, X, T; X..X) entry on
/// the normalized basis.
double scaling_constant_f(const Expr& f, const Point& p, int k);

/// (h''' / h'')^2: squared nabla R(T, X, X, T; T) entry on the basis lambda = |h''|^{-1/2}.
double invariant_Xi_h(const Expr& h, const Point& p);

/// Quantities on the basis lambda^2 = (h''')^2 / |h''|^3, where psi = (h''' / h'')^2.
struct XiTX {
  double xi_T = 0.0;          ///< nabla^2 R(T, X, X, T; T, T) / psi^2 = h'''' h'' / (h''')^2
  double xi_X = 0.0;          ///< nabla^2 R(T, X, X, T; X, X) / psi^2 = -h' h''' / (h'')^2
  double xi_T_printed = 0.0;  ///< h'''' / (h'')^2, reported next to xi_T for comparison
  double psi = 0.0;
  double lambda_squared = 0.0;
};
/// Requires h'' != 0 and h''' != 0.
XiTX invariants_xi_TX(const Expr& h, const Point& p);

/// lambda^2 h'' = sgn(h'') psi and lambda^2 h''' = sgn(h''') psi^{3/2} on the
/// same basis; residuals are relative.
struct PsiIdentity {
  double lambda_squared = 0.0;
  double psi = 0.0;
  double curvature_entry = 0.0;   ///< R(T, X, X, T) = lambda^2 h''
  double derivative_entry = 0.0;  ///< nabla R(T, X, X, T; T) = lambda^2 h'''
  int curvature_sign = 0;
  int derivative_sign = 0;
  double curvature_residual = 0.0;
  double derivative_residual = 0.0;
};
PsiIdentity psi_identity(const Expr& h, const Point& p);

enum class Verdict { pass, fail, hypothesis_violated, not_assessed };
std::string verdict_name(Verdict v);

struct VerdictEntry {
  std::string property;  ///< e.g. "CH_0", "CH_2(1,3)", "SCH_1(1,3)", "CH_1"
  int order = 0;
  Verdict verdict = Verdict::not_assessed;
  std::string detail;
};

/// One scalar sampled over the point set; nullopt where it is undefined.
struct InvariantSeries {
  std::string name;
  std::vector<std::optional<double>> values;
  /// False for frame-dependent quantities (raw derivatives, residuals, printed variants).
  bool isometry_invariant = true;
  int available = 0;
  double min = 0.0;
  double max = 0.0;
  double spread = 0.0;  ///< (max - min) / max(|median|, 1e-9)
  bool constant = true;
};

/// Normalized entries behind one verdict, one row per included point.
struct NormalFormSeries {
  std::string property;
  std::vector<std::string> labels;  ///< e.g. "A_1(T,X,X,T;X)"
  std::vector<std::vector<double>> rows;
};

struct Exclusion {
  Point point{};
  std::string reason;
};

struct HomogeneityReport {
  Family family = Family::f;
  int order = 0;
  double tolerance = kDefaultTolerance;
  std::vector<Point> points;
  std::vector<VerdictEntry> verdicts;
  std::vector<InvariantSeries> invariants;
  std::vector<NormalFormSeries> normal_forms;
  std::vector<Exclusion> exclusions;
  std::vector<std::string> notes;
  bool degenerate = false;

  const VerdictEntry* find(const std::string& property) const;
  const InvariantSeries* invariant(const std::string& name) const;
};

struct ClassifyOptions {
  double tolerance = kDefaultTolerance;
  /// Worker threads for per-point evaluation; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Finite-sample homogeneity verdicts for a metric.
///
/// For the built-in families each point's model is taken on the unit adapted
/// basis and reduced to a normal form under the gauge of the property under
/// test: X -> lambda X, Y -> Y / lambda and the sign flips T -> -T,
/// (X, Y) -> -(X, Y) for isometries, plus a positive rescaling psi of
/// nabla^k R by psi^{-w_k} (w_k = 1 per order for CH_k(1,3), (k+2)/2 for
/// SCH_k(1,3)). A property passes when the normal forms agree over all
/// included points within `tolerance`. Custom metrics are only checked for
/// vanishing curvature. Throws HypothesisError when every point is excluded.
HomogeneityReport classify(const FamilySpec& spec, int r, const SampleSet& samples,
                           const ClassifyOptions& options = {});

/// Summary statistics of a value list (ignores nullopt); `tol` decides `constant`.
InvariantSeries summarize(std::string name, std::vector<std::optional<double>> values, double tol);

}  // namespace curvhom
