#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace curvhom {

/// Coordinates of R^3, always in the order (t, x, y).
enum class Coord : int { t = 0, x = 1, y = 2 };

using Point = std::array<double, 3>;

inline constexpr int kMaxJetOrder = 16;

/// Storage type of jet coefficients. High-order covariant derivatives cancel
/// terms many orders of magnitude larger than the result, so jets carry
/// extended precision and round to double only when values are read out.
using JetScalar = long double;

struct MultiIndex {
  int t = 0;
  int x = 0;
  int y = 0;

  constexpr int total() const noexcept { return t + x + y; }
  constexpr int operator[](Coord c) const noexcept {
    return c == Coord::t ? t : (c == Coord::x ? x : y);
  }
  friend constexpr auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// Number of multi-indices of total degree <= order in three variables.
std::size_t jet_size(int order);

/// Position of `m` in the graded coefficient layout (independent of the jet order).
std::size_t jet_index(const MultiIndex& m);

/// Multi-index stored at a flat position.
MultiIndex jet_multi_index(std::size_t index);

/// Truncated multivariate Taylor expansion of a scalar function at a base point.
///
/// Coefficients are raw partial derivatives d^{t+x+y} / dt^t dx^x dy^y, not
/// Taylor coefficients; products use the Leibniz rule with binomial weights.
/// Binary operations on jets of different orders produce the smaller order.
class Jet {
 public:
  Jet() : Jet(0) {}
  explicit Jet(int order);

  static Jet constant(JetScalar value, int order);
  /// Jet of the coordinate function `c` whose value at the base point is `value`.
  static Jet variable(Coord c, JetScalar value, int order);
  static Jet from_partials(int order, std::vector<JetScalar> partials);

  int order() const noexcept { return order_; }
  double value() const noexcept { return static_cast<double>(d_[0]); }
  /// Value at full storage precision.
  JetScalar scalar_value() const noexcept { return d_[0]; }

  /// Stored partial derivative; throws std::out_of_range when |m| > order().
  double partial(const MultiIndex& m) const;
  void set_partial(const MultiIndex& m, double v);

  std::span<const JetScalar> partials() const noexcept { return d_; }
  std::span<JetScalar> partials() noexcept { return d_; }

  /// Jet of the partial derivative along `c`; order drops by one.
  Jet derivative(Coord c) const;
  Jet truncated(int order) const;
  bool is_zero() const noexcept;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(JetScalar s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, JetScalar s) { return a *= s; }
  friend Jet operator*(JetScalar s, Jet a) { return a *= s; }
  friend Jet operator-(Jet a) { return a *= -1.0L; }
  friend Jet operator*(const Jet& a, const Jet& b);
  /// Throws DomainError when b.value() == 0.
  friend Jet operator/(const Jet& a, const Jet& b);

 private:
  int order_;
  std::vector<JetScalar> d_;
};

/// Accumulates coef * a * b into out (out.order() <= min(a.order(), b.order())).
void fma_product(Jet& out, JetScalar coef, const Jet& a, const Jet& b);

/// g o a for a univariate g given by its derivatives g^(n)(a.value()), n = 0..order.
Jet compose(const Jet& a, std::span<const JetScalar> derivatives);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sqrt(const Jet& a);
Jet abs(const Jet& a);
Jet pow(const Jet& a, int n);
/// Real exponent; requires a.value() > 0.
Jet pow(const Jet& a, double p);

}  // namespace curvhom
