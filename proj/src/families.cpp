#include "curvhom/families.hpp"

#include <cmath>
#include <stdexcept>

#include "curvhom/errors.hpp"

namespace curvhom {
namespace {

void require_only(const Expr& e, Coord allowed, const char* what) {
  for (Coord c : {Coord::t, Coord::x, Coord::y}) {
    if (c != allowed && e.depends_on(c)) {
      throw FamilyError(std::string(what) + " must depend only on " +
                        std::string(coordinate_name(allowed)) + ", but references " +
                        std::string(coordinate_name(c)));
    }
  }
}

// Writes value into the four sign-related images of the curvature entry
// (a, b, b, a; diff...) of a (0, 4+k) tensor.
void set_curvature_images(TensorAtPoint& t, int a, int b, const std::vector<int>& diff, double value) {
  std::vector<int> idx(4 + diff.size());
  std::copy(diff.begin(), diff.end(), idx.begin() + 4);
  auto put = [&](int i, int j, int k, int l, double v) {
    idx[0] = i;
    idx[1] = j;
    idx[2] = k;
    idx[3] = l;
    t.at(idx) = v;
  };
  put(a, b, b, a, value);
  put(b, a, b, a, -value);
  put(a, b, a, b, -value);
  put(b, a, a, b, value);
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::f: return "f";
    case Family::h: return "h";
    case Family::custom: return "custom";
  }
  return "?";
}

FamilySpec FamilySpec::f_family(Expr f) {
  gf_metric(f);
  FamilySpec s;
  s.family = Family::f;
  s.function = std::move(f);
  return s;
}

FamilySpec FamilySpec::h_family(Expr h) {
  gh_metric(h);
  FamilySpec s;
  s.family = Family::h;
  s.function = std::move(h);
  return s;
}

FamilySpec FamilySpec::custom_metric(MetricField g) {
  FamilySpec s;
  s.family = Family::custom;
  s.custom = std::move(g);
  return s;
}

MetricField FamilySpec::metric() const {
  switch (family) {
    case Family::f: return gf_metric(function.value());
    case Family::h: return gh_metric(function.value());
    case Family::custom: return custom.value();
  }
  throw std::logic_error("unknown family");
}

MetricField gf_metric(const Expr& f) {
  require_only(f, Coord::x, "f");
  const Expr zero = Expr::number(0.0);
  return MetricField(exp(Expr::number(2.0) * f), zero, zero, zero, Expr::number(1.0), zero);
}

MetricField gh_metric(const Expr& h) {
  require_only(h, Coord::t, "h");
  const Expr zero = Expr::number(0.0);
  return MetricField(Expr::number(1.0), zero, zero, -(Expr::number(2.0) * h), Expr::number(1.0), zero);
}

Jet delta_jet(const Expr& f, const Point& p, int order) {
  const Jet fj = eval_jet(f, p, order + 2);
  const Jet d1 = fj.derivative(Coord::x);
  const Jet d2 = d1.derivative(Coord::x);
  return d2 + d1.truncated(order) * d1.truncated(order);
}

double delta_derivative(const Expr& f, const Point& p, int k) {
  return delta_jet(f, p, k).partial({0, k, 0});
}

HDerivatives h_derivatives(const Expr& h, const Point& p) {
  const Jet hj = eval_jet(h, p, 4);
  return {hj.partial({1, 0, 0}), hj.partial({2, 0, 0}), hj.partial({3, 0, 0}), hj.partial({4, 0, 0})};
}

TensorAtPoint gf_oracle(const Expr& f, const Point& p, int k) {
  if (k < 0) throw std::invalid_argument("derivative order must be nonnegative");
  require_only(f, Coord::x, "f");
  const double e2f = std::exp(2.0 * eval(f, p));
  TensorAtPoint t(0, 4 + k);
  const std::vector<int> diff(static_cast<std::size_t>(k), 1);
  set_curvature_images(t, 1, 0, diff, -e2f * delta_derivative(f, p, k));
  return t;
}

TensorAtPoint gh_oracle(const Expr& h, const Point& p, int k) {
  if (k < 0 || k > kGhOracleMaxOrder) {
    throw std::invalid_argument("closed-form curvature for g_h is available for k <= 2 only");
  }
  require_only(h, Coord::t, "h");
  const HDerivatives d = h_derivatives(h, p);
  TensorAtPoint t(0, 4 + k);
  switch (k) {
    case 0:
      set_curvature_images(t, 0, 1, {}, d.h2);
      break;
    case 1:
      set_curvature_images(t, 0, 1, {0}, d.h3);
      break;
    default:
      set_curvature_images(t, 0, 1, {0, 0}, d.h4);
      set_curvature_images(t, 0, 1, {1, 1}, -d.h1 * d.h3);
      break;
  }
  return t;
}

}  // namespace curvhom
