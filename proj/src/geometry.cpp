#include "curvhom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "curvhom/errors.hpp"

namespace curvhom {
namespace {

constexpr std::array<Coord, 3> kCoords{Coord::t, Coord::x, Coord::y};

std::size_t upper_index(int i, int j) {
  if (i > j) std::swap(i, j);
  static constexpr std::array<std::array<std::size_t, 3>, 3> kMap{{{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}};
  return kMap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

Jet jet_product(const Jet& a, const Jet& b) { return a * b; }

// Inverse of a symmetric 3x3 jet matrix by cofactors.
std::array<std::array<Jet, 3>, 3> inverse_metric(const std::array<std::array<Jet, 3>, 3>& g) {
  auto cof = [&](int i, int j) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return jet_product(g[i1][j1], g[i2][j2]) - jet_product(g[i1][j2], g[i2][j1]);
  };
  std::array<std::array<Jet, 3>, 3> c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c[i][j] = cof(i, j);
  }
  Jet det = g[0][0] * c[0][0] + g[0][1] * c[0][1] + g[0][2] * c[0][2];
  if (!(std::abs(det.value()) >= kDeterminantFloor)) {
    throw GeometryError("metric is degenerate at the requested point (|det| = " +
                        std::to_string(std::abs(det.value())) + ")");
  }
  std::array<std::array<Jet, 3>, 3> inv;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) inv[i][j] = c[j][i] / det;
  }
  return inv;
}

std::size_t power_of_three(int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

// For a tensor with the curvature antisymmetries: the canonical component
// representing c and the sign relating them (0 when the component vanishes).
std::pair<std::size_t, int> canonical_component(std::size_t c, int rank) {
  const std::size_t s0 = power_of_three(rank - 1), s1 = s0 / 3, s2 = s1 / 3, s3 = s2 / 3;
  const int i = static_cast<int>(c / s0 % 3), j = static_cast<int>(c / s1 % 3);
  const int k = static_cast<int>(c / s2 % 3), l = static_cast<int>(c / s3 % 3);
  if (i == j || k == l) return {c, 0};
  std::size_t out = c;
  int sign = 1;
  if (i > j) {
    out = out - static_cast<std::size_t>(i) * s0 - static_cast<std::size_t>(j) * s1 +
          static_cast<std::size_t>(j) * s0 + static_cast<std::size_t>(i) * s1;
    sign = -sign;
  }
  if (k > l) {
    out = out - static_cast<std::size_t>(k) * s2 - static_cast<std::size_t>(l) * s3 +
          static_cast<std::size_t>(l) * s2 + static_cast<std::size_t>(k) * s3;
    sign = -sign;
  }
  return {out, sign};
}

void fill_curvature_images(CovariantJetTensor& t, int order) {
  for (std::size_t c = 0; c < t.components.size(); ++c) {
    const auto [canon, sign] = canonical_component(c, t.rank);
    if (canon == c && sign == 1) continue;
    t.components[c] = sign == 0 ? Jet(order) : (sign > 0 ? t.components[canon] : -1.0 * t.components[canon]);
  }
}

}  // namespace

MetricField::MetricField(Expr tt, Expr tx, Expr ty, Expr xx, Expr xy, Expr yy)
    : upper_{std::move(tt), std::move(tx), std::move(ty), std::move(xx), std::move(xy), std::move(yy)} {}

const Expr& MetricField::component(int i, int j) const {
  if (i < 0 || j < 0 || i > 2 || j > 2) throw std::out_of_range("metric index out of range");
  return upper_[upper_index(i, j)];
}

std::array<std::array<Jet, 3>, 3> MetricField::jets(const Point& p, int order) const {
  std::array<Jet, 6> u;
  for (std::size_t i = 0; i < 6; ++i) u[i] = eval_jet(upper_[i], p, order);
  std::array<std::array<Jet, 3>, 3> g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g[i][j] = u[upper_index(i, j)];
  }
  return g;
}

TensorAtPoint MetricField::at(const Point& p) const {
  TensorAtPoint g(0, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g({i, j}) = eval(component(i, j), p);
  }
  return g;
}

ConnectionJet::ConnectionJet(int order, std::array<Jet, 27> symbols)
    : order_(order), symbols_(std::move(symbols)) {
  for (const Jet& j : symbols_) {
    if (j.order() != order_) throw std::invalid_argument("connection jets must share one order");
  }
}

int CovariantJetTensor::order() const { return components.empty() ? 0 : components.front().order(); }

TensorAtPoint CovariantJetTensor::values() const {
  std::vector<double> v(components.size());
  std::transform(components.begin(), components.end(), v.begin(), [](const Jet& j) { return j.value(); });
  return TensorAtPoint(0, rank, std::move(v));
}

ConnectionJet christoffel(const MetricField& g, const Point& p, int order) {
  if (order < 0) throw std::invalid_argument("connection order must be nonnegative");
  const auto gj = g.jets(p, order + 1);
  const auto ginv = inverse_metric(gj);
  // dg[l][i][j] = d_l g_ij
  std::array<std::array<std::array<Jet, 3>, 3>, 3> dg;
  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) dg[l][i][j] = gj[i][j].derivative(kCoords[static_cast<std::size_t>(l)]);
    }
  }
  std::array<Jet, 27> symbols;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::array<Jet, 3> first_kind;  // Gamma_{l,ij}
      for (int l = 0; l < 3; ++l) {
        first_kind[l] = 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
      }
      for (int k = 0; k < 3; ++k) {
        Jet acc(order);
        for (int l = 0; l < 3; ++l) fma_product(acc, 1.0, ginv[k][l], first_kind[l]);
        symbols[static_cast<std::size_t>(9 * k + 3 * i + j)] = std::move(acc);
      }
    }
  }
  return ConnectionJet(order, std::move(symbols));
}

CovariantJetTensor covariant_derivative(const CovariantJetTensor& t, const ConnectionJet& gamma) {
  if (t.order() < 1) throw std::invalid_argument("covariant derivative needs a jet of order >= 1");
  const int n = t.rank;
  const int order = std::min(t.order() - 1, gamma.order());

  struct Symbol {
    int m, j, i;
    Jet jet;
  };
  std::vector<Symbol> nonzero;
  for (int m = 0; m < 3; ++m) {
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) {
        if (!gamma(m, j, i).is_zero()) nonzero.push_back({m, j, i, gamma(m, j, i).truncated(order)});
      }
    }
  }
  std::vector<char> zero(t.components.size());
  for (std::size_t c = 0; c < t.components.size(); ++c) zero[c] = t.components[c].is_zero();

  CovariantJetTensor out;
  out.rank = n + 1;
  out.curvature_symmetric = t.curvature_symmetric;
  out.components.resize(t.components.size() * 3);
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < t.components.size(); ++c) {
    if (t.curvature_symmetric) {
      const auto [canon, sign] = canonical_component(c, n);
      if (canon != c || sign != 1) continue;
    }
    std::size_t code = c;
    for (int s = n - 1; s >= 0; --s) {
      idx[static_cast<std::size_t>(s)] = static_cast<int>(code % 3);
      code /= 3;
    }
    for (int j = 0; j < 3; ++j) {
      Jet acc = zero[c] ? Jet(order)
                        : t.components[c].derivative(kCoords[static_cast<std::size_t>(j)]).truncated(order);
      for (const Symbol& sym : nonzero) {
        if (sym.j != j) continue;
        for (int s = 0; s < n; ++s) {
          if (idx[static_cast<std::size_t>(s)] != sym.i) continue;
          const std::size_t stride = power_of_three(n - 1 - s);
          const std::size_t other =
              c - static_cast<std::size_t>(sym.i) * stride + static_cast<std::size_t>(sym.m) * stride;
          if (zero[other]) continue;
          fma_product(acc, -1.0, sym.jet, t.components[other]);
        }
      }
      out.components[c * 3 + static_cast<std::size_t>(j)] = std::move(acc);
    }
  }
  if (out.curvature_symmetric) fill_curvature_images(out, order);
  return out;
}

CovariantJetTensor riemann_jets(const MetricField& g, const ConnectionJet& gamma, const Point& p) {
  const int order = gamma.order() - 1;
  if (order < 0) throw std::invalid_argument("curvature needs a connection jet of order >= 1");
  const auto gj = g.jets(p, order);
  // op[m][i][j][k]: R(d_i, d_j) d_k = op^m_{ijk} d_m
  CovariantJetTensor r;
  r.rank = 4;
  r.curvature_symmetric = true;
  r.components.assign(81, Jet(order));
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        std::array<Jet, 3> op;
        for (int m = 0; m < 3; ++m) {
          Jet acc = gamma(m, j, k).derivative(kCoords[static_cast<std::size_t>(i)]) -
                    gamma(m, i, k).derivative(kCoords[static_cast<std::size_t>(j)]);
          for (int q = 0; q < 3; ++q) {
            fma_product(acc, 1.0, gamma(q, j, k), gamma(m, i, q));
            fma_product(acc, -1.0, gamma(q, i, k), gamma(m, j, q));
          }
          op[m] = std::move(acc);
        }
        for (int l = k + 1; l < 3; ++l) {
          Jet acc(order);
          for (int m = 0; m < 3; ++m) fma_product(acc, 1.0, gj[m][l], op[m]);
          r.components[static_cast<std::size_t>(27 * i + 9 * j + 3 * k + l)] = std::move(acc);
        }
      }
    }
  }
  fill_curvature_images(r, order);
  return r;
}

std::vector<TensorAtPoint> curvature_tower(const MetricField& g, const Point& p, int k) {
  if (k < 0) throw std::invalid_argument("derivative order must be nonnegative");
  if (k + 2 > kMaxJetOrder) throw std::invalid_argument("derivative order exceeds the jet budget");
  const ConnectionJet gamma = christoffel(g, p, k + 1);
  CovariantJetTensor current = riemann_jets(g, gamma, p);
  std::vector<TensorAtPoint> tower;
  tower.reserve(static_cast<std::size_t>(k) + 1);
  tower.push_back(current.values());
  for (int level = 1; level <= k; ++level) {
    current = covariant_derivative(current, gamma);
    tower.push_back(current.values());
  }
  return tower;
}

TensorAtPoint riemann(const MetricField& g, const Point& p) { return curvature_tower(g, p, 0).front(); }

TensorAtPoint nabla_k_riemann(const MetricField& g, const Point& p, int k) {
  return curvature_tower(g, p, k).back();
}

TensorAtPoint metric_covariant_derivative(const MetricField& g, const Point& p) {
  const auto gj = g.jets(p, 1);
  CovariantJetTensor metric;
  metric.rank = 2;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) metric.components.push_back(gj[i][j]);
  }
  return covariant_derivative(metric, christoffel(g, p, 0)).values();
}

}  // namespace curvhom
