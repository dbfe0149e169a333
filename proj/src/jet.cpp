#include "curvhom/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "curvhom/errors.hpp"

namespace curvhom {
namespace {

struct ProductTerm {
  std::uint32_t left;
  std::uint32_t right;
  JetScalar coef;
};

// Index layout and Leibniz product terms for every order up to kMaxJetOrder.
// Graded layout: all indices of degree d precede those of degree d+1, so a jet
// of order n is a prefix of a jet of order n+1.
struct JetTables {
  std::vector<MultiIndex> indices;
  std::array<std::array<std::array<std::int32_t, kMaxJetOrder + 1>, kMaxJetOrder + 1>,
             kMaxJetOrder + 1>
      lookup{};
  std::vector<std::size_t> term_start;
  std::vector<ProductTerm> terms;

  JetTables() {
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      for (int t = d; t >= 0; --t) {
        for (int x = d - t; x >= 0; --x) {
          const int y = d - t - x;
          lookup[t][x][y] = static_cast<std::int32_t>(indices.size());
          indices.push_back({t, x, y});
        }
      }
    }
    std::array<std::array<JetScalar, kMaxJetOrder + 1>, kMaxJetOrder + 1> binom{};
    for (int n = 0; n <= kMaxJetOrder; ++n) {
      binom[n][0] = 1.0;
      for (int k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0.0);
    }
    term_start.reserve(indices.size() + 1);
    for (const MultiIndex& m : indices) {
      term_start.push_back(terms.size());
      for (int a = 0; a <= m.t; ++a) {
        for (int b = 0; b <= m.x; ++b) {
          for (int c = 0; c <= m.y; ++c) {
            const JetScalar coef = binom[m.t][a] * binom[m.x][b] * binom[m.y][c];
            terms.push_back({static_cast<std::uint32_t>(lookup[a][b][c]),
                             static_cast<std::uint32_t>(lookup[m.t - a][m.x - b][m.y - c]), coef});
          }
        }
      }
    }
    term_start.push_back(terms.size());
  }
};

const JetTables& tables() {
  static const JetTables instance;
  return instance;
}

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw std::out_of_range("jet order " + std::to_string(order) + " outside [0, " +
                            std::to_string(kMaxJetOrder) + "]");
  }
}

}  // namespace

std::size_t jet_size(int order) {
  check_order(order);
  const auto n = static_cast<std::size_t>(order);
  return (n + 1) * (n + 2) * (n + 3) / 6;
}

std::size_t jet_index(const MultiIndex& m) {
  if (m.t < 0 || m.x < 0 || m.y < 0 || m.total() > kMaxJetOrder) {
    throw std::out_of_range("multi-index outside the supported jet range");
  }
  return static_cast<std::size_t>(tables().lookup[m.t][m.x][m.y]);
}

MultiIndex jet_multi_index(std::size_t index) { return tables().indices.at(index); }

Jet::Jet(int order) : order_(order), d_(jet_size(order), 0.0) {}

Jet Jet::constant(JetScalar value, int order) {
  Jet j(order);
  j.d_[0] = value;
  return j;
}

Jet Jet::variable(Coord c, JetScalar value, int order) {
  Jet j(order);
  j.d_[0] = value;
  if (order >= 1) j.d_[1 + static_cast<int>(c)] = 1.0;
  return j;
}

Jet Jet::from_partials(int order, std::vector<JetScalar> partials) {
  if (partials.size() != jet_size(order)) {
    throw std::invalid_argument("partials table has the wrong size for the requested order");
  }
  Jet j(order);
  j.d_ = std::move(partials);
  return j;
}

double Jet::partial(const MultiIndex& m) const {
  if (m.t < 0 || m.x < 0 || m.y < 0 || m.total() > order_) {
    throw std::out_of_range("multi-index of total order " + std::to_string(m.total()) +
                            " exceeds jet order " + std::to_string(order_));
  }
  return static_cast<double>(d_[jet_index(m)]);
}

void Jet::set_partial(const MultiIndex& m, double v) {
  if (m.t < 0 || m.x < 0 || m.y < 0 || m.total() > order_) {
    throw std::out_of_range("multi-index exceeds jet order");
  }
  d_[jet_index(m)] = v;
}

Jet Jet::derivative(Coord c) const {
  if (order_ == 0) throw std::out_of_range("cannot differentiate an order-0 jet");
  Jet out(order_ - 1);
  const auto& tab = tables();
  for (std::size_t i = 0; i < out.d_.size(); ++i) {
    MultiIndex m = tab.indices[i];
    switch (c) {
      case Coord::t: ++m.t; break;
      case Coord::x: ++m.x; break;
      case Coord::y: ++m.y; break;
    }
    out.d_[i] = d_[static_cast<std::size_t>(tab.lookup[m.t][m.x][m.y])];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (order > order_) throw std::out_of_range("cannot raise the order of a jet");
  Jet out(order);
  std::copy_n(d_.begin(), out.d_.size(), out.d_.begin());
  return out;
}

bool Jet::is_zero() const noexcept {
  return std::all_of(d_.begin(), d_.end(), [](JetScalar v) { return v == 0.0; });
}

Jet& Jet::operator+=(const Jet& rhs) {
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += rhs.d_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= rhs.d_[i];
  return *this;
}

Jet& Jet::operator*=(JetScalar s) {
  for (JetScalar& v : d_) v *= s;
  return *this;
}

void fma_product(Jet& out, JetScalar coef, const Jet& a, const Jet& b) {
  if (out.order() > std::min(a.order(), b.order())) {
    throw std::invalid_argument("product accumulator order exceeds operand orders");
  }
  const auto& tab = tables();
  const auto pa = a.partials();
  const auto pb = b.partials();
  auto po = out.partials();
  for (std::size_t m = 0; m < po.size(); ++m) {
    JetScalar acc = 0.0;
    for (std::size_t k = tab.term_start[m]; k < tab.term_start[m + 1]; ++k) {
      const ProductTerm& term = tab.terms[k];
      acc += term.coef * pa[term.left] * pb[term.right];
    }
    po[m] += coef * acc;
  }
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(std::min(a.order(), b.order()));
  fma_product(out, 1.0, a, b);
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b.scalar_value() == 0.0) throw DomainError("division by a jet with zero value");
  Jet out(std::min(a.order(), b.order()));
  const auto& tab = tables();
  const auto pa = a.partials();
  const auto pb = b.partials();
  auto pc = out.partials();
  const JetScalar b0 = pb[0];
  // a = b * c solved degree by degree; the (0, m) Leibniz term carries c_m.
  for (std::size_t m = 0; m < pc.size(); ++m) {
    JetScalar acc = pa[m];
    for (std::size_t k = tab.term_start[m]; k < tab.term_start[m + 1]; ++k) {
      const ProductTerm& term = tab.terms[k];
      if (term.left == 0) continue;
      acc -= term.coef * pb[term.left] * pc[term.right];
    }
    pc[m] = acc / b0;
  }
  return out;
}

Jet compose(const Jet& a, std::span<const JetScalar> derivatives) {
  const int n = a.order();
  if (derivatives.size() < static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("compose needs derivatives up to the jet order");
  }
  Jet out = Jet::constant(derivatives[0], n);
  if (n == 0) return out;
  Jet delta = a;
  delta.partials()[0] = 0.0;
  Jet power = delta;
  JetScalar inv_factorial = 1.0;
  for (int k = 1; k <= n; ++k) {
    inv_factorial /= k;
    const JetScalar c = derivatives[static_cast<std::size_t>(k)] * inv_factorial;
    auto po = out.partials();
    const auto pp = power.partials();
    for (std::size_t i = 0; i < po.size(); ++i) po[i] += c * pp[i];
    if (k < n) power = power * delta;
  }
  return out;
}

Jet exp(const Jet& a) {
  std::vector<JetScalar> d(static_cast<std::size_t>(a.order()) + 1, std::exp(a.scalar_value()));
  return compose(a, d);
}

Jet log(const Jet& a) {
  const JetScalar v = a.scalar_value();
  if (!(v > 0.0)) throw DomainError("log of nonpositive value");
  std::vector<JetScalar> d(static_cast<std::size_t>(a.order()) + 1);
  d[0] = std::log(v);
  JetScalar term = 1.0 / v;  // (k-1)! (-1)^(k-1) / v^k
  for (std::size_t k = 1; k < d.size(); ++k) {
    d[k] = term;
    term *= -static_cast<JetScalar>(k) / v;
  }
  return compose(a, d);
}

Jet sin(const Jet& a) {
  const JetScalar s = std::sin(a.scalar_value());
  const JetScalar c = std::cos(a.scalar_value());
  const std::array<JetScalar, 4> cycle{s, c, -s, -c};
  std::vector<JetScalar> d(static_cast<std::size_t>(a.order()) + 1);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = cycle[k % 4];
  return compose(a, d);
}

Jet cos(const Jet& a) {
  const JetScalar s = std::sin(a.scalar_value());
  const JetScalar c = std::cos(a.scalar_value());
  const std::array<JetScalar, 4> cycle{c, -s, -c, s};
  std::vector<JetScalar> d(static_cast<std::size_t>(a.order()) + 1);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = cycle[k % 4];
  return compose(a, d);
}

Jet sqrt(const Jet& a) {
  const JetScalar v = a.scalar_value();
  if (v < 0.0) throw DomainError("sqrt of negative value");
  if (v == 0.0) {
    if (a.order() == 0) return Jet::constant(0.0, 0);
    throw DomainError("sqrt is not differentiable at zero");
  }
  return pow(a, 0.5);
}

Jet abs(const Jet& a) {
  const JetScalar v = a.scalar_value();
  if (v == 0.0) {
    if (a.order() == 0) return Jet::constant(0.0, 0);
    throw DomainError("abs is not differentiable at zero");
  }
  return v > 0.0 ? a : -a;
}

Jet pow(const Jet& a, int n) {
  if (n < 0) {
    if (a.scalar_value() == 0.0) throw DomainError("negative power of zero");
    return Jet::constant(1.0, a.order()) / pow(a, -n);
  }
  Jet result = Jet::constant(1.0, a.order());
  Jet base = a;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1u) result = result * base;
    if (e > 1u) base = base * base;
  }
  return result;
}

Jet pow(const Jet& a, double p) {
  if (std::nearbyint(p) == p && std::abs(p) <= 64.0L) return pow(a, static_cast<int>(p));
  const JetScalar v = a.scalar_value();
  if (!(v > 0.0)) throw DomainError("non-integer power of nonpositive value");
  std::vector<JetScalar> d(static_cast<std::size_t>(a.order()) + 1);
  JetScalar falling = 1.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = falling * std::pow(v, p - static_cast<JetScalar>(k));
    falling *= p - static_cast<JetScalar>(k);
  }
  return compose(a, d);
}

}  // namespace curvhom
