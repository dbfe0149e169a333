#include "curvhom/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvhom/errors.hpp"

namespace curvhom {
namespace {

constexpr double kIsoTol = 1e-9;
constexpr double kSearchTol = 1e-8;

// The four index patterns of (T, X, X, T) under the curvature antisymmetries,
// with their signs.
struct Image {
  int a, b, c, d;
  double sign;
};
constexpr std::array<Image, 4> kImages{{{0, 1, 1, 0, 1.0}, {1, 0, 1, 0, -1.0}, {0, 1, 0, 1, -1.0}, {1, 0, 0, 1, 1.0}}};

std::vector<int> word_indices(const std::string& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (char c : word) out.push_back(c == 'T' ? 0 : 1);
  return out;
}

// All words over {T, X} of length k, T before X.
std::vector<std::string> words(int k) {
  std::vector<std::string> out;
  const std::size_t n = std::size_t{1} << k;
  out.reserve(n);
  for (std::size_t code = 0; code < n; ++code) {
    std::string w(static_cast<std::size_t>(k), 'T');
    for (int i = 0; i < k; ++i) {
      if (code & (std::size_t{1} << (k - 1 - i))) w[static_cast<std::size_t>(i)] = 'X';
    }
    out.push_back(std::move(w));
  }
  return out;
}

void put_entry(TensorAtPoint& t, const std::string& word, double value) {
  std::vector<int> idx(4 + word.size());
  const auto diff = word_indices(word);
  std::copy(diff.begin(), diff.end(), idx.begin() + 4);
  for (const Image& im : kImages) {
    idx[0] = im.a;
    idx[1] = im.b;
    idx[2] = im.c;
    idx[3] = im.d;
    t.at(idx) = im.sign * value;
  }
}

double read_entry(const TensorAtPoint& t, const std::string& word) {
  std::vector<int> idx{0, 1, 1, 0};
  const auto diff = word_indices(word);
  idx.insert(idx.end(), diff.begin(), diff.end());
  return t.at(idx);
}

double max_abs_diff(const TensorAtPoint& a, const TensorAtPoint& b) {
  const auto x = a.components();
  const auto y = b.components();
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

bool canonical_phi(const TensorAtPoint& phi, double tol) {
  return phi.rank() == 2 && max_abs_diff(phi, canonical_inner_product()) <= tol;
}

// The structured tensor whose (T, X, X, T; w) entries are copied from `t`.
TensorAtPoint structured_part(const TensorAtPoint& t, int k) {
  TensorAtPoint s(0, 4 + k);
  for (const auto& w : words(k)) put_entry(s, w, read_entry(t, w));
  return s;
}

void require_rank(const ModelSpace& m) {
  if (m.phi.contravariant_rank() != 0 || m.phi.covariant_rank() != 2) throw ModelError("phi must be a (0,2) tensor");
  if (static_cast<int>(m.A.size()) != m.r + 1) throw ModelError("model must carry A_0 ... A_r");
  for (int k = 0; k <= m.r; ++k) {
    const auto& a = m.A[static_cast<std::size_t>(k)];
    if (a.contravariant_rank() != 0 || a.covariant_rank() != 4 + k) {
      throw ModelError("A_" + std::to_string(k) + " must be a (0," + std::to_string(4 + k) + ") tensor");
    }
  }
}

// Parameters of a canonical (eps0[, eps1]) model, or ModelError.
std::vector<double> canonical_parameters(const ModelSpace& model, int expected_r) {
  require_rank(model);
  if (model.r != expected_r) {
    throw ModelError("expected a model of order " + std::to_string(expected_r) + ", got " + std::to_string(model.r));
  }
  const ModelSpace want = expected_r == 0
                              ? canonical_curvature_model(read_entry(model.A[0], ""))
                              : canonical_first_derivative_model(read_entry(model.A[0], ""), read_entry(model.A[1], "T"));
  const double scale = std::max(1.0, model.A[0].max_abs());
  bool ok = canonical_phi(model.phi, kIsoTol);
  for (int k = 0; k <= expected_r && ok; ++k) {
    ok = max_abs_diff(model.A[static_cast<std::size_t>(k)], want.A[static_cast<std::size_t>(k)]) <= kIsoTol * scale;
  }
  const double eps0 = read_entry(model.A[0], "");
  if (!ok || eps0 == 0.0) throw ModelError("model is not in canonical form");
  if (expected_r == 0) return {eps0};
  const double eps1 = read_entry(model.A[1], "T");
  if (eps1 == 0.0) throw ModelError("model is not in canonical form (A_1(T,X,X,T;T) = 0)");
  return {eps0, eps1};
}

double relative_deviation(const Frame& F, const ModelSpace& m2, const ModelSpace& m1, int upto) {
  double scale = 1.0;
  for (int k = 0; k <= upto; ++k) scale = std::max(scale, m1.A[static_cast<std::size_t>(k)].max_abs());
  double dev = max_abs_diff(pullback(m2.phi, F), m1.phi);
  for (int k = 0; k <= upto; ++k) {
    const auto i = static_cast<std::size_t>(k);
    dev = std::max(dev, max_abs_diff(pullback(m2.A[i], F), m1.A[i]) / scale);
  }
  return dev;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

int ModelEntry::t_count() const {
  return 2 + static_cast<int>(std::count(word.begin(), word.end(), 'T'));
}

int ModelEntry::x_count() const {
  return 2 + static_cast<int>(std::count(word.begin(), word.end(), 'X'));
}

Frame adapted_basis_gf(const Expr& f, const Point& p, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return Frame::diagonal(std::exp(-eval(f, p)), lambda, 1.0 / lambda);
}

Frame adapted_basis_gh(const Expr& h, const Point& p, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = lambda;
  m(2, 1) = lambda * eval(h, p);
  m(2, 2) = 1.0 / lambda;
  return Frame(m);
}

ModelSpace build_model(const MetricField& g, const Point& p, int r, const Frame& frame) {
  ModelSpace m;
  m.r = r;
  m.phi = pullback(g.at(p), frame);
  for (TensorAtPoint& t : curvature_tower(g, p, r)) m.A.push_back(pullback(t, frame));
  return m;
}

TensorAtPoint canonical_inner_product() {
  TensorAtPoint phi(0, 2);
  phi({0, 0}) = 1.0;
  phi({1, 2}) = 1.0;
  phi({2, 1}) = 1.0;
  return phi;
}

ModelSpace canonical_curvature_model(double eps0) {
  ModelSpace m;
  m.r = 0;
  m.phi = canonical_inner_product();
  m.A.emplace_back(0, 4);
  put_entry(m.A[0], "", eps0);
  return m;
}

ModelSpace canonical_first_derivative_model(double eps0, double eps1) {
  ModelSpace m = canonical_curvature_model(eps0);
  m.r = 1;
  m.A.emplace_back(0, 5);
  put_entry(m.A[1], "T", eps1);
  return m;
}

bool is_structured(const ModelSpace& model, double tol) {
  require_rank(model);
  if (!canonical_phi(model.phi, tol)) return false;
  for (int k = 0; k <= model.r; ++k) {
    const auto& a = model.A[static_cast<std::size_t>(k)];
    const double scale = std::max(1.0, a.max_abs());
    if (max_abs_diff(a, structured_part(a, k)) > tol * scale) return false;
  }
  return true;
}

std::vector<ModelEntry> structured_entries(const ModelSpace& model, double tol) {
  if (!is_structured(model, tol)) throw ModelError("model is not in structured (T, X, X, T) form");
  std::vector<ModelEntry> out;
  for (int k = 0; k <= model.r; ++k) {
    for (auto& w : words(k)) {
      const double v = read_entry(model.A[static_cast<std::size_t>(k)], w);
      out.push_back({k, std::move(w), v});
    }
  }
  return out;
}

IsomorphismCheck check_curvature_isomorphism(const Frame& F, const ModelSpace& model) {
  canonical_parameters(model, 0);
  const Eigen::Matrix3d& m = F.matrix();
  IsomorphismCheck c;
  c.parameters = {m(0, 0), m(2, 0), m(0, 1), m(1, 1), m(2, 1), m(2, 2)};
  const double tol = kIsoTol;
  c.shape_ok = std::abs(m(1, 0)) <= tol && std::abs(m(0, 2)) <= tol && std::abs(m(1, 2)) <= tol;
  c.metric_pairing_ok = near(m(1, 1) * m(2, 2), 1.0, tol);
  c.max_deviation = relative_deviation(F, model, model, 0);
  c.accepted = c.shape_ok && c.max_deviation <= tol;
  if (c.accepted) {
    c.note = "a4*a6 = 1 is enforced by phi(FX, FY) = 1 in addition to a1^2 = a4^2 = 1";
  }
  return c;
}

IsomorphismCheck check_first_derivative_isomorphism(const Frame& F, const ModelSpace& model) {
  canonical_parameters(model, 1);
  const Eigen::Matrix3d& m = F.matrix();
  IsomorphismCheck c;
  c.parameters = {m(2, 0), m(1, 1), m(2, 1), m(2, 2)};
  const double tol = kIsoTol;
  c.shape_ok = near(m(0, 0), 1.0, tol) && std::abs(m(1, 0)) <= tol && std::abs(m(0, 1)) <= tol &&
               std::abs(m(0, 2)) <= tol && std::abs(m(1, 2)) <= tol;
  c.metric_pairing_ok = near(m(1, 1) * m(2, 2), 1.0, tol);
  c.max_deviation = relative_deviation(F, model, model, 1);
  c.accepted = c.shape_ok && c.max_deviation <= tol;
  if (c.accepted) {
    c.note = "preserving phi and A_1 forces b1 = b3 = 0 and b4 = b2";
  }
  return c;
}

double pullback_deviation(const Frame& F, const ModelSpace& m2, const ModelSpace& m1) {
  require_rank(m1);
  require_rank(m2);
  if (m1.r != m2.r) throw ModelError("models have different orders");
  return relative_deviation(F, m2, m1, m1.r);
}

std::optional<Frame> find_isomorphism(const ModelSpace& m1, const ModelSpace& m2) {
  const auto e1 = structured_entries(m1);
  const auto e2 = structured_entries(m2);
  if (m1.r != m2.r) throw ModelError("models have different orders");
  for (double sT : {1.0, -1.0}) {
    for (double sX : {1.0, -1.0}) {
      // mu^{#X} = e1 / (signs * e2), read from the first entry nonzero in both.
      double mu = 1.0;
      for (std::size_t i = 0; i < e1.size(); ++i) {
        if (e1[i].value == 0.0 || e2[i].value == 0.0) continue;
        const double signs = std::pow(sT, e2[i].t_count()) * std::pow(sX, e2[i].x_count());
        const double q = e1[i].value / (signs * e2[i].value);
        if (q > 0.0) mu = std::pow(q, 1.0 / e2[i].x_count());
        break;
      }
      const Frame F = Frame::diagonal(sT, sX * mu, sX / mu);
      if (pullback_deviation(F, m2, m1) <= kSearchTol) return F;
    }
  }
  return std::nullopt;
}

}  // namespace curvhom
