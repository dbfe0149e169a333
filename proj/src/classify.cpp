#include "curvhom/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "curvhom/errors.hpp"
#include "curvhom/geometry.hpp"
#include "curvhom/models.hpp"

namespace curvhom {
namespace {

constexpr double kSpreadFloor = 1e-9;
constexpr double kZeroRelative = 1e-9;
constexpr double kFlatFloor = 1e-12;

double entry(const ModelSpace& m, int k, const std::string& word) {
  std::vector<int> idx{0, 1, 1, 0};
  for (char c : word) idx.push_back(c == 'T' ? 0 : 1);
  return m.A.at(static_cast<std::size_t>(k)).at(idx);
}

ModelSpace f_model(const Expr& f, const Point& p, int r, double lambda) {
  return build_model(gf_metric(f), p, r, adapted_basis_gf(f, p, lambda));
}

ModelSpace h_model(const Expr& h, const Point& p, int r, double lambda) {
  return build_model(gh_metric(h), p, r, adapted_basis_gh(h, p, lambda));
}

// R(T, X, X, T) on the unit basis, checked against the hypothesis floor.
double base_curvature(const ModelSpace& unit, const char* what) {
  const double e0 = entry(unit, 0, "");
  if (!(std::abs(e0) >= kHypothesisFloor)) {
    throw HypothesisError(std::string(what) + " vanishes at the sample point");
  }
  return e0;
}

std::string entry_label(int k, const std::string& word) {
  std::string s = "A_" + std::to_string(k) + "(T,X,X,T";
  if (!word.empty()) {
    s += ';';
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i) s += ',';
      s += word[i];
    }
  }
  return s + ")";
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct GaugeEntry {
  int order = 0;
  double value = 0.0;
  int t_count = 0;
  int x_count = 0;
  double psi_power = 0.0;
};

// Normal form of a list of structured entries under X -> lambda X, the sign
// flips and (optionally) a positive rescaling v -> v psi^{-psi_power}.
std::vector<double> normal_form(std::vector<GaugeEntry> e, bool with_psi) {
  std::vector<double> order_scale;
  for (const auto& g : e) {
    if (static_cast<std::size_t>(g.order) >= order_scale.size()) order_scale.resize(g.order + 1, 1.0);
    order_scale[g.order] = std::max(order_scale[g.order], std::abs(g.value));
  }
  for (auto& g : e) {
    if (std::abs(g.value) < kZeroRelative * order_scale[g.order]) g.value = 0.0;
  }

  auto coeff = [&](const GaugeEntry& g) {
    return Eigen::Vector2d(g.x_count, with_psi ? -g.psi_power : 0.0);
  };
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < e.size() && picked.size() < 2; ++i) {
    if (e[i].value == 0.0) continue;
    if (picked.empty()) {
      picked.push_back(i);
      continue;
    }
    const Eigen::Vector2d a = coeff(e[picked[0]]), b = coeff(e[i]);
    if (std::abs(a.x() * b.y() - a.y() * b.x()) > 1e-12) picked.push_back(i);
  }
  Eigen::Vector2d gauge = Eigen::Vector2d::Zero();
  if (picked.size() == 1) {
    const Eigen::Vector2d c = coeff(e[picked[0]]);
    gauge = -std::log(std::abs(e[picked[0]].value)) * c / c.squaredNorm();
  } else if (picked.size() == 2) {
    Eigen::Matrix2d m;
    m.row(0) = coeff(e[picked[0]]).transpose();
    m.row(1) = coeff(e[picked[1]]).transpose();
    const Eigen::Vector2d rhs(-std::log(std::abs(e[picked[0]].value)), -std::log(std::abs(e[picked[1]].value)));
    gauge = m.partialPivLu().solve(rhs);
  }
  std::vector<double> scaled(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) scaled[i] = e[i].value * std::exp(coeff(e[i]).dot(gauge));

  // Sign gauge: keep the lexicographically most positive sign vector.
  std::vector<double> best;
  for (double sT : {1.0, -1.0}) {
    for (double sX : {1.0, -1.0}) {
      std::vector<double> cand(scaled.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        const double s = (e[i].t_count % 2 ? sT : 1.0) * (e[i].x_count % 2 ? sX : 1.0);
        cand[i] = s * scaled[i];
      }
      if (best.empty()) {
        best = cand;
        continue;
      }
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if ((cand[i] > 0) != (best[i] > 0)) {
          if (cand[i] > 0) best = cand;
          break;
        }
      }
    }
  }
  return best;
}

std::vector<GaugeEntry> select(const std::vector<ModelEntry>& entries, int from, int to,
                               const std::function<double(int)>& psi_power) {
  std::vector<GaugeEntry> out;
  for (const auto& m : entries) {
    if (m.order < from || m.order > to) continue;
    out.push_back({m.order, m.value, m.t_count(), m.x_count(), psi_power(m.order)});
  }
  return out;
}

std::vector<std::string> labels(const std::vector<ModelEntry>& entries, int from, int to) {
  std::vector<std::string> out;
  for (const auto& m : entries) {
    if (m.order >= from && m.order <= to) out.push_back(entry_label(m.order, m.word));
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double relative_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / std::max(std::abs(median(v)), kSpreadFloor);
}

struct Comparison {
  bool agree = true;
  std::string detail;
};

Comparison compare_forms(const NormalFormSeries& s, double tol) {
  if (s.rows.empty()) return {true, "no included points"};
  const std::size_t n = s.labels.size();
  for (std::size_t j = 0; j < n; ++j) {
    const bool zero = s.rows.front()[j] == 0.0;
    for (const auto& row : s.rows) {
      if ((row[j] == 0.0) != zero) return {false, "vanishing pattern of " + s.labels[j] + " differs across points"};
    }
  }
  double worst = 0.0;
  std::size_t worst_j = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col;
    for (const auto& row : s.rows) col.push_back(row[j]);
    const double sp = relative_spread(col);
    if (sp > worst) {
      worst = sp;
      worst_j = j;
    }
  }
  if (worst < tol) return {true, "normal forms agree (max spread " + format_double(worst) + ")"};
  return {false, s.labels[worst_j] + " varies after normalization (spread " + format_double(worst) + ")"};
}

struct PointResult {
  std::optional<std::string> excluded;
  bool flat = false;
  std::vector<ModelEntry> entries;
  std::vector<std::optional<double>> invariants;
};

struct SeriesName {
  std::string name;
  bool invariant;
};

std::vector<SeriesName> invariant_names(Family family, int r) {
  switch (family) {
    case Family::f: {
      std::vector<SeriesName> n{
          {"Delta", false}, {"psi", false}, {"Xi_f", false}, {"Xi_f_normalized", true}, {"ratio_f", true}};
      for (int k = 0; k <= r; ++k) n.push_back({"cbar_" + std::to_string(k), true});
      return n;
    }
    case Family::h:
      return {{"h2", false},
              {"h3", false},
              {"psi", false},
              {"Xi_h", true},
              {"xi_T", true},
              {"xi_X", true},
              {"xi_T_printed", false},
              {"psi_identity_curvature_residual", false},
              {"psi_identity_derivative_residual", false}};
    case Family::custom:
      return {{"curvature_max_abs", false}};
  }
  return {};
}

template <class F>
std::optional<double> guarded(F&& fn) {
  try {
    return fn();
  } catch (const HypothesisError&) {
    return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

std::vector<std::optional<double>> point_invariants(const FamilySpec& spec, const Point& p, int r,
                                                    const std::vector<ModelEntry>& entries,
                                                    const std::vector<TensorAtPoint>* tower) {
  if (spec.family == Family::custom) return {tower->front().max_abs()};
  const Expr& fn = *spec.function;
  const double e0 = entries.front().value;
  if (spec.family == Family::f) {
    std::vector<std::optional<double>> v{-e0, std::abs(e0)};
    v.push_back(guarded([&] { return invariant_Xi_f(fn, p); }));
    v.push_back(guarded([&] { return invariant_Xi_f_normalized(fn, p); }));
    v.push_back(guarded([&] { return invariant_ratio_f(fn, p); }));
    for (int k = 0; k <= r; ++k) v.push_back(guarded([&] { return scaling_constant_f(fn, p, k); }));
    return v;
  }
  std::vector<std::optional<double>> v{e0, entries[1].value};
  const std::optional<XiTX> xi = [&]() -> std::optional<XiTX> {
    try {
      return invariants_xi_TX(fn, p);
    } catch (const HypothesisError&) {
      return std::nullopt;
    }
  }();
  const std::optional<PsiIdentity> id = [&]() -> std::optional<PsiIdentity> {
    try {
      return psi_identity(fn, p);
    } catch (const HypothesisError&) {
      return std::nullopt;
    }
  }();
  v.push_back(id ? std::optional<double>(id->psi) : std::nullopt);
  v.push_back(guarded([&] { return invariant_Xi_h(fn, p); }));
  v.push_back(xi ? std::optional<double>(xi->xi_T) : std::nullopt);
  v.push_back(xi ? std::optional<double>(xi->xi_X) : std::nullopt);
  v.push_back(xi ? std::optional<double>(xi->xi_T_printed) : std::nullopt);
  v.push_back(id ? std::optional<double>(id->curvature_residual) : std::nullopt);
  v.push_back(id ? std::optional<double>(id->derivative_residual) : std::nullopt);
  return v;
}

PointResult evaluate_point(const FamilySpec& spec, const Point& p, int r) {
  PointResult out;
  try {
    const MetricField g = spec.metric();
    if (spec.family == Family::custom) {
      const auto tower = curvature_tower(g, p, r);
      double m = 0.0;
      for (const auto& t : tower) m = std::max(m, t.max_abs());
      out.flat = m < kFlatFloor;
      out.invariants = point_invariants(spec, p, r, {}, &tower);
      return out;
    }
    const Expr& fn = *spec.function;
    const ModelSpace unit = spec.family == Family::f ? f_model(fn, p, std::max(r, 1), 1.0)
                                                     : h_model(fn, p, std::max(r, 1), 1.0);
    out.entries = structured_entries(unit);
    double m = 0.0;
    for (const auto& e : out.entries) m = std::max(m, std::abs(e.value));
    out.flat = m < kFlatFloor;
    if (std::abs(out.entries.front().value) < kHypothesisFloor) {
      out.excluded = spec.family == Family::f ? "Delta vanishes (R(T,X,X,T) = 0)" : "h'' vanishes (R(T,X,X,T) = 0)";
    }
    out.invariants = point_invariants(spec, p, r, out.entries, nullptr);
    // Keep only orders <= r for the verdicts.
    std::erase_if(out.entries, [r](const ModelEntry& e) { return e.order > r; });
  } catch (const DomainError& e) {
    out.excluded = std::string("domain error: ") + e.what();
  } catch (const GeometryError& e) {
    out.excluded = std::string("geometry error: ") + e.what();
  } catch (const ModelError& e) {
    out.excluded = std::string("model error: ") + e.what();
  }
  return out;
}

std::vector<PointResult> evaluate_all(const FamilySpec& spec, const std::vector<Point>& points, int r,
                                      unsigned threads) {
  std::vector<PointResult> results(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) results[i] = evaluate_point(spec, points[i], r);
  };
  if (threads <= 1) {
    worker();
    return results;
  }
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  pool.clear();
  return results;
}

}  // namespace

SampleSet SampleSet::grid(std::vector<GridAxis> axes) {
  if (axes.empty()) throw std::invalid_argument("grid needs at least one axis");
  std::set<Coord> seen;
  for (const auto& a : axes) {
    if (!seen.insert(a.coord).second) {
      throw std::invalid_argument("coordinate " + std::string(coordinate_name(a.coord)) + " given twice");
    }
    if (a.count < 1) throw std::invalid_argument("grid count must be at least 1");
    if (!(a.min <= a.max)) throw std::invalid_argument("grid min must not exceed max");
  }
  std::vector<Point> pts{Point{0.0, 0.0, 0.0}};
  for (const auto& a : axes) {
    std::vector<Point> next;
    for (const Point& base : pts) {
      for (int i = 0; i < a.count; ++i) {
        Point q = base;
        q[static_cast<std::size_t>(a.coord)] =
            a.count == 1 ? a.min : a.min + (a.max - a.min) * static_cast<double>(i) / (a.count - 1);
        next.push_back(q);
      }
    }
    pts = std::move(next);
  }
  SampleSet s = from_points(std::move(pts));
  s.axes = std::move(axes);
  return s;
}

SampleSet SampleSet::from_points(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  SampleSet s;
  s.points = std::move(points);
  return s;
}

double invariant_Xi_f(const Expr& f, const Point& p) {
  const ModelSpace unit = f_model(f, p, 1, 1.0);
  base_curvature(unit, "Delta");
  const double v = entry(unit, 1, "X");
  return v * v;
}

double invariant_Xi_f_normalized(const Expr& f, const Point& p) {
  const double e0 = base_curvature(f_model(f, p, 0, 1.0), "Delta");
  const ModelSpace m = f_model(f, p, 1, 1.0 / std::sqrt(std::abs(e0)));
  const double v = entry(m, 1, "X");
  return v * v;
}

double invariant_ratio_f(const Expr& f, const Point& p) {
  const ModelSpace unit = f_model(f, p, 1, 1.0);
  const double e0 = base_curvature(unit, "Delta");
  const double e1 = entry(unit, 1, "X");
  return e1 * e1 / (e0 * e0 * e0);
}

double scaling_constant_f(const Expr& f, const Point& p, int k) {
  if (k < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const double e0 = base_curvature(f_model(f, p, 0, 1.0), "Delta");
  const ModelSpace m = f_model(f, p, k, 1.0 / std::sqrt(std::abs(e0)));
  return -entry(m, k, std::string(static_cast<std::size_t>(k), 'X'));
}

double invariant_Xi_h(const Expr& h, const Point& p) {
  const double e0 = base_curvature(h_model(h, p, 0, 1.0), "h''");
  const ModelSpace m = h_model(h, p, 1, 1.0 / std::sqrt(std::abs(e0)));
  const double v = entry(m, 1, "T");
  return v * v;
}

namespace {

struct HBasis {
  double h2, h3, h4, lambda2, psi;
};

HBasis psi_basis(const Expr& h, const Point& p) {
  const ModelSpace unit = h_model(h, p, 2, 1.0);
  const double h2 = base_curvature(unit, "h''");
  const double h3 = entry(unit, 1, "T");
  if (!(std::abs(h3) >= kHypothesisFloor)) throw HypothesisError("h''' vanishes at the sample point");
  const double q = h3 / h2;
  return {h2, h3, entry(unit, 2, "TT"), h3 * h3 / std::pow(std::abs(h2), 3), q * q};
}

}  // namespace

XiTX invariants_xi_TX(const Expr& h, const Point& p) {
  const HBasis b = psi_basis(h, p);
  const ModelSpace m = h_model(h, p, 2, std::sqrt(b.lambda2));
  XiTX out;
  out.psi = b.psi;
  out.lambda_squared = b.lambda2;
  out.xi_T = entry(m, 2, "TT") / (b.psi * b.psi);
  out.xi_X = entry(m, 2, "XX") / (b.psi * b.psi);
  out.xi_T_printed = b.h4 / (b.h2 * b.h2);
  return out;
}

PsiIdentity psi_identity(const Expr& h, const Point& p) {
  const HBasis b = psi_basis(h, p);
  const ModelSpace m = h_model(h, p, 1, std::sqrt(b.lambda2));
  PsiIdentity out;
  out.lambda_squared = b.lambda2;
  out.psi = b.psi;
  out.curvature_entry = entry(m, 0, "");
  out.derivative_entry = entry(m, 1, "T");
  out.curvature_sign = b.h2 > 0 ? 1 : -1;
  out.derivative_sign = b.h3 > 0 ? 1 : -1;
  const double p32 = std::pow(b.psi, 1.5);
  out.curvature_residual = std::abs(out.curvature_entry - out.curvature_sign * b.psi) / b.psi;
  out.derivative_residual = std::abs(out.derivative_entry - out.derivative_sign * p32) / p32;
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::hypothesis_violated: return "hypothesis_violated";
    case Verdict::not_assessed: return "not_assessed";
  }
  return "?";
}

const VerdictEntry* HomogeneityReport::find(const std::string& property) const {
  for (const auto& v : verdicts) {
    if (v.property == property) return &v;
  }
  return nullptr;
}

const InvariantSeries* HomogeneityReport::invariant(const std::string& name) const {
  for (const auto& s : invariants) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

InvariantSeries summarize(std::string name, std::vector<std::optional<double>> values, double tol) {
  InvariantSeries s;
  s.name = std::move(name);
  std::vector<double> present;
  for (const auto& v : values) {
    if (v && std::isfinite(*v)) present.push_back(*v);
  }
  s.values = std::move(values);
  s.available = static_cast<int>(present.size());
  if (!present.empty()) {
    const auto [lo, hi] = std::minmax_element(present.begin(), present.end());
    s.min = *lo;
    s.max = *hi;
    s.spread = relative_spread(present);
    s.constant = s.spread < tol;
  }
  return s;
}

HomogeneityReport classify(const FamilySpec& spec, int r, const SampleSet& samples, const ClassifyOptions& options) {
  if (r < 0) throw std::invalid_argument("order must be nonnegative");
  if (r + 2 > kMaxJetOrder) throw std::invalid_argument("order exceeds the jet budget");
  if (samples.points.empty()) throw std::invalid_argument("sample set is empty");
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  HomogeneityReport rep;
  rep.family = spec.family;
  rep.order = r;
  rep.tolerance = options.tolerance;
  rep.points = samples.points;
  const double tol = options.tolerance;

  const auto results = evaluate_all(spec, samples.points, r, options.threads);

  const auto names = invariant_names(spec.family, r);
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::vector<std::optional<double>> col;
    for (const auto& pr : results) col.push_back(j < pr.invariants.size() ? pr.invariants[j] : std::nullopt);
    rep.invariants.push_back(summarize(names[j].name, std::move(col), tol));
    rep.invariants.back().isometry_invariant = names[j].invariant;
  }

  const bool all_flat =
      std::all_of(results.begin(), results.end(), [](const PointResult& pr) { return pr.flat; });
  auto add = [&](std::string property, int order, Verdict v, std::string detail) {
    rep.verdicts.push_back({std::move(property), order, v, std::move(detail)});
  };
  auto property_list = [&](auto&& emit) {
    emit("CH_0", 0);
    for (int k = 1; k <= r; ++k) {
      emit("CH_" + std::to_string(k) + "(1,3)", k);
      emit("SCH_" + std::to_string(k) + "(1,3)", k);
      emit("CH_" + std::to_string(k), k);
    }
  };

  if (all_flat) {
    rep.degenerate = true;
    rep.notes.push_back("degenerate: zero curvature at every sample point; all verdicts pass vacuously");
    property_list([&](const std::string& p, int k) { add(p, k, Verdict::pass, "degenerate: zero curvature"); });
    return rep;
  }

  std::vector<std::size_t> included;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].excluded) {
      rep.exclusions.push_back({samples.points[i], *results[i].excluded});
    } else {
      included.push_back(i);
    }
  }
  if (included.empty()) {
    throw HypothesisError("every sample point violates the nonvanishing hypotheses (" +
                          rep.exclusions.front().reason + ")");
  }

  if (spec.family == Family::custom) {
    rep.notes.push_back("custom metric: only the zero-curvature check is performed");
    property_list([&](const std::string& p, int k) {
      add(p, k, Verdict::not_assessed, "no adapted basis is known for a custom metric");
    });
    return rep;
  }

  const bool violated = 2 * rep.exclusions.size() > results.size();
  if (violated) {
    property_list([&](const std::string& p, int k) {
      add(p, k, Verdict::hypothesis_violated,
          std::to_string(rep.exclusions.size()) + " of " + std::to_string(results.size()) + " points excluded");
    });
    rep.notes.push_back("more than half of the sample points violate the nonvanishing hypotheses");
    return rep;
  }

  // Normal forms over the included points.
  auto series = [&](const std::string& property, int from, int to, bool with_psi,
                    const std::function<double(int)>& psi_power) {
    NormalFormSeries s;
    s.property = property;
    s.labels = labels(results[included.front()].entries, from, to);
    for (std::size_t i : included) {
      s.rows.push_back(normal_form(select(results[i].entries, from, to, psi_power), with_psi));
    }
    return s;
  };
  auto run = [&](NormalFormSeries s, int order) {
    const Comparison c = compare_forms(s, tol);
    add(s.property, order, c.agree ? Verdict::pass : Verdict::fail, c.detail);
    rep.normal_forms.push_back(std::move(s));
    return c;
  };

  const auto none = [](int) { return 0.0; };
  const Comparison ch0 = run(series("CH_0", 0, 0, false, none), 0);
  bool per_order_ok = ch0.agree;
  std::string per_order_detail = ch0.agree ? "" : "CH_0 fails";
  for (int k = 1; k <= r; ++k) {
    const std::string ks = std::to_string(k);
    NormalFormSeries hom = series("CH_" + ks + "(1,3)", k, k, true, [](int) { return 1.0; });
    const Comparison c = compare_forms(hom, tol);
    if (!c.agree && per_order_ok) per_order_detail = "order " + ks + ": " + c.detail;
    per_order_ok = per_order_ok && c.agree;
    add(hom.property, k, per_order_ok ? Verdict::pass : Verdict::fail,
        per_order_ok ? "each order up to " + ks + " admits a homothety" : per_order_detail);
    rep.normal_forms.push_back(std::move(hom));

    run(series("SCH_" + ks + "(1,3)", 0, k, true, [](int j) { return 0.5 * (j + 2); }), k);
    run(series("CH_" + ks, 0, k, false, none), k);
  }

  // SCH_k(1,3) implies CH_k(1,3).
  for (int k = 1; k <= r; ++k) {
    const std::string ks = std::to_string(k);
    auto sch = std::find_if(rep.verdicts.begin(), rep.verdicts.end(),
                            [&](const VerdictEntry& v) { return v.property == "SCH_" + ks + "(1,3)"; });
    const auto* ch13 = rep.find("CH_" + ks + "(1,3)");
    if (sch->verdict == Verdict::pass && ch13->verdict != Verdict::pass) {
      sch->verdict = Verdict::fail;
      sch->detail += "; demoted because CH_" + ks + "(1,3) fails";
      rep.notes.push_back("SCH_" + ks + "(1,3) normal forms agree but CH_" + ks + "(1,3) fails; reported as fail");
    }
  }

  // Isometry invariant that separates points: evidence against local homogeneity.
  if (r >= 1) {
    const std::string name = spec.family == Family::f ? "Xi_f_normalized" : "Xi_h";
    const InvariantSeries* s = rep.invariant(name);
    if (s && s->available > 0) {
      add("not_locally_homogeneous", 1, s->constant ? Verdict::fail : Verdict::pass,
          name + (s->constant ? " is constant" : " is nonconstant") + " (spread " + format_double(s->spread) + ")");
    }
    const auto* ch1 = rep.find("CH_1");
    for (int k = 2; k <= r; ++k) {
      const auto* sch = rep.find("SCH_" + std::to_string(k) + "(1,3)");
      if (ch1 && ch1->verdict == Verdict::fail && sch->verdict == Verdict::pass) {
        rep.notes.push_back("SCH_" + std::to_string(k) +
                            "(1,3) passes on this sample while CH_1 fails; SCH_k(1,3) would contradict non-CH_1 if it "
                            "implied CH_k");
      }
    }
  }

  if (spec.family == Family::h) {
    rep.notes.push_back(
        "xi_T is read off nabla^2 R on the psi-normalized basis (h'''' h'' / (h''')^2); xi_T_printed is h'''' / "
        "(h'')^2 for comparison");
    rep.notes.push_back("Xi_h is the squared nabla R(T,X,X,T;T) entry with R(T,X,X,T) = +-1, i.e. (h'''/h'')^2");
  } else {
    rep.notes.push_back(
        "Xi_f is taken on the unit adapted basis ((Delta')^2); Xi_f_normalized uses the basis with R(T,X,X,T) = +-1");
  }
  if (!rep.exclusions.empty()) {
    rep.notes.push_back(std::to_string(rep.exclusions.size()) + " point(s) excluded by the nonvanishing hypotheses");
  }
  return rep;
}

}  // namespace curvhom
