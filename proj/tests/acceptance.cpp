// Acceptance run: `acceptance N` checks criterion N (1..8) and prints one
// PASS/FAIL line; with no argument every criterion runs in turn.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvhom/classify.hpp"
#include "curvhom/errors.hpp"
#include "curvhom/families.hpp"
#include "curvhom/geometry.hpp"
#include "curvhom/models.hpp"
#include "curvhom/verify.hpp"
#include "support.hpp"

using namespace curvhom;

namespace {

constexpr int T = 0, X = 1, Y = 2;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failed;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failed += (failed.empty() ? "" : "; ") + what;
    }
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SampleSet axis(Coord c, double lo, double hi, int n) { return SampleSet::grid({GridAxis{c, lo, hi, n}}); }

const char* const kFs[] = {"x", "x^2", "exp(x)", "x^3 - x"};
const char* const kHs[] = {"t^2", "t^3", "exp(t)", "t^5"};

void oracle_equivalence(Outcome& o, bool f_family, int max_order, double budget) {
  const Stopwatch clock;
  const SampleSet grid = f_family ? axis(Coord::x, 0.1, 1, 9) : axis(Coord::t, 1, 2, 9);
  TensorComparison worst;
  for (const char* fn : f_family ? kFs : kHs) {
    const Expr e = parse(fn);
    const MetricField g = f_family ? gf_metric(e) : gh_metric(e);
    for (const Point& p : grid.points) {
      const auto tower = curvature_tower(g, p, max_order);
      for (int k = 0; k <= max_order; ++k) {
        const TensorAtPoint expected = f_family ? gf_oracle(e, p, k) : gh_oracle(e, p, k);
        const TensorComparison c = compare_tensors(tower[static_cast<std::size_t>(k)], expected);
        worst.max_relative = std::max(worst.max_relative, c.max_relative);
        worst.max_absolute_on_zero = std::max(worst.max_absolute_on_zero, c.max_absolute_on_zero);
        if (!c.ok()) o.require(false, std::string(fn) + " k=" + std::to_string(k));
      }
    }
  }
  const double s = clock.seconds();
  o.require(worst.ok(), "tolerance");
  o.require(s < budget, "runtime");
  o.detail << "max relative " << worst.max_relative << ", max |zero entry| " << worst.max_absolute_on_zero
           << ", " << s << " s (budget " << budget << " s)";
}

void criterion1(Outcome& o) { oracle_equivalence(o, true, 5, 5.0); }
void criterion2(Outcome& o) { oracle_equivalence(o, false, 2, 2.0); }

void criterion3(Outcome& o) {
  double worst = 0.0;
  int metrics = 0;
  auto check = [&](const MetricField& g, const Point& p) {
    worst = std::max(worst, curvature_identity_residuals(g, p).max());
  };
  for (const char* f : kFs) {
    for (const Point& p : axis(Coord::x, 0.1, 1, 9).points) check(gf_metric(parse(f)), p);
    ++metrics;
  }
  for (const char* h : kHs) {
    for (const Point& p : axis(Coord::t, 1, 2, 9).points) check(gh_metric(parse(h)), p);
    ++metrics;
  }
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int i = 0; i < 20; ++i) {
    const MetricField g = testing::random_polynomial_metric(rng);
    for (int j = 0; j < 3; ++j) check(g, {u(rng), u(rng), u(rng)});
    ++metrics;
  }
  o.require(worst <= 1e-8, "residual");
  o.detail << metrics << " metrics, worst identity residual " << worst;
}

void criterion4(Outcome& o) {
  double worst = 0.0;
  int points = 0, excluded = 0;
  for (const char* fn : kFs) {
    const Expr f = parse(fn);
    for (const Point& p : axis(Coord::x, 0.1, 1, 9).points) {
      const double delta = delta_derivative(f, p, 0);
      if (std::abs(delta) < kHypothesisFloor) {
        ++excluded;
        continue;
      }
      const ModelSpace m = build_model(gf_metric(f), p, 0, adapted_basis_gf(f, p, 1 / std::sqrt(std::abs(delta))));
      worst = std::max(worst, std::abs(std::abs(m.A[0]({T, X, X, T})) - 1));
      ++points;
    }
  }
  for (const char* hn : kHs) {
    const Expr h = parse(hn);
    for (const Point& p : axis(Coord::t, 1, 2, 9).points) {
      const double h2 = h_derivatives(h, p).h2;
      if (std::abs(h2) < kHypothesisFloor) {
        ++excluded;
        continue;
      }
      const ModelSpace m = build_model(gh_metric(h), p, 0, adapted_basis_gh(h, p, 1 / std::sqrt(std::abs(h2))));
      worst = std::max(worst, std::abs(std::abs(m.A[0]({T, X, X, T})) - 1));
      ++points;
    }
  }
  o.require(worst <= 1e-10, "normalization");
  o.detail << points << " points (" << excluded << " excluded), worst ||A_0(T,X,X,T)| - 1| " << worst;
}

void criterion5(Outcome& o) {
  const Stopwatch clock;
  const HomogeneityReport r = classify(FamilySpec::f_family(parse("exp(x)")), 5, axis(Coord::x, 0, 1, 11));
  for (int k = 1; k <= 5; ++k) {
    const std::string name = "CH_" + std::to_string(k) + "(1,3)";
    const VerdictEntry* v = r.find(name);
    o.require(v && v->verdict == Verdict::pass, name + " pass");
  }
  const VerdictEntry* sch1 = r.find("SCH_1(1,3)");
  o.require(sch1 && sch1->verdict == Verdict::fail, "SCH_1(1,3) fail");

  const InvariantSeries* xi = r.invariant("Xi_f");
  const InvariantSeries* ratio = r.invariant("ratio_f");
  o.require(xi && xi->spread > 0.5, "Xi spread > 0.5");
  o.require(ratio && ratio->spread > 0.2, "ratio spread > 0.2");

  // Endpoint oracle: Delta' = e^x + 2 e^{2x}.
  const Expr f = parse("exp(x)");
  const double e = std::exp(1.0);
  const double at0 = invariant_Xi_f(f, {0, 0, 0});
  const double at1 = invariant_Xi_f(f, {0, 1, 0});
  const double closed1 = (e + 2 * e * e) * (e + 2 * e * e);
  o.require(testing::rel_err(at0, 9) < 1e-10, "Xi(0) = 9");
  o.require(testing::rel_err(at1, closed1) < 1e-10, "Xi(1) = (e + 2e^2)^2");
  const double s = clock.seconds();
  o.require(s < 5.0, "runtime");
  o.detail << "CH_1..5(1,3) pass, SCH_1 " << (sch1 ? verdict_name(sch1->verdict) : "?") << ", Xi(0) = " << at0
           << ", Xi(1) = " << at1 << " (closed form " << closed1 << "; criterion text quotes ~309.9)"
           << ", Xi spread " << (xi ? xi->spread : 0) << ", ratio spread " << (ratio ? ratio->spread : 0) << ", " << s
           << " s";
}

void criterion6(Outcome& o) {
  const Stopwatch clock;
  const Expr h = parse("t^3");
  const SampleSet grid = axis(Coord::t, 1, 2, 9);
  const HomogeneityReport r = classify(FamilySpec::h_family(h), 2, grid);
  const VerdictEntry* sch1 = r.find("SCH_1(1,3)");
  o.require(sch1 && sch1->verdict == Verdict::pass, "SCH_1(1,3) pass");

  double psi_residual = 0.0;
  for (const Point& p : grid.points) {
    const PsiIdentity id = psi_identity(h, p);
    psi_residual = std::max({psi_residual, id.curvature_residual, id.derivative_residual});
  }
  o.require(psi_residual <= 1e-10, "psi identities");

  const double xi1 = invariant_Xi_h(h, {1, 0, 0});
  const double xi2 = invariant_Xi_h(h, {2, 0, 0});
  const InvariantSeries* xi = r.invariant("Xi_h");
  o.require(std::abs(xi1 - 1) < 1e-12 && std::abs(xi2 - 0.25) < 1e-12, "Xi(1) = 1, Xi(2) = 0.25");
  o.require(xi && !xi->constant, "Xi nonconstant");

  const InvariantSeries* xiX = r.invariant("xi_X");
  double off = 0.0;
  for (const auto& v : xiX->values)
    if (v) off = std::max(off, std::abs(*v - 0.5));
  o.require(xiX->constant, "xi_X constant");
  o.require(off <= 1e-9, "xi_X = 0.5");
  const double s = clock.seconds();
  o.require(s < 2.0, "runtime");
  o.detail << "SCH_1 " << (sch1 ? verdict_name(sch1->verdict) : "?") << ", psi residual " << psi_residual
           << ", Xi(1) = " << xi1 << ", Xi(2) = " << xi2 << ", xi_X in [" << xiX->min << ", " << xiX->max
           << "] (target 0.5; the intrinsic value is -h'h'''/(h'')^2), " << s << " s";
}

void criterion7(Outcome& o) {
  const HomogeneityReport r = classify(FamilySpec::h_family(parse("exp(t)")), 3, axis(Coord::t, 0, 1, 11));
  int checked = 0, skipped = 0;
  double worst = 0.0;
  for (const auto& s : r.invariants) {
    if (!s.isometry_invariant) {
      ++skipped;
      continue;
    }
    ++checked;
    const double rel = (s.max - s.min) / std::max(std::abs(s.max), 1e-300);
    worst = std::max(worst, s.max == s.min ? 0.0 : rel);
    o.require(s.available > 0 && (s.max - s.min) <= 1e-9 * std::max(1.0, std::abs(s.max)), s.name + " constant");
  }

  // Delta = 4/x^2 from f = m log x with m^2 - m = 4; c_k = 4 (-1)^k (k+1)! / 2^{k+2}.
  const double m = (1 + std::sqrt(17.0)) / 2;
  std::ostringstream fn;
  fn.precision(17);
  fn << m << "*log(x)";
  const Expr f = parse(fn.str());
  const double expected[] = {1, -1, 1.5, -3};
  double cbar_dev = 0.0;
  for (int k = 0; k <= 3; ++k) {
    for (const Point& p : axis(Coord::x, 0.2, 3, 15).points) {
      cbar_dev = std::max(cbar_dev, std::abs(scaling_constant_f(f, p, k) - expected[k]) / std::abs(expected[k]));
    }
  }
  o.require(cbar_dev <= 1e-8, "cbar_k point-independent");
  o.detail << checked << " isometry invariants of h = e^t constant (worst relative spread " << worst << "; "
           << skipped << " frame-dependent series not tested), cbar_0..3 = 1, -1, 1.5, -3 within " << cbar_dev;
}

void criterion8(Outcome& o) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_real_distribution<double> bump(0.01, 1.0);
  auto frame = [](const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
    Eigen::Matrix3d m;
    m << a, b, c;
    return Frame(m);
  };
  int wrong0 = 0, wrong1 = 0;
  const ModelSpace m0 = canonical_curvature_model(1.0);
  const ModelSpace m1 = canonical_first_derivative_model(-1.0, 0.8);
  for (int i = 0; i < 1000; ++i) {
    const double a1 = rng() % 2 ? 1 : -1, a4 = rng() % 2 ? 1 : -1, a3 = u(rng);
    Eigen::Matrix3d good;
    good << a1, a3, 0, 0, a4, 0, -a1 * a3 * a4, -a3 * a3 / (2 * a4), 1 / a4;
    wrong0 += !check_curvature_isomorphism(Frame(good), m0).accepted;
    Eigen::Matrix3d bad = good;
    bad(static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)) += (rng() % 2 ? 1 : -1) * bump(rng);
    wrong0 += check_curvature_isomorphism(Frame(bad), m0).accepted;

    const double s = rng() % 2 ? 1 : -1;
    wrong1 += !check_first_derivative_isomorphism(frame({1, 0, 0}, {0, s, 0}, {0, 0, s}), m1).accepted;
    Eigen::Matrix3d b1;
    b1 << 1, 0, 0, 0, s, 0, 0, 0, s;
    switch (rng() % 4) {
      case 0: b1(Y, 0) += bump(rng); break;
      case 1: b1(Y, 1) += bump(rng); break;
      case 2: b1(Y, 2) *= 1 + bump(rng); break;
      default: b1(T, 0) = -1; break;
    }
    wrong1 += check_first_derivative_isomorphism(Frame(b1), m1).accepted;
  }
  o.require(wrong0 == 0 && wrong1 == 0, "misclassifications");
  o.detail << "curvature group: " << wrong0 << " misclassified of 2000; first-derivative group: " << wrong1
           << " misclassified of 2000";
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> kCriteria = {
    {"closed-form equivalence, g_f, k <= 5", criterion1},
    {"closed-form equivalence, g_h, k <= 2", criterion2},
    {"curvature identity suite", criterion3},
    {"CH_0 normalization", criterion4},
    {"f = e^x: CH_k(1,3) for k <= 5, Xi nonconstant, SCH_1 fails", criterion5},
    {"h = t^3: SCH_1, psi identities, Xi = 1/t^2, xi_X = 0.5", criterion6},
    {"homogeneous controls: h = e^t and Delta = 4/x^2", criterion7},
    {"isomorphism-group property tests", criterion8},
};

bool run(std::size_t i) {
  Outcome o;
  try {
    kCriteria[i].second(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  std::printf("criterion %zu %s: %s: %s%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", kCriteria[i].first.c_str(),
              o.detail.str().c_str(), o.failed.empty() ? "" : " | unmet: ", o.failed.c_str());
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", kCriteria.size());
      return 2;
    }
    return run(static_cast<std::size_t>(n - 1)) ? 0 : 1;
  }
  bool all = true;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) all = run(i) && all;
  return all ? 0 : 1;
}
