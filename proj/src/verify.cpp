#include "curvhom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvhom/errors.hpp"

namespace curvhom {
namespace {

double scale_of(const TensorAtPoint& t) { return std::max(1.0, t.max_abs()); }

void merge(TensorComparison& into, const TensorComparison& c) {
  into.max_relative = std::max(into.max_relative, c.max_relative);
  into.max_absolute_on_zero = std::max(into.max_absolute_on_zero, c.max_absolute_on_zero);
}

void merge(IdentityResiduals& into, const IdentityResiduals& r) {
  into.antisymmetry_first_pair = std::max(into.antisymmetry_first_pair, r.antisymmetry_first_pair);
  into.antisymmetry_second_pair = std::max(into.antisymmetry_second_pair, r.antisymmetry_second_pair);
  into.pair_symmetry = std::max(into.pair_symmetry, r.pair_symmetry);
  into.first_bianchi = std::max(into.first_bianchi, r.first_bianchi);
  into.second_bianchi = std::max(into.second_bianchi, r.second_bianchi);
  into.metric_compatibility = std::max(into.metric_compatibility, r.metric_compatibility);
}

}  // namespace

TensorComparison compare_tensors(const TensorAtPoint& actual, const TensorAtPoint& expected) {
  if (actual.contravariant_rank() != expected.contravariant_rank() ||
      actual.covariant_rank() != expected.covariant_rank()) {
    throw GeometryError("compared tensors have different valence");
  }
  TensorComparison c;
  const auto a = actual.components();
  const auto e = expected.components();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - e[i]);
    if (e[i] == 0.0) {
      c.max_absolute_on_zero = std::max(c.max_absolute_on_zero, d);
    } else {
      c.max_relative = std::max(c.max_relative, d / std::abs(e[i]));
    }
  }
  return c;
}

double IdentityResiduals::max() const {
  return std::max({antisymmetry_first_pair, antisymmetry_second_pair, pair_symmetry, first_bianchi, second_bianchi,
                   metric_compatibility});
}

IdentityResiduals curvature_identity_residuals(const MetricField& g, const Point& p) {
  const auto tower = curvature_tower(g, p, 1);
  const TensorAtPoint& R = tower[0];
  const TensorAtPoint& dR = tower[1];
  const double s0 = scale_of(R);
  const double s1 = scale_of(dR);
  IdentityResiduals out;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) {
          const double v = R({a, b, c, d});
          out.antisymmetry_first_pair = std::max(out.antisymmetry_first_pair, std::abs(v + R({b, a, c, d})) / s0);
          out.antisymmetry_second_pair = std::max(out.antisymmetry_second_pair, std::abs(v + R({a, b, d, c})) / s0);
          out.pair_symmetry = std::max(out.pair_symmetry, std::abs(v - R({c, d, a, b})) / s0);
          out.first_bianchi =
              std::max(out.first_bianchi, std::abs(v + R({b, c, a, d}) + R({c, a, b, d})) / s0);
          for (int e = 0; e < 3; ++e) {
            const double cyc = dR({a, b, c, d, e}) + dR({b, e, c, d, a}) + dR({e, a, c, d, b});
            out.second_bianchi = std::max(out.second_bianchi, std::abs(cyc) / s1);
          }
        }
      }
    }
  }
  out.metric_compatibility = metric_covariant_derivative(g, p).max_abs() / scale_of(g.at(p));
  return out;
}

VerificationReport verify(const FamilySpec& spec, int r, const SampleSet& samples) {
  if (r < 0) throw std::invalid_argument("order must be nonnegative");
  if (r + 2 > kMaxJetOrder) throw std::invalid_argument("order exceeds the jet budget");
  if (samples.points.empty()) throw std::invalid_argument("sample set is empty");

  VerificationReport rep;
  rep.family = spec.family;
  rep.order = r;
  rep.points = samples.points;
  const int oracle_max = spec.family == Family::f ? r
                         : spec.family == Family::h ? std::min(r, kGhOracleMaxOrder)
                                                    : -1;
  for (int k = 0; k <= oracle_max; ++k) rep.oracle.push_back({k, {}, true});
  if (spec.family == Family::h && r > kGhOracleMaxOrder) {
    rep.notes.push_back("no closed form for g_h beyond order 2; orders 3.." + std::to_string(r) +
                        " are covered by the identity checks only");
  }
  if (spec.family == Family::custom) rep.notes.push_back("custom metric: only the curvature identities are checked");

  const MetricField g = spec.metric();
  for (const Point& p : samples.points) {
    try {
      if (oracle_max >= 0) {
        const auto tower = curvature_tower(g, p, oracle_max);
        for (int k = 0; k <= oracle_max; ++k) {
          const TensorAtPoint expected =
              spec.family == Family::f ? gf_oracle(*spec.function, p, k) : gh_oracle(*spec.function, p, k);
          merge(rep.oracle[static_cast<std::size_t>(k)].worst,
                compare_tensors(tower[static_cast<std::size_t>(k)], expected));
        }
      }
      merge(rep.identities, curvature_identity_residuals(g, p));
    } catch (const DomainError& e) {
      rep.exclusions.push_back({p, std::string("domain error: ") + e.what()});
    } catch (const GeometryError& e) {
      rep.exclusions.push_back({p, std::string("geometry error: ") + e.what()});
    }
  }
  if (rep.exclusions.size() == samples.points.size()) {
    throw HypothesisError("the metric cannot be evaluated at any sample point (" + rep.exclusions.front().reason +
                          ")");
  }
  for (auto& c : rep.oracle) {
    c.ok = c.worst.ok();
    rep.passed = rep.passed && c.ok;
  }
  rep.identities_ok = rep.identities.max() <= kIdentityTol;
  rep.passed = rep.passed && rep.identities_ok;
  return rep;
}

}  // namespace curvhom
