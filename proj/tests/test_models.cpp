#include <doctest.h>

#include <cmath>
#include <random>

#include "curvhom/errors.hpp"
#include "curvhom/families.hpp"
#include "curvhom/models.hpp"
#include "support.hpp"

using namespace curvhom;

namespace {

constexpr int T = 0, X = 1, Y = 2;

Eigen::Matrix3d columns(const Eigen::Vector3d& ft, const Eigen::Vector3d& fx, const Eigen::Vector3d& fy) {
  Eigen::Matrix3d m;
  m.col(0) = ft;
  m.col(1) = fx;
  m.col(2) = fy;
  return m;
}

// Element of the group fixing (phi, A_0): a1, a4 = +-1, a3 free.
Eigen::Matrix3d curvature_group_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const double a1 = rng() % 2 ? 1.0 : -1.0;
  const double a4 = rng() % 2 ? 1.0 : -1.0;
  const double a3 = u(rng);
  const double a2 = -a1 * a3 * a4;
  const double a5 = -a3 * a3 / (2 * a4);
  const double a6 = 1 / a4;
  return columns({a1, 0, a2}, {a3, a4, a5}, {0, 0, a6});
}

Eigen::Matrix3d perturb_one_entry(std::mt19937_64& rng, Eigen::Matrix3d m) {
  std::uniform_real_distribution<double> size(0.01, 1.0);
  const int i = static_cast<int>(rng() % 3);
  const int j = static_cast<int>(rng() % 3);
  m(i, j) += (rng() % 2 ? 1 : -1) * size(rng);
  return m;
}

}  // namespace

TEST_CASE("adapted bases put the metric in canonical form") {
  const Expr f = parse("x^2");
  const Point p{0.2, 1, 0.3};
  const TensorAtPoint phi = canonical_inner_product();
  for (double lambda : {1.0, 0.3, 2.5}) {
    const TensorAtPoint g = pullback(gf_metric(f).at(p), adapted_basis_gf(f, p, lambda));
    CHECK((g - phi).max_abs() < 1e-12);
  }
  const Expr h = parse("t^3");
  const TensorAtPoint gh = pullback(gh_metric(h).at({1.3, 0, 0}), adapted_basis_gh(h, {1.3, 0, 0}, 0.7));
  CHECK((gh - phi).max_abs() < 1e-12);

  CHECK((adapted_basis_gf(parse("0"), p, 1.0).matrix() - Eigen::Matrix3d::Identity()).norm() == 0.0);
  CHECK_THROWS_AS(adapted_basis_gf(f, p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(adapted_basis_gh(h, p, -1.0), std::invalid_argument);
}

TEST_CASE("curvature on the adapted bases") {
  const Expr f = parse("x^2");
  const Point p{0, 1, 0};
  const ModelSpace m = build_model(gf_metric(f), p, 0, adapted_basis_gf(f, p, 1 / std::sqrt(6.0)));
  CHECK(m.A[0]({T, X, X, T}) == doctest::Approx(-1).epsilon(1e-12));

  const Expr h = parse("t^3");
  const Point q{1, 0, 0};
  const ModelSpace u = build_model(gh_metric(h), q, 1, adapted_basis_gh(h, q, 1.0));
  CHECK(u.A[0]({T, X, X, T}) == doctest::Approx(6));
  CHECK(u.A[1]({T, X, X, T, T}) == doctest::Approx(6));
  const ModelSpace n = build_model(gh_metric(h), q, 0, adapted_basis_gh(h, q, 1 / std::sqrt(6.0)));
  CHECK(n.A[0]({T, X, X, T}) == doctest::Approx(1));

  const ModelSpace flat = build_model(gh_metric(parse("0")), q, 2, adapted_basis_gh(parse("0"), q, 1.0));
  for (const auto& a : flat.A) CHECK(a.max_abs() == 0.0);
}

TEST_CASE("psi scaling of g_h models") {
  // lambda^2 = (h''')^2 / (h'')^3 gives entries (psi, psi^{3/2}) with psi = (h'''/h'')^2.
  const Expr h = parse("t^3");
  for (double s : {1.0, 1.4, 2.0}) {
    const Point p{s, 0, 0};
    const double h2 = 6 * s, h3 = 6;
    const double psi = (h3 / h2) * (h3 / h2);
    const double lambda = std::sqrt(h3 * h3 / (h2 * h2 * h2));
    const ModelSpace m = build_model(gh_metric(h), p, 2, adapted_basis_gh(h, p, lambda));
    CHECK(m.A[0]({T, X, X, T}) == doctest::Approx(psi).epsilon(1e-12));
    CHECK(m.A[1]({T, X, X, T, T}) == doctest::Approx(std::pow(psi, 1.5)).epsilon(1e-12));
  }
}

TEST_CASE("CH_0 models of g_f are canonical with eps = +-1") {
  for (const char* fs : {"exp(x)", "x^2", "3*log(x)", "-x^2/4"}) {
    const Expr f = parse(fs);
    for (double x : {0.2, 0.5, 0.9}) {
      const Point p{0, x, 0};
      const double delta = delta_derivative(f, p, 0);
      const ModelSpace m = build_model(gf_metric(f), p, 0, adapted_basis_gf(f, p, 1 / std::sqrt(std::abs(delta))));
      INFO(fs << " at x=" << x);
      CHECK(std::abs(std::abs(m.A[0]({T, X, X, T})) - 1) <= 1e-10);
      CHECK(is_structured(m));
      const double eps = m.A[0]({T, X, X, T});
      CHECK(pullback_deviation(Frame::identity(), canonical_curvature_model(eps), m) < 1e-10);
    }
  }
}

TEST_CASE("curvature isomorphism examples") {
  const ModelSpace m = canonical_curvature_model(1.0);
  const IsomorphismCheck id = check_curvature_isomorphism(Frame::identity(), m);
  CHECK(id.accepted);
  CHECK(id.shape_ok);
  REQUIRE(id.parameters.size() == 6);
  CHECK(id.parameters[0] == 1.0);
  CHECK(id.parameters[3] == 1.0);
  CHECK(id.parameters[5] == 1.0);
  CHECK(id.parameters[1] == 0.0);
  CHECK(id.parameters[2] == 0.0);
  CHECK(id.parameters[4] == 0.0);

  const IsomorphismCheck flip = check_curvature_isomorphism(Frame::diagonal(-1, 1, 1), m);
  CHECK(flip.accepted);
  CHECK(flip.parameters[0] == -1.0);

  const IsomorphismCheck swap = check_curvature_isomorphism(Frame(columns({1, 0, 0}, {0, 0, 1}, {0, 1, 0})), m);
  CHECK_FALSE(swap.accepted);

  CHECK_THROWS_AS(check_curvature_isomorphism(Frame::identity(), canonical_first_derivative_model(1, 1)),
                  ModelError);
}

TEST_CASE("first-derivative isomorphism examples") {
  const ModelSpace m = canonical_first_derivative_model(1.0, 2.0);
  CHECK(check_first_derivative_isomorphism(Frame::identity(), m).accepted);
  CHECK_FALSE(check_first_derivative_isomorphism(Frame::diagonal(-1, 1, 1), m).accepted);
  CHECK(check_first_derivative_isomorphism(Frame::diagonal(1, -1, -1), m).accepted);
  // FX = X + 5Y is not null: phi(FX, FX) = 10, so the frame is not an isometry.
  const IsomorphismCheck shear = check_first_derivative_isomorphism(Frame(columns({1, 0, 0}, {0, 1, 5}, {0, 0, 1})), m);
  CHECK_FALSE(shear.accepted);
  CHECK(shear.shape_ok);
  CHECK_THROWS_AS(check_first_derivative_isomorphism(Frame::identity(), canonical_curvature_model(1.0)), ModelError);
}

TEST_CASE("random frames against the curvature group") {
  std::mt19937_64 rng(99);
  const ModelSpace m = canonical_curvature_model(-1.0);
  int wrong = 0;
  for (int i = 0; i < 1000; ++i) {
    wrong += !check_curvature_isomorphism(Frame(curvature_group_element(rng)), m).accepted;
    wrong += check_curvature_isomorphism(Frame(perturb_one_entry(rng, curvature_group_element(rng))), m).accepted;
  }
  CHECK(wrong == 0);
}

TEST_CASE("random frames against the first-derivative group") {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  const ModelSpace m = canonical_first_derivative_model(1.0, -0.7);
  int wrong = 0;
  for (int i = 0; i < 1000; ++i) {
    const double s = rng() % 2 ? 1.0 : -1.0;
    const Eigen::Matrix3d good = columns({1, 0, 0}, {0, s, 0}, {0, 0, s});
    wrong += !check_first_derivative_isomorphism(Frame(good), m).accepted;
    Eigen::Matrix3d bad = good;
    switch (rng() % 3) {
      case 0: bad(Y, 0) += u(rng); break;  // b1
      case 1: bad(Y, 1) += u(rng); break;  // b3
      default: bad(Y, 2) *= 1 + u(rng);    // b2 b4 != 1
    }
    wrong += check_first_derivative_isomorphism(Frame(bad), m).accepted;
  }
  CHECK(wrong == 0);
}

TEST_CASE("accepted frames compose") {
  std::mt19937_64 rng(7);
  const ModelSpace m = canonical_curvature_model(1.0);
  for (int i = 0; i < 200; ++i) {
    const Frame a(curvature_group_element(rng));
    const Frame b(curvature_group_element(rng));
    const IsomorphismCheck c = check_curvature_isomorphism(a * b, m);
    CHECK(c.accepted);
    CHECK(c.max_deviation <= 1e-9);
  }
}

TEST_CASE("structured entries of the families") {
  const Expr f = parse("exp(x)");
  const Point p{0, 0.5, 0};
  const ModelSpace m = build_model(gf_metric(f), p, 3, adapted_basis_gf(f, p, 1.0));
  REQUIRE(is_structured(m));
  const auto entries = structured_entries(m);
  CHECK(entries.size() == 1 + 2 + 4 + 8);
  CHECK(entries[0].word.empty());
  CHECK(entries[1].word == "T");
  CHECK(entries[2].word == "X");
  CHECK(entries[2].t_count() == 2);
  CHECK(entries[2].x_count() == 3);
  CHECK(entries[2].value == doctest::Approx(-delta_derivative(f, p, 1)));

  ModelSpace broken = m;
  broken.A[0]({T, Y, Y, T}) = 1;
  CHECK_FALSE(is_structured(broken));
  CHECK_THROWS_AS(structured_entries(broken), ModelError);
}

TEST_CASE("isomorphism search") {
  const ModelSpace a = canonical_first_derivative_model(1, 2);
  const auto same = find_isomorphism(a, a);
  REQUIRE(same.has_value());
  CHECK((same->matrix() - Eigen::Matrix3d::Identity()).norm() < 1e-12);

  CHECK_FALSE(find_isomorphism(canonical_curvature_model(1), canonical_curvature_model(-1)).has_value());

  // g_f points with equal (Delta')^2 / |Delta|^3 are isomorphic at order 1:
  // Delta = 4/x^2 (f = 2 log x) has a constant ratio.
  const Expr f = parse("2*log(x)");
  auto model = [&](const Expr& fn, double x) {
    const Point p{0, x, 0};
    return build_model(gf_metric(fn), p, 1, adapted_basis_gf(fn, p, 1.0));
  };
  const ModelSpace m1 = model(f, 0.5), m2 = model(f, 1.5);
  const auto iso = find_isomorphism(m1, m2);
  REQUIRE(iso.has_value());
  CHECK(pullback_deviation(*iso, m2, m1) <= 1e-8);

  const Expr g = parse("exp(x)");
  CHECK_FALSE(find_isomorphism(model(g, 0.1), model(g, 0.9)).has_value());
}
