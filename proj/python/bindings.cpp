#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curvhom/classify.hpp"
#include "curvhom/errors.hpp"
#include "curvhom/expr.hpp"
#include "curvhom/families.hpp"
#include "curvhom/geometry.hpp"
#include "curvhom/models.hpp"
#include "curvhom/report.hpp"
#include "curvhom/verify.hpp"

namespace py = pybind11;
using namespace curvhom;

namespace {

py::array_t<double> to_numpy(const TensorAtPoint& t) {
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(t.rank()), 3);
  py::array_t<double> out(shape);
  const auto c = t.components();
  std::copy(c.begin(), c.end(), out.mutable_data());
  return out;
}

TensorAtPoint from_numpy(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  for (py::ssize_t i = 0; i < a.ndim(); ++i) {
    if (a.shape(i) != 3) throw std::invalid_argument("every axis of a tensor must have length 3");
  }
  const auto rank = static_cast<int>(a.ndim());
  return TensorAtPoint(0, rank, std::vector<double>(a.data(), a.data() + a.size()));
}

Coord coord_from(const std::string& s) {
  if (s == "t") return Coord::t;
  if (s == "x") return Coord::x;
  if (s == "y") return Coord::y;
  throw std::invalid_argument("coordinate must be 't', 'x' or 'y'");
}

SampleSet samples_from(const std::vector<std::tuple<std::string, double, double, int>>& grid) {
  std::vector<GridAxis> axes;
  for (const auto& [c, lo, hi, n] : grid) axes.push_back({coord_from(c), lo, hi, n});
  return SampleSet::grid(std::move(axes));
}

ModelSpace model_from(const py::dict& d) {
  ModelSpace m;
  m.phi = from_numpy(d["phi"].cast<py::array_t<double>>());
  for (auto a : d["A"]) m.A.push_back(from_numpy(a.cast<py::array_t<double>>()));
  m.r = static_cast<int>(m.A.size()) - 1;
  return m;
}

py::dict model_to_dict(const ModelSpace& m) {
  py::dict d;
  d["r"] = m.r;
  d["phi"] = to_numpy(m.phi);
  py::list A;
  for (const auto& a : m.A) A.append(to_numpy(a));
  d["A"] = A;
  return d;
}

py::dict iso_to_dict(const IsomorphismCheck& c) {
  py::dict d;
  d["accepted"] = c.accepted;
  d["parameters"] = c.parameters;
  d["shape_ok"] = c.shape_ok;
  d["metric_pairing_ok"] = c.metric_pairing_ok;
  d["max_deviation"] = c.max_deviation;
  d["note"] = c.note;
  return d;
}

ReportConfig config_for(const std::string& command, const FamilySpec& spec, int order, double tol,
                        const SampleSet& s) {
  ReportConfig rc;
  rc.command = command;
  rc.family = family_name(spec.family);
  if (spec.function) rc.function = to_string(*spec.function);
  rc.order = order;
  rc.tolerance = tol;
  rc.grid = s.axes;
  return rc;
}

}  // namespace

PYBIND11_MODULE(_curvhom, m) {
  m.doc() = "Curvature tensors, model spaces and homogeneity verdicts for Lorentzian 3-metrics.";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error").ptr());
  py::register_exception<DomainError>(m, "DomainError", m.attr("Error").ptr());
  py::register_exception<GeometryError>(m, "GeometryError", m.attr("Error").ptr());
  py::register_exception<FamilyError>(m, "FamilyError", m.attr("Error").ptr());
  py::register_exception<ModelError>(m, "ModelError", m.attr("Error").ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", m.attr("Error").ptr());

  py::class_<Expr>(m, "Expr")
      .def("__str__", [](const Expr& e) { return to_string(e); })
      .def("__repr__", [](const Expr& e) { return "Expr('" + to_string(e) + "')"; })
      .def("__eq__", [](const Expr& a, const Expr& b) { return a == b; })
      .def("eval", &eval, py::arg("point"))
      .def(
          "partials",
          [](const Expr& e, const Point& p, int order) {
            const Jet j = eval_jet(e, p, order);
            py::dict out;
            for (std::size_t i = 0; i < jet_size(order); ++i) {
              const MultiIndex mi = jet_multi_index(i);
              out[py::make_tuple(mi.t, mi.x, mi.y)] = j.partial(mi);
            }
            return out;
          },
          py::arg("point"), py::arg("order"), "All partial derivatives keyed by (nt, nx, ny).");

  m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));

  py::class_<FamilySpec>(m, "Family")
      .def_property_readonly("name", [](const FamilySpec& s) { return family_name(s.family); })
      .def_property_readonly("function", [](const FamilySpec& s) { return s.function; });
  m.def("f_family", [](const std::string& f) { return FamilySpec::f_family(parse(f)); }, py::arg("f"),
        "Metric g_f with g(dt,dt) = e^{2f(x)}, g(dx,dy) = 1.");
  m.def("h_family", [](const std::string& h) { return FamilySpec::h_family(parse(h)); }, py::arg("h"),
        "Metric g_h with g(dt,dt) = g(dx,dy) = 1, g(dx,dx) = -2h(t).");
  m.def(
      "custom_metric",
      [](const std::vector<std::string>& c) {
        if (c.size() != 6) throw std::invalid_argument("custom metric needs tt, tx, ty, xx, xy, yy");
        return FamilySpec::custom_metric(
            MetricField(parse(c[0]), parse(c[1]), parse(c[2]), parse(c[3]), parse(c[4]), parse(c[5])));
      },
      py::arg("components"));

  m.def("metric_at", [](const FamilySpec& s, const Point& p) { return to_numpy(s.metric().at(p)); });
  m.def(
      "christoffel",
      [](const FamilySpec& s, const Point& p) {
        const ConnectionJet g = christoffel(s.metric(), p, 0);
        py::array_t<double> out({3, 3, 3});
        auto v = out.mutable_unchecked<3>();
        for (int k = 0; k < 3; ++k)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v(k, i, j) = g.value(k, i, j);
        return out;
      },
      "Gamma^k_ij at p as an array indexed [k, i, j].");
  m.def(
      "curvature_tower",
      [](const FamilySpec& s, const Point& p, int k) {
        py::list out;
        for (const auto& t : curvature_tower(s.metric(), p, k)) out.append(to_numpy(t));
        return out;
      },
      py::arg("family"), py::arg("point"), py::arg("k"), "[R, nabla R, ..., nabla^k R] on the coordinate frame.");
  m.def(
      "nabla_k_riemann",
      [](const FamilySpec& s, const Point& p, int k) { return to_numpy(nabla_k_riemann(s.metric(), p, k)); },
      py::arg("family"), py::arg("point"), py::arg("k"));
  m.def(
      "closed_form",
      [](const FamilySpec& s, const Point& p, int k) {
        if (s.family == Family::f) return to_numpy(gf_oracle(*s.function, p, k));
        if (s.family == Family::h) return to_numpy(gh_oracle(*s.function, p, k));
        throw std::invalid_argument("custom metrics have no closed form");
      },
      py::arg("family"), py::arg("point"), py::arg("k"), "Closed-form nabla^k R of a built-in family.");
  m.def(
      "identity_residuals",
      [](const FamilySpec& s, const Point& p) {
        const auto r = curvature_identity_residuals(s.metric(), p);
        py::dict d;
        d["antisymmetry_first_pair"] = r.antisymmetry_first_pair;
        d["antisymmetry_second_pair"] = r.antisymmetry_second_pair;
        d["pair_symmetry"] = r.pair_symmetry;
        d["first_bianchi"] = r.first_bianchi;
        d["second_bianchi"] = r.second_bianchi;
        d["metric_compatibility"] = r.metric_compatibility;
        return d;
      },
      py::arg("family"), py::arg("point"));

  m.def(
      "adapted_basis",
      [](const FamilySpec& s, const Point& p, double lambda) -> Eigen::Matrix3d {
        if (s.family == Family::f) return adapted_basis_gf(*s.function, p, lambda).matrix();
        if (s.family == Family::h) return adapted_basis_gh(*s.function, p, lambda).matrix();
        throw std::invalid_argument("custom metrics have no adapted basis");
      },
      py::arg("family"), py::arg("point"), py::arg("lam") = 1.0, "Frame columns T, X, Y.");
  m.def(
      "build_model",
      [](const FamilySpec& s, const Point& p, int r, const Eigen::Matrix3d& frame) {
        return model_to_dict(build_model(s.metric(), p, r, Frame(frame)));
      },
      py::arg("family"), py::arg("point"), py::arg("r"), py::arg("frame"));
  m.def("canonical_curvature_model", [](double e0) { return model_to_dict(canonical_curvature_model(e0)); });
  m.def("canonical_first_derivative_model",
        [](double e0, double e1) { return model_to_dict(canonical_first_derivative_model(e0, e1)); });
  m.def(
      "check_curvature_isomorphism",
      [](const Eigen::Matrix3d& F, const py::dict& model) {
        return iso_to_dict(check_curvature_isomorphism(Frame(F), model_from(model)));
      },
      py::arg("frame"), py::arg("model"));
  m.def(
      "check_first_derivative_isomorphism",
      [](const Eigen::Matrix3d& F, const py::dict& model) {
        return iso_to_dict(check_first_derivative_isomorphism(Frame(F), model_from(model)));
      },
      py::arg("frame"), py::arg("model"));
  m.def(
      "find_isomorphism",
      [](const py::dict& m1, const py::dict& m2) -> std::optional<Eigen::Matrix3d> {
        const auto f = find_isomorphism(model_from(m1), model_from(m2));
        if (!f) return std::nullopt;
        return f->matrix();
      },
      py::arg("m1"), py::arg("m2"), "Frame F with F^* m2 = m1, or None.");

  m.def("invariant_Xi_f", [](const std::string& f, const Point& p) { return invariant_Xi_f(parse(f), p); });
  m.def("invariant_Xi_f_normalized",
        [](const std::string& f, const Point& p) { return invariant_Xi_f_normalized(parse(f), p); });
  m.def("invariant_ratio_f", [](const std::string& f, const Point& p) { return invariant_ratio_f(parse(f), p); });
  m.def("scaling_constant_f",
        [](const std::string& f, const Point& p, int k) { return scaling_constant_f(parse(f), p, k); });
  m.def("invariant_Xi_h", [](const std::string& h, const Point& p) { return invariant_Xi_h(parse(h), p); });
  m.def("invariants_xi_TX", [](const std::string& h, const Point& p) {
    const XiTX r = invariants_xi_TX(parse(h), p);
    py::dict d;
    d["xi_T"] = r.xi_T;
    d["xi_X"] = r.xi_X;
    d["xi_T_printed"] = r.xi_T_printed;
    d["psi"] = r.psi;
    d["lambda_squared"] = r.lambda_squared;
    return d;
  });

  m.def(
      "classify_json",
      [](const FamilySpec& s, int r, const std::vector<std::tuple<std::string, double, double, int>>& grid,
         double tol) {
        const SampleSet samples = samples_from(grid);
        ClassifyOptions opt;
        opt.tolerance = tol;
        py::gil_scoped_release release;
        return classify_json(config_for("classify", s, r, tol, samples), classify(s, r, samples, opt));
      },
      py::arg("family"), py::arg("r"), py::arg("grid"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "verify_json",
      [](const FamilySpec& s, int r, const std::vector<std::tuple<std::string, double, double, int>>& grid) {
        const SampleSet samples = samples_from(grid);
        py::gil_scoped_release release;
        return verify_json(config_for("verify", s, r, kDefaultTolerance, samples), verify(s, r, samples));
      },
      py::arg("family"), py::arg("r"), py::arg("grid"));

  m.attr("__version__") = tool_version();
}
