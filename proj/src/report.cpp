#include "curvhom/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#ifndef CURVHOM_VERSION
#define CURVHOM_VERSION "0.0.0"
#endif

namespace curvhom {
namespace {

using json = nlohmann::ordered_json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json point_json(const Point& p) { return json::array({p[0], p[1], p[2]}); }

json config_json(const ReportConfig& c) {
  json j;
  j["command"] = c.command;
  j["family"] = c.family;
  if (!c.function.empty()) j["function"] = c.function;
  if (!c.metric.empty()) j["metric"] = c.metric;
  j["order"] = c.order;
  j["tolerance"] = c.tolerance;
  json grid = json::array();
  for (const auto& a : c.grid) {
    grid.push_back({{"coord", std::string(coordinate_name(a.coord))}, {"min", a.min}, {"max", a.max}, {"count", a.count}});
  }
  j["grid"] = std::move(grid);
  return j;
}

json exclusions_json(const std::vector<Exclusion>& ex) {
  json out = json::array();
  for (const auto& e : ex) out.push_back({{"point", point_json(e.point)}, {"reason", e.reason}});
  return out;
}

json series_json(const InvariantSeries& s) {
  json values = json::array();
  for (const auto& v : s.values) values.push_back(v ? number(*v) : json(nullptr));
  json j;
  j["name"] = s.name;
  j["isometry_invariant"] = s.isometry_invariant;
  j["available"] = s.available;
  j["min"] = number(s.min);
  j["max"] = number(s.max);
  j["spread"] = number(s.spread);
  j["constant"] = s.constant;
  j["values"] = std::move(values);
  return j;
}

json notes_json(const std::vector<std::string>& notes) {
  json out = json::array();
  for (const auto& n : notes) out.push_back(n);
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string point_text(const Point& p) { return "(" + fmt(p[0]) + ", " + fmt(p[1]) + ", " + fmt(p[2]) + ")"; }

void config_text(std::ostringstream& os, const ReportConfig& c) {
  os << "command: " << c.command << "\nfamily: " << c.family;
  if (!c.function.empty()) os << "\nfunction: " << c.function;
  if (!c.metric.empty()) os << "\nmetric: " << c.metric;
  os << "\norder: " << c.order << "\ntolerance: " << fmt(c.tolerance) << "\n";
}

void exclusions_text(std::ostringstream& os, const std::vector<Exclusion>& ex) {
  if (ex.empty()) return;
  os << "excluded points:\n";
  for (const auto& e : ex) os << "  " << point_text(e.point) << "  " << e.reason << "\n";
}

}  // namespace

std::string tool_version() { return CURVHOM_VERSION; }

std::string classify_json(const ReportConfig& config, const HomogeneityReport& report) {
  json j;
  j["config"] = config_json(config);
  json verdicts = json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back(
        {{"property", v.property}, {"order", v.order}, {"verdict", verdict_name(v.verdict)}, {"detail", v.detail}});
  }
  j["verdicts"] = std::move(verdicts);
  json inv = json::array();
  for (const auto& s : report.invariants) inv.push_back(series_json(s));
  j["invariants"] = std::move(inv);
  j["exclusions"] = exclusions_json(report.exclusions);
  json pts = json::array();
  for (const auto& p : report.points) pts.push_back(point_json(p));
  j["points"] = std::move(pts);
  json forms = json::array();
  for (const auto& f : report.normal_forms) {
    json rows = json::array();
    for (const auto& r : f.rows) {
      json row = json::array();
      for (double v : r) row.push_back(number(v));
      rows.push_back(std::move(row));
    }
    forms.push_back({{"property", f.property}, {"labels", f.labels}, {"rows", std::move(rows)}});
  }
  j["normal_forms"] = std::move(forms);
  j["degenerate"] = report.degenerate;
  j["notes"] = notes_json(report.notes);
  j["tool_version"] = tool_version();
  return j.dump(2) + "\n";
}

std::string verify_json(const ReportConfig& config, const VerificationReport& report) {
  json j;
  j["config"] = config_json(config);
  json verdicts = json::array();
  for (const auto& c : report.oracle) {
    verdicts.push_back({{"property", "closed_form_match"},
                        {"order", c.order},
                        {"verdict", c.ok ? "pass" : "fail"},
                        {"max_relative_error", number(c.worst.max_relative)},
                        {"max_absolute_error_on_zero", number(c.worst.max_absolute_on_zero)}});
  }
  const auto& r = report.identities;
  verdicts.push_back({{"property", "curvature_identities"},
                      {"order", 1},
                      {"verdict", report.identities_ok ? "pass" : "fail"},
                      {"antisymmetry_first_pair", number(r.antisymmetry_first_pair)},
                      {"antisymmetry_second_pair", number(r.antisymmetry_second_pair)},
                      {"pair_symmetry", number(r.pair_symmetry)},
                      {"first_bianchi", number(r.first_bianchi)},
                      {"second_bianchi", number(r.second_bianchi)},
                      {"metric_compatibility", number(r.metric_compatibility)}});
  j["verdicts"] = std::move(verdicts);
  j["invariants"] = json::array();
  j["exclusions"] = exclusions_json(report.exclusions);
  j["points_evaluated"] = report.points.size() - report.exclusions.size();
  j["passed"] = report.passed;
  j["notes"] = notes_json(report.notes);
  j["tool_version"] = tool_version();
  return j.dump(2) + "\n";
}

std::string invariants_json(const ReportConfig& config, const HomogeneityReport& report) {
  json j;
  j["config"] = config_json(config);
  j["verdicts"] = json::array();
  json rows = json::array();
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    json row;
    row["point"] = point_json(report.points[i]);
    for (const auto& s : report.invariants) {
      const auto& v = s.values[i];
      row[s.name] = v ? number(*v) : json(nullptr);
    }
    rows.push_back(std::move(row));
  }
  j["invariants"] = std::move(rows);
  j["exclusions"] = exclusions_json(report.exclusions);
  j["tool_version"] = tool_version();
  return j.dump(2) + "\n";
}

std::string classify_text(const ReportConfig& config, const HomogeneityReport& report) {
  std::ostringstream os;
  config_text(os, config);
  os << "points: " << report.points.size() << "\n\nverdicts:\n";
  for (const auto& v : report.verdicts) {
    os << "  " << std::left << std::setw(24) << v.property << std::setw(20) << verdict_name(v.verdict) << v.detail
       << "\n";
  }
  os << "\ninvariants:\n";
  for (const auto& s : report.invariants) {
    os << "  " << std::left << std::setw(34) << s.name;
    if (s.available == 0) {
      os << "undefined at every point\n";
      continue;
    }
    os << "min " << fmt(s.min) << "  max " << fmt(s.max) << "  spread " << fmt(s.spread)
       << (s.constant ? "  constant" : "  nonconstant") << (s.isometry_invariant ? "" : "  [frame-dependent]")
       << "\n";
  }
  exclusions_text(os, report.exclusions);
  if (!report.notes.empty()) {
    os << "\nnotes:\n";
    for (const auto& n : report.notes) os << "  - " << n << "\n";
  }
  return os.str();
}

std::string verify_text(const ReportConfig& config, const VerificationReport& report) {
  std::ostringstream os;
  config_text(os, config);
  os << "points: " << report.points.size() << "\n\n";
  for (const auto& c : report.oracle) {
    os << "  order " << c.order << ": max relative error " << fmt(c.worst.max_relative)
       << ", max absolute error on zero entries " << fmt(c.worst.max_absolute_on_zero) << "  "
       << (c.ok ? "pass" : "FAIL") << "\n";
  }
  os << "  curvature identities: worst residual " << fmt(report.identities.max()) << "  "
     << (report.identities_ok ? "pass" : "FAIL") << "\n";
  exclusions_text(os, report.exclusions);
  for (const auto& n : report.notes) os << "note: " << n << "\n";
  os << (report.passed ? "result: pass\n" : "result: FAIL\n");
  return os.str();
}

std::string invariants_text(const HomogeneityReport& report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    os << point_text(report.points[i]) << "\n";
    for (const auto& s : report.invariants) {
      const auto& v = s.values[i];
      os << "  " << std::left << std::setw(34) << s.name << (v ? fmt(*v) : std::string("undefined")) << "\n";
    }
  }
  exclusions_text(os, report.exclusions);
  return os.str();
}

std::string invariants_csv(const HomogeneityReport& report) {
  std::ostringstream os;
  os << std::setprecision(17) << "t,x,y";
  for (const auto& s : report.invariants) os << "," << s.name;
  os << "\n";
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const Point& p = report.points[i];
    os << p[0] << "," << p[1] << "," << p[2];
    for (const auto& s : report.invariants) {
      os << ",";
      if (s.values[i]) os << *s.values[i];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace curvhom
