#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>

#include "curvhom/errors.hpp"
#include "curvhom/families.hpp"
#include "curvhom/report.hpp"
#include "curvhom/verify.hpp"

namespace curvhom::cli {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
  return s;
}

// `key = value` per line, '#' starts a comment. A value is taken verbatim
// (spaces included); a repeated key supplies several values.
class FlatConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    std::vector<CLI::ConfigItem> items;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw CLI::ConversionError("config line " + std::to_string(lineno) + " is not of the form key = value");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      auto it = std::find_if(items.begin(), items.end(), [&](const CLI::ConfigItem& c) { return c.name == key; });
      if (it == items.end()) {
        CLI::ConfigItem item;
        item.name = key;
        item.inputs = {value};
        items.push_back(std::move(item));
      } else {
        it->inputs.push_back(value);
      }
    }
    return items;
  }
};

double parse_number(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto t = trim(s);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw std::invalid_argument("invalid " + what + " '" + s + "'");
  }
  return v;
}

struct Options {
  std::string command;
  std::string family;
  std::string function;
  std::string metric;
  int order = 2;
  std::vector<std::string> grid;
  double tol = kDefaultTolerance;
  std::string output;
  std::string format = "json";
  unsigned threads = 0;
  std::vector<std::string> expect;
};

FamilySpec family_spec(const Options& o) {
  if (o.family == "custom") {
    if (o.metric.empty()) throw std::invalid_argument("--family custom needs --metric tt,tx,ty,xx,xy,yy");
    std::vector<Expr> parts;
    std::size_t start = 0;
    while (true) {
      const auto comma = o.metric.find(',', start);
      parts.push_back(parse(o.metric.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 6) {
      throw std::invalid_argument("--metric needs 6 comma-separated components (tt,tx,ty,xx,xy,yy), got " +
                                  std::to_string(parts.size()));
    }
    return FamilySpec::custom_metric(MetricField(parts[0], parts[1], parts[2], parts[3], parts[4], parts[5]));
  }
  if (o.function.empty()) throw std::invalid_argument("--family " + o.family + " needs --function");
  const Expr fn = parse(o.function);
  return o.family == "f" ? FamilySpec::f_family(fn) : FamilySpec::h_family(fn);
}

std::map<std::string, Verdict> parse_expectations(const std::vector<std::string>& items) {
  std::map<std::string, Verdict> out;
  for (const auto& item : items) {
    const auto eq = item.rfind('=');
    if (eq == std::string::npos) throw std::invalid_argument("--expect needs PROPERTY=VERDICT, got '" + item + "'");
    const std::string name = trim(item.substr(0, eq));
    const std::string v = trim(item.substr(eq + 1));
    Verdict verdict;
    if (v == "pass") verdict = Verdict::pass;
    else if (v == "fail") verdict = Verdict::fail;
    else if (v == "hypothesis_violated") verdict = Verdict::hypothesis_violated;
    else if (v == "not_assessed") verdict = Verdict::not_assessed;
    else throw std::invalid_argument("unknown verdict '" + v + "' in --expect");
    out[name] = verdict;
  }
  return out;
}

int emit(const Options& o, const std::string& text, std::ostream& out, std::ostream& err) {
  if (o.output.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file || !(file << text)) {
    err << "error: cannot write " << o.output << "\n";
    return kConfigError;
  }
  return kOk;
}

}  // namespace

GridAxis parse_grid_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("grid '" + text + "' is not of the form coord=min:max:count");
  const std::string coord = trim(text.substr(0, eq));
  GridAxis a;
  if (coord == "t") a.coord = Coord::t;
  else if (coord == "x") a.coord = Coord::x;
  else if (coord == "y") a.coord = Coord::y;
  else throw std::invalid_argument("grid coordinate must be t, x or y, got '" + coord + "'");
  const std::string rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : rest.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("grid '" + text + "' is not of the form coord=min:max:count");
  a.min = parse_number(rest.substr(0, c1), "grid minimum");
  a.max = parse_number(rest.substr(c1 + 1, c2 - c1 - 1), "grid maximum");
  const double count = parse_number(rest.substr(c2 + 1), "grid count");
  if (count != static_cast<int>(count)) throw std::invalid_argument("grid count must be an integer");
  a.count = static_cast<int>(count);
  if (a.count < 1) throw std::invalid_argument("grid '" + text + "' is empty (count must be at least 1)");
  if (!(a.min <= a.max)) throw std::invalid_argument("grid '" + text + "' has min > max");
  return a;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature homogeneity checks for Lorentzian 3-metrics"};
  app.set_version_flag("--version", tool_version());
  Options o;
  app.add_option("command", o.command, "verify | classify | invariants")
      ->required()
      ->check(CLI::IsMember({"verify", "classify", "invariants"}));
  app.add_option("--family", o.family, "f | h | custom")->check(CLI::IsMember({"f", "h", "custom"}));
  app.add_option("--function", o.function, "f(x) for --family f, h(t) for --family h");
  app.add_option("--metric", o.metric, "custom metric components tt,tx,ty,xx,xy,yy");
  app.add_option("--order", o.order, "highest derivative order r of the curvature")->capture_default_str();
  app.add_option("--grid", o.grid, "sample axis coord=min:max:count (repeatable)");
  app.add_option("--tol", o.tol, "relative tolerance for constancy")->capture_default_str();
  app.add_option("--output", o.output, "write the report to this file instead of stdout");
  app.add_option("--format", o.format, "json | text | csv")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--expect", o.expect, "classify: PROPERTY=VERDICT that must hold (repeatable)");
  app.set_config("--config", "", "flat key = value file mirroring the flags");
  app.config_formatter(std::make_shared<FlatConfig>());
  app.allow_config_extras(CLI::config_extras_mode::error);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  ReportConfig rc;
  try {
    if (o.family.empty()) throw std::invalid_argument("--family is required");
    if (o.order < 0) throw std::invalid_argument("--order must be nonnegative");
    if (o.order + 2 > kMaxJetOrder) {
      throw std::invalid_argument("--order must be at most " + std::to_string(kMaxJetOrder - 2));
    }
    if (!(o.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (o.grid.empty()) throw std::invalid_argument("empty grid: give at least one --grid coord=min:max:count");
    if (o.format == "csv" && o.command != "invariants") {
      throw std::invalid_argument("--format csv is only available for invariants");
    }
    if (!o.expect.empty() && o.command != "classify") throw std::invalid_argument("--expect applies to classify only");

    std::vector<GridAxis> axes;
    for (const auto& g : o.grid) axes.push_back(parse_grid_axis(g));
    const SampleSet samples = SampleSet::grid(axes);
    const FamilySpec spec = family_spec(o);
    const auto expectations = parse_expectations(o.expect);

    rc.command = o.command;
    rc.family = o.family;
    rc.function = o.family == "custom" ? "" : o.function;
    rc.metric = o.family == "custom" ? o.metric : "";
    rc.order = o.order;
    rc.tolerance = o.tol;
    rc.grid = axes;

    if (o.command == "verify") {
      const VerificationReport rep = verify(spec, o.order, samples);
      const int rc_emit = emit(o, o.format == "json" ? verify_json(rc, rep) : verify_text(rc, rep), out, err);
      if (rc_emit != kOk) return rc_emit;
      return rep.passed ? kOk : kCheckFailed;
    }

    ClassifyOptions copt;
    copt.tolerance = o.tol;
    copt.threads = o.threads;
    const HomogeneityReport rep = classify(spec, o.order, samples, copt);
    if (o.command == "invariants") {
      const std::string text = o.format == "json"  ? invariants_json(rc, rep)
                               : o.format == "csv" ? invariants_csv(rep)
                                                   : invariants_text(rep);
      return emit(o, text, out, err);
    }
    const int rc_emit = emit(o, o.format == "json" ? classify_json(rc, rep) : classify_text(rc, rep), out, err);
    if (rc_emit != kOk) return rc_emit;
    int status = kOk;
    for (const auto& [name, want] : expectations) {
      const VerdictEntry* v = rep.find(name);
      if (!v) {
        err << "expectation failed: " << name << " is not reported\n";
        status = kCheckFailed;
      } else if (v->verdict != want) {
        err << "expectation failed: " << name << " is " << verdict_name(v->verdict) << ", expected "
            << verdict_name(want) << "\n";
        status = kCheckFailed;
      }
    }
    return status;
  } catch (const ParseError& e) {
    err << "error: cannot parse expression: " << e.what() << "\n";
    return kConfigError;
  } catch (const FamilyError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const HypothesisError& e) {
    err << "error: hypothesis violated at every sample point: " << e.what() << "\n";
    return kHypothesisViolated;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace curvhom::cli
