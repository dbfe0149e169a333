#include "curvhom/expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <system_error>

#include "curvhom/errors.hpp"

namespace curvhom {

struct Expr::Node {
  Kind kind;
  double value = 0.0;
  Coord coord = Coord::t;
  std::vector<Expr> operands;
};

namespace {

bool is_unary(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::neg:
    case Expr::Kind::exp:
    case Expr::Kind::log:
    case Expr::Kind::sin:
    case Expr::Kind::cos:
    case Expr::Kind::sqrt:
    case Expr::Kind::abs:
      return true;
    default:
      return false;
  }
}

bool is_binary(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div:
    case Expr::Kind::pow:
      return true;
    default:
      return false;
  }
}

struct FunctionName {
  std::string_view name;
  Expr::Kind kind;
};

constexpr std::array<FunctionName, 6> kFunctions{{
    {"exp", Expr::Kind::exp},
    {"log", Expr::Kind::log},
    {"sin", Expr::Kind::sin},
    {"cos", Expr::Kind::cos},
    {"sqrt", Expr::Kind::sqrt},
    {"abs", Expr::Kind::abs},
}};

std::string_view function_name(Expr::Kind k) {
  for (const auto& f : kFunctions) {
    if (f.kind == k) return f.name;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ('-' | '+') exponent | power
//   primary := number | variable | function '(' sum ')' | '(' sum ')'
// ---------------------------------------------------------------------------
class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables) : text_(text) {
    for (const auto& v : variables) {
      if (v == "t") {
        allowed_[0] = true;
      } else if (v == "x") {
        allowed_[1] = true;
      } else if (v == "y") {
        allowed_[2] = true;
      } else {
        throw std::invalid_argument("unsupported coordinate name '" + v + "'");
      }
    }
  }

  Expr run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError(pos_, "empty expression");
    Expr e = sum();
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw ParseError(pos_, "unbalanced ')'");
      throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr lhs = product();
    while (true) {
      if (accept('+')) {
        lhs = Expr::binary(Expr::Kind::add, lhs, product());
      } else if (accept('-')) {
        lhs = Expr::binary(Expr::Kind::sub, lhs, product());
      } else {
        return lhs;
      }
    }
  }

  Expr product() {
    Expr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = Expr::binary(Expr::Kind::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Expr::Kind::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::unary(Expr::Kind::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr exponent() {
    if (accept('-')) return Expr::unary(Expr::Kind::neg, exponent());
    if (accept('+')) return exponent();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::binary(Expr::Kind::pow, base, exponent());
    return base;
  }

  Expr primary() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError(pos_, "missing operand at end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      const std::size_t open = pos_++;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') throw ParseError(pos_, "empty parentheses");
      if (auto literal = negative_literal()) return *literal;
      Expr inner = sum();
      if (!accept(')')) throw ParseError(open, "unbalanced '('");
      return inner;
    }
    if (c == ')') throw ParseError(pos_, "missing operand before ')'");
    throw ParseError(pos_, std::string("missing operand before '") + c + "'");
  }

  // "(-c)" right after the '(' is the printed form of a negative constant.
  std::optional<Expr> negative_literal() {
    const std::size_t saved = pos_;
    if (accept('-')) {
      skip_space();
      if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        const Expr n = number();
        if (accept(')')) return Expr::number(-n.number_value());
      }
    }
    pos_ = saved;
    return std::nullopt;
  }

  Expr number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    };
    digits();
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      digits();
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t probe = end + 1;
      if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
      if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
        end = probe;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
    if (ec != std::errc() || ptr != text_.data() + end) {
      throw ParseError(start, "malformed number");
    }
    pos_ = end;
    return Expr::number(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    for (const auto& f : kFunctions) {
      if (f.name == name) {
        if (!accept('(')) throw ParseError(pos_, "expected '(' after '" + std::string(name) + "'");
        const std::size_t open = pos_ - 1;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ')') {
          throw ParseError(pos_, "missing argument to '" + std::string(name) + "'");
        }
        Expr arg = sum();
        if (!accept(')')) throw ParseError(open, "unbalanced '('");
        return Expr::unary(f.kind, arg);
      }
    }
    static constexpr std::array<std::string_view, 3> kNames{"t", "x", "y"};
    for (int i = 0; i < 3; ++i) {
      if (name == kNames[static_cast<std::size_t>(i)]) {
        if (!allowed_[static_cast<std::size_t>(i)]) {
          throw ParseError(start, "coordinate '" + std::string(name) + "' is not allowed here");
        }
        return Expr::variable(static_cast<Coord>(i));
      }
    }
    throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::array<bool, 3> allowed_{false, false, false};
};

// ---------------------------------------------------------------------------
// Printing with minimal parentheses.
// ---------------------------------------------------------------------------
int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return 2;
    case Expr::Kind::neg:
      return 3;
    case Expr::Kind::pow:
      return 4;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  // "(-c)" parses back to the literal -c (see Parser::negative_literal).
  if (std::signbit(v)) return "(-" + format_number(-v) + ")";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("failed to format number");
  return std::string(buf.data(), ptr);
}

void print(const Expr& e, int min_prec, std::string& out) {
  const int prec = precedence(e.kind());
  const bool wrap = prec < min_prec;
  if (wrap) out += '(';
  switch (e.kind()) {
    case Expr::Kind::number:
      out += format_number(e.number_value());
      break;
    case Expr::Kind::variable:
      out += coordinate_name(e.coordinate());
      break;
    case Expr::Kind::neg:
      out += '-';
      // Inside parentheses "-c" would read back as a negative literal.
      print(e.operand(0), wrap && e.operand(0).kind() == Expr::Kind::number ? 6 : 3, out);
      break;
    case Expr::Kind::add:
    case Expr::Kind::sub:
      print(e.operand(0), 1, out);
      out += e.kind() == Expr::Kind::add ? " + " : " - ";
      print(e.operand(1), 2, out);
      break;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      print(e.operand(0), 2, out);
      out += e.kind() == Expr::Kind::mul ? "*" : "/";
      print(e.operand(1), 3, out);
      break;
    case Expr::Kind::pow:
      print(e.operand(0), 5, out);
      out += '^';
      print(e.operand(1), 4, out);
      break;
    default:
      out += function_name(e.kind());
      out += '(';
      print(e.operand(0), 0, out);
      out += ')';
      break;
  }
  if (wrap) out += ')';
}

// ---------------------------------------------------------------------------
// Jet evaluation.
// ---------------------------------------------------------------------------
bool is_constant(const Expr& e) {
  return !e.depends_on(Coord::t) && !e.depends_on(Coord::x) && !e.depends_on(Coord::y);
}

Jet evaluate(const Expr& e, const Point& p, int order);

template <typename Fn>
Jet guarded(const Expr& e, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& err) {
    if (!err.subexpression().empty()) throw;
    throw DomainError(err.reason(), to_string(e));
  }
}

Jet evaluate(const Expr& e, const Point& p, int order) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::number:
      return Jet::constant(e.number_value(), order);
    case K::variable:
      return Jet::variable(e.coordinate(), p[static_cast<std::size_t>(e.coordinate())], order);
    case K::neg:
      return -evaluate(e.operand(0), p, order);
    case K::add:
      return evaluate(e.operand(0), p, order) + evaluate(e.operand(1), p, order);
    case K::sub:
      return evaluate(e.operand(0), p, order) - evaluate(e.operand(1), p, order);
    case K::mul:
      return evaluate(e.operand(0), p, order) * evaluate(e.operand(1), p, order);
    default:
      break;
  }
  if (e.kind() == K::pow) {
    Jet base = evaluate(e.operand(0), p, order);
    if (is_constant(e.operand(1))) {
      const double q = evaluate(e.operand(1), p, 0).value();
      return guarded(e, [&] { return curvhom::pow(base, q); });
    }
    Jet expo = evaluate(e.operand(1), p, order);
    return guarded(e, [&] {
      if (!(base.value() > 0.0)) throw DomainError("variable power of nonpositive base");
      return curvhom::exp(expo * curvhom::log(base));
    });
  }
  if (e.kind() == K::div) {
    Jet num = evaluate(e.operand(0), p, order);
    Jet den = evaluate(e.operand(1), p, order);
    return guarded(e, [&] { return num / den; });
  }
  Jet arg = evaluate(e.operand(0), p, order);
  return guarded(e, [&] {
    switch (e.kind()) {
      case K::exp: return curvhom::exp(arg);
      case K::log: return curvhom::log(arg);
      case K::sin: return curvhom::sin(arg);
      case K::cos: return curvhom::cos(arg);
      case K::sqrt: return curvhom::sqrt(arg);
      case K::abs: return curvhom::abs(arg);
      default: throw std::logic_error("unhandled expression node");
    }
  });
}

}  // namespace

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(Coord c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->coord = c;
  return Expr(std::move(n));
}

Expr Expr::unary(Kind kind, Expr operand) {
  if (!is_unary(kind)) throw std::invalid_argument("not a unary expression kind");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->operands.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (!is_binary(kind)) throw std::invalid_argument("not a binary expression kind");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->operands.push_back(std::move(lhs));
  n->operands.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::number_value() const noexcept { return node_->value; }
Coord Expr::coordinate() const noexcept { return node_->coord; }
int Expr::arity() const noexcept { return static_cast<int>(node_->operands.size()); }

const Expr& Expr::operand(int i) const {
  return node_->operands.at(static_cast<std::size_t>(i));
}

bool Expr::depends_on(Coord c) const {
  if (node_->kind == Kind::variable) return node_->coord == c;
  return std::any_of(node_->operands.begin(), node_->operands.end(),
                     [c](const Expr& o) { return o.depends_on(c); });
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Expr::Kind::number) return a.number_value() == b.number_value();
  if (a.kind() == Expr::Kind::variable) return a.coordinate() == b.coordinate();
  if (a.arity() != b.arity()) return false;
  for (int i = 0; i < a.arity(); ++i) {
    if (!(a.operand(i) == b.operand(i))) return false;
  }
  return true;
}

Expr exp(Expr e) { return Expr::unary(Expr::Kind::exp, std::move(e)); }
Expr pow(Expr base, Expr exponent) {
  return Expr::binary(Expr::Kind::pow, std::move(base), std::move(exponent));
}

std::string_view coordinate_name(Coord c) {
  switch (c) {
    case Coord::t: return "t";
    case Coord::x: return "x";
    case Coord::y: return "y";
  }
  return "?";
}

Expr parse(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).run();
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

Jet eval_jet(const Expr& e, const Point& p, int order) {
  if (order < 0) throw std::invalid_argument("jet order must be nonnegative");
  return evaluate(e, p, order);
}

double eval(const Expr& e, const Point& p) { return evaluate(e, p, 0).value(); }

}  // namespace curvhom
