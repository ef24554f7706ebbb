#include "hsclab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace hsclab {

Expr::Expr() : Expr(make(ExprKind::Literal, {}, cplx{})) {}

Expr Expr::make(ExprKind kind, std::vector<Expr> children, cplx value, int index) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->value = value;
  node->index = index;
  node->children = std::move(children);
  return Expr(std::move(node));
}

Expr Expr::literal(cplx value) { return make(ExprKind::Literal, {}, value); }
Expr Expr::imag_unit() { return make(ExprKind::ImagUnit, {}); }
Expr Expr::var(int index) {
  if (index < 0) throw Error(ErrorCode::VariableIndex, "negative variable index");
  return make(ExprKind::Var, {}, {}, index);
}
Expr Expr::neg(Expr a) { return make(ExprKind::Neg, {std::move(a)}); }
Expr Expr::conj(Expr a) { return make(ExprKind::Conj, {std::move(a)}); }
Expr Expr::exp(Expr a) { return make(ExprKind::Exp, {std::move(a)}); }
Expr Expr::add(Expr a, Expr b) { return make(ExprKind::Add, {std::move(a), std::move(b)}); }
Expr Expr::sub(Expr a, Expr b) { return make(ExprKind::Sub, {std::move(a), std::move(b)}); }
Expr Expr::mul(Expr a, Expr b) { return make(ExprKind::Mul, {std::move(a), std::move(b)}); }
Expr Expr::div(Expr a, Expr b) { return make(ExprKind::Div, {std::move(a), std::move(b)}); }
Expr Expr::pow(Expr base, int exponent) {
  return make(ExprKind::Pow, {std::move(base)}, {}, exponent);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const Expr::Node& x = *a.node_;
  const Expr::Node& y = *b.node_;
  if (x.kind != y.kind || x.index != y.index || x.value != y.value ||
      x.children.size() != y.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view src, int n) : src_(src), n_(n) {}

  Expr parse_all() {
    skip_ws();
    if (pos_ >= src_.size()) fail(ErrorCode::Syntax, "empty expression");
    Expr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) {
      fail(ErrorCode::Syntax, std::string("unexpected '") + src_[pos_] + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const {
    throw ParseError(code, pos_, msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(ErrorCode::Syntax, std::string("expected '") + c + "', got end");
      fail(ErrorCode::Syntax, std::string("expected '") + c + "'");
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::add(std::move(lhs), parse_term());
      } else if (accept('-')) {
        lhs = Expr::sub(std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::mul(std::move(lhs), parse_factor());
      } else if (accept('/')) {
        lhs = Expr::div(std::move(lhs), parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    Expr b = parse_base();
    if (accept('^')) return Expr::pow(std::move(b), parse_integer());
    return b;
  }

  int parse_integer() {
    const bool paren = accept('(');
    skip_ws();
    bool negative = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      negative = src_[pos_] == '-';
      ++pos_;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) {
      pos_ = start;
      fail(ErrorCode::Syntax, "expected integer exponent");
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc{} || ptr != src_.data() + pos_) {
      pos_ = start;
      fail(ErrorCode::Syntax, "exponent out of range");
    }
    if (paren) expect(')');
    return negative ? -value : value;
  }

  Expr parse_base() {
    skip_ws();
    if (pos_ >= src_.size()) fail(ErrorCode::Syntax, "unexpected end of input");
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return Expr::neg(parse_base());
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(ErrorCode::Syntax, std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) {
      pos_ = start;
      fail(ErrorCode::Syntax, "malformed number");
    }
    // Exponent only when followed by digits, so "2*exp(...)" never lexes as 2e.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
      pos_ = start;
      fail(ErrorCode::Syntax, "malformed number");
    }
    return Expr::literal(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view word = src_.substr(start, pos_ - start);
    if (word == "i") return Expr::imag_unit();
    if (word == "conj" || word == "exp") {
      expect('(');
      Expr inner = parse_expr();
      expect(')');
      return word == "conj" ? Expr::conj(std::move(inner)) : Expr::exp(std::move(inner));
    }
    if (word.size() >= 2 && word[0] == 'z') {
      bool all_digits = true;
      for (std::size_t k = 1; k < word.size(); ++k) {
        all_digits = all_digits && std::isdigit(static_cast<unsigned char>(word[k]));
      }
      if (all_digits) {
        int index = 0;
        const auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), index);
        if (ec != std::errc{} || index < 1 || index > n_) {
          pos_ = start;
          fail(ErrorCode::VariableIndex, "variable '" + std::string(word) +
                                             "' outside z1..z" + std::to_string(n_));
        }
        return Expr::var(index - 1);
      }
    }
    pos_ = start;
    fail(ErrorCode::UnknownIdentifier, "unknown identifier '" + std::string(word) + "'");
  }

  std::string_view src_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source, int n) { return Parser(source, n).parse_all(); }

// ---------------------------------------------------------------------------
// Printer

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

namespace {

std::string format_literal(cplx v) {
  if (v.imag() == 0.0 && !std::signbit(v.real())) return format_real(v.real());
  if (v.imag() == 0.0) return "(" + format_real(v.real()) + ")";
  std::string out = "(";
  if (v.real() != 0.0) out += format_real(v.real());
  const double im = v.imag();
  if (v.real() != 0.0 && !std::signbit(im)) out += "+";
  out += format_real(im) + "*i)";
  return out;
}

void print_expr(const Expr& e, std::string& out);

void print_base(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::Literal: out += format_literal(e.literal_value()); return;
    case ExprKind::ImagUnit: out += "i"; return;
    case ExprKind::Var: out += "z" + std::to_string(e.var_index() + 1); return;
    case ExprKind::Neg:
      out += "-";
      print_base(e.lhs(), out);
      return;
    case ExprKind::Conj:
    case ExprKind::Exp:
      out += e.kind() == ExprKind::Conj ? "conj(" : "exp(";
      print_expr(e.lhs(), out);
      out += ")";
      return;
    default:
      out += "(";
      print_expr(e, out);
      out += ")";
  }
}

void print_factor(const Expr& e, std::string& out) {
  if (e.kind() == ExprKind::Pow) {
    print_base(e.lhs(), out);
    out += "^" + std::to_string(e.exponent());
    return;
  }
  print_base(e, out);
}

void print_term(const Expr& e, std::string& out) {
  if (e.kind() == ExprKind::Mul || e.kind() == ExprKind::Div) {
    print_term(e.lhs(), out);
    out += e.kind() == ExprKind::Mul ? "*" : "/";
    print_factor(e.rhs(), out);
    return;
  }
  print_factor(e, out);
}

void print_expr(const Expr& e, std::string& out) {
  if (e.kind() == ExprKind::Add || e.kind() == ExprKind::Sub) {
    print_expr(e.lhs(), out);
    out += e.kind() == ExprKind::Add ? "+" : "-";
    print_term(e.rhs(), out);
    return;
  }
  print_term(e, out);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print_expr(e, out);
  return out;
}

// ---------------------------------------------------------------------------

int max_variable(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Var: return e.var_index();
    case ExprKind::Literal:
    case ExprKind::ImagUnit: return -1;
    case ExprKind::Neg:
    case ExprKind::Conj:
    case ExprKind::Exp:
    case ExprKind::Pow: return max_variable(e.lhs());
    default: return std::max(max_variable(e.lhs()), max_variable(e.rhs()));
  }
}

bool references(const Expr& e, int index) {
  switch (e.kind()) {
    case ExprKind::Var: return e.var_index() == index;
    case ExprKind::Literal:
    case ExprKind::ImagUnit: return false;
    case ExprKind::Neg:
    case ExprKind::Conj:
    case ExprKind::Exp:
    case ExprKind::Pow: return references(e.lhs(), index);
    default: return references(e.lhs(), index) || references(e.rhs(), index);
  }
}

Expr substitute(const Expr& e, const std::map<int, cplx>& fixed, std::span<const int> renumber) {
  switch (e.kind()) {
    case ExprKind::Literal:
    case ExprKind::ImagUnit: return e;
    case ExprKind::Var: {
      if (auto it = fixed.find(e.var_index()); it != fixed.end()) return Expr::literal(it->second);
      const auto k = static_cast<std::size_t>(e.var_index());
      if (k >= renumber.size() || renumber[k] < 0) {
        throw Error(ErrorCode::VariableIndex, "variable z" + std::to_string(k + 1) +
                                                  " has no image under renumbering");
      }
      return Expr::var(renumber[k]);
    }
    case ExprKind::Neg: return Expr::neg(substitute(e.lhs(), fixed, renumber));
    case ExprKind::Conj: return Expr::conj(substitute(e.lhs(), fixed, renumber));
    case ExprKind::Exp: return Expr::exp(substitute(e.lhs(), fixed, renumber));
    case ExprKind::Pow: return Expr::pow(substitute(e.lhs(), fixed, renumber), e.exponent());
    case ExprKind::Add:
      return Expr::add(substitute(e.lhs(), fixed, renumber), substitute(e.rhs(), fixed, renumber));
    case ExprKind::Sub:
      return Expr::sub(substitute(e.lhs(), fixed, renumber), substitute(e.rhs(), fixed, renumber));
    case ExprKind::Mul:
      return Expr::mul(substitute(e.lhs(), fixed, renumber), substitute(e.rhs(), fixed, renumber));
    case ExprKind::Div:
      return Expr::div(substitute(e.lhs(), fixed, renumber), substitute(e.rhs(), fixed, renumber));
  }
  throw Error(ErrorCode::InvalidArgument, "corrupt expression node");
}

Expr rename_variables(const Expr& e, std::span<const int> renumber) {
  return substitute(e, {}, renumber);
}

Expr scale(const Expr& e, cplx c) {
  if (c == cplx(1.0, 0.0)) return e;
  return Expr::mul(Expr::literal(c), e);
}

cplx evaluate(const Expr& e, std::span<const cplx> point, double div_eps) {
  return evaluate<cplx>(e, point, [](cplx c) { return c; }, div_eps);
}

ExtComplex evaluate_ext(const Expr& e, std::span<const ExtComplex> point, double div_eps) {
  return evaluate<ExtComplex>(
      e, point, [](cplx c) { return ExtComplex(c.real(), c.imag()); }, div_eps);
}

std::vector<Jet2> coordinate_jets(std::span<const cplx> point, int jet_dim) {
  std::vector<Jet2> coords;
  coords.reserve(point.size());
  for (int k = 0; k < static_cast<int>(point.size()); ++k) {
    if (k < jet_dim) {
      coords.push_back(seed(jet_dim, point, k, Variable::z));
    } else {
      coords.emplace_back(jet_dim, point[static_cast<std::size_t>(k)]);
    }
  }
  return coords;
}

Jet2 evaluate_jet(const Expr& e, std::span<const Jet2> coords, int jet_dim, double div_eps) {
  return evaluate<Jet2>(e, coords, [jet_dim](cplx c) { return Jet2(jet_dim, c); }, div_eps);
}

Jet2 evaluate_jet(const Expr& e, std::span<const cplx> point, int jet_dim, double div_eps) {
  const auto coords = coordinate_jets(point, jet_dim);
  return evaluate_jet(e, std::span<const Jet2>(coords), jet_dim, div_eps);
}

}  // namespace hsclab
