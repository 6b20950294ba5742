#include "starc/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace starc {

namespace {

ExprPtr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Constant;
  n->value = v;
  return n;
}
ExprPtr make_coord(int c) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Coordinate;
  n->coord = c;
  return n;
}
ExprPtr make_unary(ExprKind k, ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(a);
  return n;
}
ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}
ExprPtr make_call(Func f, ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Call;
  n->func = f;
  n->lhs = std::move(a);
  return n;
}

bool lookup_func(const std::string& name, Func& out) {
  static const std::pair<const char*, Func> table[] = {
      {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},
      {"exp", Func::Exp},   {"log", Func::Log},   {"sqrt", Func::Sqrt},
      {"sinh", Func::Sinh}, {"cosh", Func::Cosh}, {"tanh", Func::Tanh}};
  for (const auto& [n, f] : table)
    if (name == n) {
      out = f;
      return true;
    }
  return false;
}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
  }
  return "?";
}

class Parser {
 public:
  Parser(const std::string& text, const std::array<std::string, 4>& coords)
      : s_(text), coords_(coords) {}

  ExprAst run() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return ExprAst(std::move(e), coords_);
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    for (;;) {
      if (accept('+'))
        e = make_binary(ExprKind::Add, std::move(e), parse_term());
      else if (accept('-'))
        e = make_binary(ExprKind::Sub, std::move(e), parse_term());
      else
        return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    for (;;) {
      if (accept('*'))
        e = make_binary(ExprKind::Mul, std::move(e), parse_factor());
      else if (accept('/'))
        e = make_binary(ExprKind::Div, std::move(e), parse_factor());
      else
        return e;
    }
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_unary();
    if (accept('^')) return make_binary(ExprKind::Pow, std::move(base), parse_factor());
    return base;
  }

  ExprPtr parse_unary() {
    if (accept('-')) return make_unary(ExprKind::Neg, parse_unary());
    return parse_atom();
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    if (accept('(')) {
      ExprPtr e = parse_expr();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return e;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' begins an identifier, not an exponent
      }
    }
    const std::string tok = s_.substr(start, pos_ - start);
    if (tok == "." || tok.empty()) throw SyntaxError("malformed number", start);
    return make_const(std::stod(tok));
  }

  ExprPtr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (accept('(')) {
      Func f;
      if (!lookup_func(name, f)) throw UnknownIdentifier(name);
      ExprPtr arg = parse_expr();
      if (peek(',')) throw ArityError("'" + name + "' takes exactly one argument");
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return make_call(f, std::move(arg));
    }
    for (int i = 0; i < 4; ++i)
      if (name == coords_[i]) return make_coord(i);
    if (name == "pi") return make_const(std::numbers::pi);
    throw UnknownIdentifier(name);
  }

  const std::string& s_;
  std::array<std::string, 4> coords_;
  std::size_t pos_ = 0;
};

double eval_node(const ExprNode& n, const Point& p) {
  switch (n.kind) {
    case ExprKind::Constant: return n.value;
    case ExprKind::Coordinate: return p[n.coord];
    case ExprKind::Neg: return -eval_node(*n.lhs, p);
    case ExprKind::Add: return eval_node(*n.lhs, p) + eval_node(*n.rhs, p);
    case ExprKind::Sub: return eval_node(*n.lhs, p) - eval_node(*n.rhs, p);
    case ExprKind::Mul: return eval_node(*n.lhs, p) * eval_node(*n.rhs, p);
    case ExprKind::Div: return eval_node(*n.lhs, p) / eval_node(*n.rhs, p);
    case ExprKind::Pow: return std::pow(eval_node(*n.lhs, p), eval_node(*n.rhs, p));
    case ExprKind::Call: {
      const double x = eval_node(*n.lhs, p);
      switch (n.func) {
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Tan: return std::tan(x);
        case Func::Exp: return std::exp(x);
        case Func::Log: return std::log(x);
        case Func::Sqrt: return std::sqrt(x);
        case Func::Sinh: return std::sinh(x);
        case Func::Cosh: return std::cosh(x);
        case Func::Tanh: return std::tanh(x);
      }
    }
  }
  return 0.0;
}

ExprPtr diff_node(const ExprPtr& n, int coord);

ExprPtr diff_call(const ExprPtr& n, int coord) {
  const ExprPtr& u = n->lhs;
  ExprPtr du = diff_node(u, coord);
  ExprPtr outer;
  switch (n->func) {
    case Func::Sin: outer = make_call(Func::Cos, u); break;
    case Func::Cos: outer = make_unary(ExprKind::Neg, make_call(Func::Sin, u)); break;
    case Func::Tan: {
      ExprPtr c = make_call(Func::Cos, u);
      outer = make_binary(ExprKind::Div, make_const(1.0),
                          make_binary(ExprKind::Mul, c, c));
      break;
    }
    case Func::Exp: outer = make_call(Func::Exp, u); break;
    case Func::Log: outer = make_binary(ExprKind::Div, make_const(1.0), u); break;
    case Func::Sqrt:
      outer = make_binary(ExprKind::Div, make_const(0.5), make_call(Func::Sqrt, u));
      break;
    case Func::Sinh: outer = make_call(Func::Cosh, u); break;
    case Func::Cosh: outer = make_call(Func::Sinh, u); break;
    case Func::Tanh: {
      ExprPtr c = make_call(Func::Cosh, u);
      outer = make_binary(ExprKind::Div, make_const(1.0),
                          make_binary(ExprKind::Mul, c, c));
      break;
    }
  }
  return make_binary(ExprKind::Mul, std::move(outer), std::move(du));
}

ExprPtr diff_node(const ExprPtr& n, int coord) {
  switch (n->kind) {
    case ExprKind::Constant: return make_const(0.0);
    case ExprKind::Coordinate: return make_const(n->coord == coord ? 1.0 : 0.0);
    case ExprKind::Neg: return make_unary(ExprKind::Neg, diff_node(n->lhs, coord));
    case ExprKind::Add:
      return make_binary(ExprKind::Add, diff_node(n->lhs, coord), diff_node(n->rhs, coord));
    case ExprKind::Sub:
      return make_binary(ExprKind::Sub, diff_node(n->lhs, coord), diff_node(n->rhs, coord));
    case ExprKind::Mul:
      return make_binary(ExprKind::Add,
                         make_binary(ExprKind::Mul, diff_node(n->lhs, coord), n->rhs),
                         make_binary(ExprKind::Mul, n->lhs, diff_node(n->rhs, coord)));
    case ExprKind::Div:
      // (u/v)' = u'/v - u v'/v^2
      return make_binary(
          ExprKind::Sub, make_binary(ExprKind::Div, diff_node(n->lhs, coord), n->rhs),
          make_binary(ExprKind::Div, make_binary(ExprKind::Mul, n->lhs, diff_node(n->rhs, coord)),
                      make_binary(ExprKind::Mul, n->rhs, n->rhs)));
    case ExprKind::Pow: {
      // d(u^v) = u^v (v' log u + v u'/u); constant exponents take the
      // power-rule branch so integer powers stay well-defined at u <= 0.
      if (n->rhs->kind == ExprKind::Constant) {
        const double k = n->rhs->value;
        if (k == 0.0) return make_const(0.0);
        return make_binary(
            ExprKind::Mul, make_const(k),
            make_binary(ExprKind::Mul, make_binary(ExprKind::Pow, n->lhs, make_const(k - 1.0)),
                        diff_node(n->lhs, coord)));
      }
      ExprPtr term1 = make_binary(ExprKind::Mul, diff_node(n->rhs, coord),
                                  make_call(Func::Log, n->lhs));
      ExprPtr term2 = make_binary(
          ExprKind::Div, make_binary(ExprKind::Mul, n->rhs, diff_node(n->lhs, coord)), n->lhs);
      return make_binary(ExprKind::Mul, ExprPtr(n),
                         make_binary(ExprKind::Add, std::move(term1), std::move(term2)));
    }
    case ExprKind::Call: return diff_call(n, coord);
  }
  return make_const(0.0);
}

void print_node(const ExprNode& n, const std::array<std::string, 4>& names, std::string& out) {
  switch (n.kind) {
    case ExprKind::Constant: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case ExprKind::Coordinate: out += names[n.coord]; return;
    case ExprKind::Neg:
      out += "(-";
      print_node(*n.lhs, names, out);
      out += ")";
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Pow: {
      const char* op = n.kind == ExprKind::Add   ? "+"
                       : n.kind == ExprKind::Sub ? "-"
                       : n.kind == ExprKind::Mul ? "*"
                       : n.kind == ExprKind::Div ? "/"
                                                 : "^";
      out += "(";
      print_node(*n.lhs, names, out);
      out += op;
      print_node(*n.rhs, names, out);
      out += ")";
      return;
    }
    case ExprKind::Call:
      out += func_name(n.func);
      out += "(";
      print_node(*n.lhs, names, out);
      out += ")";
      return;
  }
}

}  // namespace

double ExprAst::eval(const Point& p) const {
  if (!root_) return 0.0;
  return eval_node(*root_, p);
}

ExprAst ExprAst::derivative(int coord) const {
  if (!root_) return ExprAst(make_const(0.0), coord_names_);
  return ExprAst(diff_node(root_, coord), coord_names_);
}

std::string ExprAst::pretty_print() const {
  if (!root_) return "0";
  std::string out;
  print_node(*root_, coord_names_, out);
  return out;
}

ExprAst parse_expression(const std::string& text,
                         const std::array<std::string, 4>& coord_names) {
  return Parser(text, coord_names).run();
}

}  // namespace starc
