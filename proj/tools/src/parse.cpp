#include "hvc/cli/parse.hpp"

#include <cctype>

#include "hvc/errors.hpp"

namespace hvc::cli {

namespace {

class Parser {
 public:
  Parser(std::string_view text, bool allow_parameters) : text_(text), params_(allow_parameters) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

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

  static ExprPtr make(std::size_t at, auto node) {
    auto n = std::make_shared<ExprNode>();
    n->node = std::move(node);
    n->position = at;
    return n;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      std::size_t at = pos_;
      if (accept('+'))
        lhs = make(at, Binary{'+', lhs, term()});
      else if (accept('-'))
        lhs = make(at, Binary{'-', lhs, term()});
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      std::size_t at = pos_;
      if (accept('*'))
        lhs = make(at, Binary{'*', lhs, factor()});
      else if (accept('/'))
        lhs = make(at, Binary{'/', lhs, factor()});
      else
        return lhs;
    }
  }

  // Unary minus binds looser than '^', so -x^2 is -(x^2).
  ExprPtr factor() {
    skip_space();
    std::size_t sign_at = pos_;
    if (accept('-')) return make(sign_at, Negate{factor()});
    ExprPtr b = base();
    std::size_t at = pos_;
    if (!accept('^')) return b;
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) negative = text_[pos_++] == '-';
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected an integer exponent");
    std::string digits = integer_digits();
    if (digits.size() > 6) fail("exponent too large");
    long n = std::stol(digits);
    return make(at, Power{b, negative ? -n : n});
  }

  std::string integer_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  ExprPtr base() {
    skip_space();
    std::size_t at = pos_;
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return make(at, Literal{Rational(integer_digits())});
    if (c == 'u') return jet_atom();
    if (c == 't' && params_) return parameter_atom();
    fail(std::string("unexpected '") + c + "'");
  }

  ExprPtr jet_atom() {
    std::size_t at = pos_++;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a field number after 'u'");
    std::string field = integer_digits();
    if (field.size() > 3 || std::stoul(field) == 0 || std::stoul(field) > 255) fail("field number out of range");
    std::vector<int> entries;
    if (pos_ < text_.size() && text_[pos_] == '_') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected index digits after '_'");
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        char d = text_[pos_];
        if (d != '1' && d != '2') fail(std::string("index digit out of range: '") + d + "'");
        entries.push_back(d - '0');
        ++pos_;
      }
      if (entries.size() > 255) fail("multi-index too long");
    }
    JetCoord x(static_cast<unsigned>(std::stoul(field)), MultiIndex::from_entries(entries));
    return make(at, Atom{x.str(), x, false});
  }

  ExprPtr parameter_atom() {
    std::size_t at = pos_++;
    if (pos_ < text_.size() && (text_[pos_] == '1' || text_[pos_] == '2')) {
      std::string name = std::string("t") + text_[pos_++];
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) fail("unknown parameter");
      return make(at, Atom{name, JetCoord(), true});
    }
    fail("expected t1 or t2");
  }

  std::string_view text_;
  bool params_;
  std::size_t pos_ = 0;
};

template <class T, class AtomFn, class DivFn, class PowFn>
T evaluate(const ExprPtr& e, AtomFn&& atom, DivFn&& divide, PowFn&& power) {
  auto rec = [&](const ExprPtr& x) { return evaluate<T>(x, atom, divide, power); };
  return std::visit(
      [&](auto&& n) -> T {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Literal>) {
          return T(n.value);
        } else if constexpr (std::is_same_v<N, Atom>) {
          return atom(n, e->position);
        } else if constexpr (std::is_same_v<N, Negate>) {
          return -rec(n.operand);
        } else if constexpr (std::is_same_v<N, Power>) {
          return power(rec(n.base), n.exponent, e->position);
        } else {
          T a = rec(n.lhs), b = rec(n.rhs);
          switch (n.op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            default: return divide(a, b, e->position);
          }
        }
      },
      e->node);
}

}  // namespace

ExprPtr parse_expression(std::string_view text, bool allow_parameters) {
  return Parser(text, allow_parameters).parse();
}

Scalar to_scalar(const ExprPtr& e) {
  return evaluate<Scalar>(
      e,
      [](const Atom& a, std::size_t at) {
        if (a.parameter) throw ParseError("parameters are not allowed here", at);
        return Scalar::coord(a.coord);
      },
      [](const Scalar& a, const Scalar& b, std::size_t at) {
        if (b.is_zero()) throw ParseError("division by zero", at);
        return a / b;
      },
      [](const Scalar& a, long n, std::size_t at) {
        if (n < 0 && a.is_zero()) throw ParseError("division by zero", at);
        return a.pow(n);
      });
}

ParamPolynomial to_param_polynomial(const ExprPtr& e) {
  return evaluate<ParamPolynomial>(
      e,
      [](const Atom& a, std::size_t at) {
        if (!a.parameter) throw ParseError("jet coordinates are not allowed in a map", at);
        return ParamPolynomial::t(a.name == "t1" ? 1 : 2);
      },
      [](const ParamPolynomial& a, const ParamPolynomial& b, std::size_t at) {
        Rational c = b.evaluate(0, 0);
        if (!(b - ParamPolynomial(c)).is_zero()) throw ParseError("a map may only divide by constants", at);
        if (c == 0) throw ParseError("division by zero", at);
        return a * ParamPolynomial(Rational(1) / c);
      },
      [](const ParamPolynomial& a, long n, std::size_t at) {
        if (n < 0) throw ParseError("negative powers are not polynomial", at);
        return a.pow(static_cast<unsigned>(n));
      });
}

Scalar parse_scalar(std::string_view text) { return to_scalar(parse_expression(text)); }

Lagrangian parse_lagrangian(std::string_view text) {
  if (text == "paper-s4") return section4_fixture();
  if (text.starts_with("det:")) {
    auto body = text.substr(4);
    auto comma = body.find(',');
    auto number = [&](std::string_view s, std::size_t offset) -> unsigned {
      if (s.empty() || s.size() > 3 || s.find_first_not_of("0123456789") != std::string_view::npos)
        throw ParseError("expected det:<a>,<b>", 4 + offset);
      return static_cast<unsigned>(std::stoul(std::string(s)));
    };
    if (comma == std::string_view::npos) throw ParseError("expected det:<a>,<b>", 4);
    unsigned a = number(body.substr(0, comma), 0), b = number(body.substr(comma + 1), comma + 1);
    if (a == 0 || b == 0 || a > 255 || b > 255) throw ParseError("field number out of range", 4);
    if (a == b) throw ParseError("determinant fixture needs two distinct fields", 4);
    return determinant_fixture(a, b);
  }
  Scalar value = parse_scalar(text);
  if (value.max_order() > 2) throw ParseError("a Lagrangian must have jet order at most 2", 0);
  return Lagrangian(value);
}

std::vector<ParamPolynomial> parse_map(std::string_view text) {
  std::vector<ParamPolynomial> out;
  std::size_t start = 0;
  for (;;) {
    auto end = text.find(';', start);
    auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    try {
      out.push_back(to_param_polynomial(parse_expression(piece, true)));
    } catch (const ParseError& e) {
      throw ParseError("map component " + std::to_string(out.size() + 1) + ": " + e.message(), start + e.position());
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::pair<Rational, Rational> parse_point(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("expected <t1>,<t2>", 0);
  auto value = [](std::string_view s, std::size_t offset) {
    Scalar v;
    try {
      v = to_scalar(parse_expression(s));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), offset + e.position());
    }
    if (!v.is_constant()) throw ParseError("expected a rational number", offset);
    return v.num().constant_value();
  };
  auto a = value(text.substr(0, comma), 0);
  auto b = value(text.substr(comma + 1), comma + 1);
  return {a, b};
}

}  // namespace hvc::cli
