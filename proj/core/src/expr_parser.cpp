#include <cctype>
#include <sstream>

#include "fedo/expr/expr.hpp"

namespace fedo::expr {

ExprError::ExprError(Kind kind, const std::string& message, SourcePos pos)
    : std::runtime_error(std::string(to_string(kind)) + " error at " + std::to_string(pos.line) + ":" +
                         std::to_string(pos.column) + ": " + message),
      kind_(kind),
      pos_(pos),
      message_(message) {}

const char* to_string(ExprError::Kind kind) {
  switch (kind) {
    case ExprError::Kind::Syntax:
      return "syntax";
    case ExprError::Kind::Arity:
      return "arity";
    case ExprError::Kind::Variance:
      return "variance";
    case ExprError::Kind::Consistency:
      return "consistency";
    case ExprError::Kind::Binding:
      return "binding";
  }
  return "unknown";
}

std::string_view symbol_name(Symbol s) {
  switch (s) {
    case Symbol::Omega:
      return "omega";
    case Symbol::OmegaInv:
      return "omegaInv";
    case Symbol::R:
      return "R";
    case Symbol::K:
      return "K";
    case Symbol::Delta:
      return "delta";
  }
  return "?";
}

int symbol_arity(Symbol s) { return s == Symbol::R ? 4 : 2; }

bool symbol_natural_upper(Symbol s, int slot) {
  switch (s) {
    case Symbol::OmegaInv:
      return true;
    case Symbol::Delta:
      return slot == 0;
    default:
      return false;
  }
}

int symbol_weight(Symbol s) {
  switch (s) {
    case Symbol::Omega:
    case Symbol::R:
      return 2;
    case Symbol::OmegaInv:
      return -2;
    default:
      return 0;
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip();
    if (at_end()) fail("empty expression");
    Expr e = parse_expr();
    skip();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ExprError(ExprError::Kind::Syntax, msg, pos()); }

  SourcePos pos() const { return {line_, col_}; }
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[i_]; }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    skip();
    if (peek() != c) {
      if (at_end()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "', found '" + peek() + "'");
    }
    advance();
  }

  std::string identifier() {
    skip();
    if (!(std::isalpha(static_cast<unsigned char>(peek())))) fail("expected identifier");
    std::string s;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      s += peek();
      advance();
    }
    return s;
  }

  std::string digits() {
    std::string s;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      s += peek();
      advance();
    }
    return s;
  }

  Rational rational() {
    skip();
    std::string num = digits();
    skip();
    if (peek() == '/') {
      advance();
      skip();
      const SourcePos dp = pos();
      std::string den = digits();
      if (den.empty()) fail("expected denominator");
      if (den.find_first_not_of('0') == std::string::npos)
        throw ExprError(ExprError::Kind::Syntax, "denominator must be positive", dp);
      return Rational::parse(num + "/" + den);
    }
    return Rational::parse(num);
  }

  Index index(bool allow_bare) {
    skip();
    Index ix;
    ix.pos = pos();
    if (peek() == '^' || peek() == '_') {
      ix.upper = peek() == '^';
      advance();
      if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected index name after variance mark");
    } else if (allow_bare && std::isalpha(static_cast<unsigned char>(peek()))) {
      ix.marked = false;
    } else {
      fail("expected index ('^name' or '_name')");
    }
    ix.name = identifier();
    return ix;
  }

  Factor factor() {
    skip();
    Factor f;
    f.pos = pos();
    const std::string name = identifier();
    if (name == "alt") {
      f.is_alt = true;
      expect('(');
      f.indices.push_back(index(true));
      while (accept(',')) f.indices.push_back(index(true));
      expect(')');
      expect('{');
      skip();
      auto body = std::make_shared<Expr>(parse_expr());
      expect('}');
      f.body = std::move(body);
      return f;
    }
    static const std::pair<const char*, Symbol> names[] = {{"omega", Symbol::Omega},
                                                           {"omegaInv", Symbol::OmegaInv},
                                                           {"R", Symbol::R},
                                                           {"K", Symbol::K},
                                                           {"delta", Symbol::Delta}};
    bool found = false;
    for (const auto& [n, s] : names)
      if (name == n) {
        f.symbol = s;
        found = true;
      }
    if (!found)
      throw ExprError(ExprError::Kind::Syntax,
                      "unknown symbol '" + name + "' (expected omega, omegaInv, R, K, delta or alt)", f.pos);
    expect('[');
    f.indices.push_back(index(false));
    while (accept(',')) f.indices.push_back(index(false));
    expect(']');
    if (static_cast<int>(f.indices.size()) != symbol_arity(f.symbol))
      throw ExprError(ExprError::Kind::Arity,
                      std::string(symbol_name(f.symbol)) + " takes " + std::to_string(symbol_arity(f.symbol)) +
                          " indices, got " + std::to_string(f.indices.size()),
                      f.pos);
    return f;
  }

  Term term(bool negative) {
    skip();
    Term t;
    t.pos = pos();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coef = rational();
      accept('*');
    }
    if (negative) t.coef = -t.coef;
    t.factors.push_back(factor());
    while (accept('*')) t.factors.push_back(factor());
    return t;
  }

  Expr parse_expr() {
    Expr e;
    skip();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      advance();
    }
    e.terms.push_back(term(negative));
    for (;;) {
      skip();
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        advance();
        e.terms.push_back(term(negative));
      } else {
        break;
      }
    }
    return e;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

void print_index(std::ostringstream& os, const Index& ix) {
  if (ix.marked) os << (ix.upper ? '^' : '_');
  os << ix.name;
}

void print_expr(std::ostringstream& os, const Expr& e) {
  for (std::size_t t = 0; t < e.terms.size(); ++t) {
    const Term& term = e.terms[t];
    const bool neg = term.coef.sign() < 0;
    if (t == 0) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    const Rational mag = term.coef.abs();
    if (!(mag == Rational(1))) os << mag << " * ";
    for (std::size_t f = 0; f < term.factors.size(); ++f) {
      if (f) os << " * ";
      const Factor& fac = term.factors[f];
      if (fac.is_alt) {
        os << "alt(";
        for (std::size_t i = 0; i < fac.indices.size(); ++i) {
          if (i) os << ',';
          print_index(os, fac.indices[i]);
        }
        os << "){ ";
        print_expr(os, *fac.body);
        os << " }";
      } else {
        os << symbol_name(fac.symbol) << '[';
        for (std::size_t i = 0; i < fac.indices.size(); ++i) {
          if (i) os << ',';
          print_index(os, fac.indices[i]);
        }
        os << ']';
      }
    }
  }
}

}  // namespace

Expr parse(std::string_view text) {
  Expr e = Parser(text).parse_all();
  infer(e);
  return e;
}

std::string print(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

}  // namespace fedo::expr
