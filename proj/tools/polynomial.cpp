#include "polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>

namespace radial_jet::cli {

namespace {

constexpr int kMaxExponent = 1000;

enum class Kind { number, variable, symbol, end };

struct Token {
  Kind kind;
  std::string text;
  std::size_t offset;
  int index = 0;  // variable index, 1-based
};

[[noreturn]] void fail(std::size_t offset, const std::string& what) {
  throw PolynomialSyntaxError("polynomial syntax error at offset " + std::to_string(offset) + ": " + what);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto digit = [&](std::size_t j) { return j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])); };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (digit(i) || (c == '.' && digit(i + 1))) {
      const std::size_t start = i;
      while (digit(i)) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        while (digit(i)) ++i;
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (!digit(j)) fail(i, "malformed exponent");
        i = j;
        while (digit(i)) ++i;
      }
      out.push_back({Kind::number, std::string(text.substr(start, i - start)), start});
    } else if (c == 'z') {
      const std::size_t start = i++;
      if (!digit(i)) fail(start, "expected a variable index after 'z'");
      while (digit(i)) ++i;
      const std::string digits(text.substr(start + 1, i - start - 1));
      if (digits.size() > 6) fail(start, "variable index too large");
      const int index = std::stoi(digits);
      if (index < 1) fail(start, "variables are numbered from z1");
      out.push_back({Kind::variable, std::string(text.substr(start, i - start)), start, index});
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Kind::symbol, std::string(1, c), i});
      ++i;
    } else {
      fail(i, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Kind::end, "", text.size()});
  return out;
}

using Terms = std::map<std::vector<int>, Rational>;

class Parser {
 public:
  Parser(std::vector<Token> tokens, int variables) : tokens_(std::move(tokens)), variables_(variables) {}

  Terms parse() {
    Terms result = expression();
    if (peek().kind != Kind::end) fail(peek().offset, "unexpected '" + peek().text + "'");
    return result;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool accept(char symbol) {
    if (peek().kind == Kind::symbol && peek().text[0] == symbol) {
      ++pos_;
      return true;
    }
    return false;
  }

  Terms constant(const Rational& c) const {
    Terms t;
    if (sgn(c) != 0) t[std::vector<int>(static_cast<std::size_t>(variables_), 0)] = c;
    return t;
  }

  static void add(Terms& into, const Terms& other, int sign) {
    for (const auto& [alpha, c] : other) {
      auto& slot = into[alpha];
      slot += sign > 0 ? c : Rational(-c);
      if (sgn(slot) == 0) into.erase(alpha);
    }
  }

  static Terms multiply(const Terms& a, const Terms& b) {
    Terms out;
    for (const auto& [alpha, x] : a) {
      for (const auto& [beta, y] : b) {
        std::vector<int> gamma(alpha.size());
        std::transform(alpha.begin(), alpha.end(), beta.begin(), gamma.begin(), std::plus<>());
        auto& slot = out[gamma];
        slot += x * y;
        if (sgn(slot) == 0) out.erase(gamma);
      }
    }
    return out;
  }

  Terms expression() {
    Terms result = term();
    while (true) {
      if (accept('+'))
        add(result, term(), 1);
      else if (accept('-'))
        add(result, term(), -1);
      else
        return result;
    }
  }

  Terms term() {
    Terms result = unary();
    while (true) {
      if (accept('*')) {
        result = multiply(result, unary());
      } else if (peek().kind == Kind::symbol && peek().text == "/") {
        const std::size_t at = peek().offset;
        ++pos_;
        const Terms divisor = unary();
        if (divisor.empty()) fail(at, "division by zero");
        if (divisor.size() != 1 || std::any_of(divisor.begin()->first.begin(), divisor.begin()->first.end(),
                                               [](int e) { return e != 0; }))
          fail(at, "only division by a constant is supported");
        const Rational inv = 1 / divisor.begin()->second;
        for (auto& [alpha, c] : result) c *= inv;
      } else if (peek().kind == Kind::number || peek().kind == Kind::variable || peek().text == "(") {
        fail(peek().offset, "missing '*' before '" + peek().text + "'");
      } else {
        return result;
      }
    }
  }

  Terms unary() {
    if (accept('-')) {
      Terms t = unary();
      for (auto& [alpha, c] : t) c = -c;
      return t;
    }
    if (accept('+')) return unary();
    return power();
  }

  Terms power() {
    Terms base = primary();
    if (!accept('^')) return base;
    const Token& tok = peek();
    if (tok.kind != Kind::number || !std::all_of(tok.text.begin(), tok.text.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      fail(tok.offset, "exponent must be a non-negative integer");
    if (tok.text.size() > 4 || std::stoi(tok.text) > kMaxExponent) fail(tok.offset, "exponent too large");
    int e = std::stoi(tok.text);
    ++pos_;
    Terms result = constant(1);
    while (e > 0) {
      if (e & 1) result = multiply(result, base);
      e >>= 1;
      if (e > 0) base = multiply(base, base);
    }
    return result;
  }

  Terms primary() {
    const Token tok = peek();
    switch (tok.kind) {
      case Kind::number: {
        ++pos_;
        try {
          return constant(parse_rational(tok.text));
        } catch (const std::invalid_argument& e) {
          fail(tok.offset, e.what());
        }
      }
      case Kind::variable: {
        ++pos_;
        std::vector<int> alpha(static_cast<std::size_t>(variables_), 0);
        alpha[static_cast<std::size_t>(tok.index - 1)] = 1;
        return Terms{{alpha, Rational(1)}};
      }
      case Kind::symbol:
        if (tok.text == "(") {
          ++pos_;
          Terms inner = expression();
          if (!accept(')')) fail(peek().offset, "expected ')'");
          return inner;
        }
        fail(tok.offset, "unexpected '" + tok.text + "'");
      case Kind::end:
        break;
    }
    fail(tok.offset, "unexpected end of input");
  }

  std::vector<Token> tokens_;
  int variables_;
  std::size_t pos_ = 0;
};

}  // namespace

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms) d = std::max(d, std::accumulate(alpha.begin(), alpha.end(), 0));
  return d;
}

Polynomial parse_polynomial(std::string_view text) {
  auto tokens = tokenize(text);
  if (tokens.size() == 1) fail(0, "empty polynomial");
  int variables = 1;
  for (const auto& t : tokens)
    if (t.kind == Kind::variable) variables = std::max(variables, t.index);
  Polynomial p;
  p.variables = variables;
  p.terms = Parser(std::move(tokens), variables).parse();
  return p;
}

ExactJet to_jet(const Polynomial& p, int n, int max_degree) {
  if (n < p.variables)
    throw ShapeError("polynomial uses z" + std::to_string(p.variables) + " but n = " + std::to_string(n));
  ExactJet jet(n, max_degree);
  for (const auto& [alpha, c] : p.terms) {
    std::vector<int> padded(alpha);
    padded.resize(static_cast<std::size_t>(n), 0);
    const MultiIndex index(padded);
    if (index.weight() <= max_degree) jet.set(index, c);
  }
  return jet;
}

}  // namespace radial_jet::cli
