#include "eqgb/text.hpp"

#include <cctype>
#include <sstream>

#include "eqgb/errors.hpp"

namespace eqgb {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::uint32_t ring_width) : s_(text), width_(ring_width) {}

  Polynomial polynomial() {
    std::vector<Term> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
      skip_ws();
    }
    for (;;) {
      Term t = term();
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'", pos_ - 1);
      negative = op == '-';
      skip_ws();
    }
    return Polynomial(terms);
  }

  void expect_end() {
    skip_ws();
    if (!at_end()) fail("unexpected trailing input", pos_);
  }

 private:
  Term term() {
    Rational coeff = 1;
    std::vector<Monomial::Factor> factors;
    for (;;) {
      skip_ws();
      if (peek() == 'x') {
        factors.push_back(factor());
      } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff *= number();
      } else {
        fail("expected a coefficient or a variable x[i,j]", pos_);
      }
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return Term{coeff, Monomial(std::move(factors))};
  }

  Monomial::Factor factor() {
    const std::size_t start = pos_;
    expect('x');
    expect('[');
    skip_ws();
    std::uint32_t row = integer();
    skip_ws();
    expect(',');
    skip_ws();
    std::uint32_t col = integer();
    skip_ws();
    expect(']');
    std::uint32_t exp = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      exp = integer();
    }
    if (row == 0 || col == 0) throw RangeError("indices start at 1 (position " + std::to_string(start) + ")");
    if (width_ != 0 && row > width_) {
      throw RangeError("row " + std::to_string(row) + " exceeds ring width " + std::to_string(width_) +
                       " (position " + std::to_string(start) + ")");
    }
    return {VarIndex{row, col}, exp};
  }

  Rational number() {
    const std::size_t start = pos_;
    std::string digits = digit_run();
    Rational q(mpz_class(digits), 1);
    if (peek() == '/') {
      ++pos_;
      std::string den = digit_run();
      mpz_class d(den);
      if (d == 0) fail("zero denominator", start);
      q = Rational(mpz_class(digits), d);
      q.canonicalize();
    }
    return q;
  }

  std::uint32_t integer() {
    const std::size_t start = pos_;
    std::string digits = digit_run();
    if (digits.size() > 9) fail("index too large", start);
    return static_cast<std::uint32_t>(std::stoul(digits));
  }

  std::string digit_run() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected digits", start);
    return std::string(s_.substr(start, pos_ - start));
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }

  [[noreturn]] static void fail(const std::string& what, std::size_t at) { throw ParseError(what, at); }

  std::string_view s_;
  std::uint32_t width_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::uint32_t ring_width) {
  Parser p(text, ring_width);
  Polynomial f = p.polynomial();
  p.expect_end();
  return f;
}

Monomial parse_monomial(std::string_view text, std::uint32_t ring_width) {
  Polynomial f = parse_polynomial(text, ring_width);
  if (f.size() != 1 || f.leading_coeff() != 1) throw ParseError("expected a single monomial", 0);
  return f.leading_monomial();
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += "x[" + std::to_string(v.row) + "," + std::to_string(v.col) + "]";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += to_string(m);
    } else {
      out += to_string(mag) + "*" + to_string(m);
    }
  }
  return out;
}

std::string to_string(const ShiftMap& p) {
  if (p.is_identity()) return "id";
  std::string out;
  for (const auto& [d, e] : p.points()) {
    if (!out.empty()) out += ", ";
    out += std::to_string(d) + "->" + std::to_string(e);
  }
  return out;
}

}  // namespace eqgb
