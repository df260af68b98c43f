// SPDX-License-Identifier: Apache-2.0
#include "bclab/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

#include "bclab/error.hpp"

namespace bclab {

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::int64_t IntPoly::coeff(int n) const noexcept {
  if (n < 0 || n >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(n)];
}

double IntPoly::eval(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + static_cast<double>(*it);
  }
  return acc;
}

std::complex<long double> IntPoly::eval(std::complex<long double> z) const noexcept {
  std::complex<long double> acc{0.0L, 0.0L};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + static_cast<long double>(*it);
  }
  return acc;
}

double IntPoly::norm() const noexcept {
  double s = 0.0;
  for (auto c : coeffs_) s += static_cast<double>(c) * static_cast<double>(c);
  return std::sqrt(s);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
    }
  }

  IntPoly run() {
    if (s_.empty()) fail("empty polynomial");
    std::vector<std::int64_t> coeffs;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [coef, power] = term();
      if (power >= coeffs.size()) coeffs.resize(power + 1, 0);
      coeffs[power] += sign * coef;
    }
    return IntPoly(std::move(coeffs));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw UsageError("cannot parse polynomial '" + s_ + "': " + msg);
  }

  std::int64_t number() {
    std::int64_t v = 0;
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const int d = peek() - '0';
      if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) fail("coefficient overflow");
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected a number at position " + std::to_string(pos_));
    return v;
  }

  std::pair<std::int64_t, std::size_t> term() {
    std::int64_t coef = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef = number();
      have_coef = true;
      if (peek() == '*') {
        ++pos_;
        if (peek() != 'x') fail("expected 'x' after '*'");
      }
    }
    if (peek() != 'x') {
      if (!have_coef) fail("expected a term at position " + std::to_string(pos_));
      return {coef, 0};
    }
    ++pos_;
    std::size_t power = 1;
    if (peek() == '^') {
      ++pos_;
      const auto p = number();
      if (p > 4096) fail("exponent too large");
      power = static_cast<std::size_t>(p);
    }
    return {coef, power};
  }

  std::string s_;
  std::size_t pos_ = 0;
};

void append_term(std::string& out, std::int64_t c, int power, bool leading_term) {
  const std::int64_t mag = c < 0 ? -c : c;
  if (leading_term) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (power == 0 || mag != 1) out += std::to_string(mag);
  if (power >= 1) out += "x";
  if (power >= 2) out += "^" + std::to_string(power);
}

}  // namespace

IntPoly IntPoly::parse(std::string_view text) { return Parser(text).run(); }

std::string IntPoly::to_string(bool ascending) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool leading_term = true;
  const int d = degree();
  for (int i = 0; i <= d; ++i) {
    const int power = ascending ? i : d - i;
    const auto c = coeffs_[static_cast<std::size_t>(power)];
    if (c == 0) continue;
    append_term(out, c, power, leading_term);
    leading_term = false;
  }
  return out;
}

}  // namespace bclab
