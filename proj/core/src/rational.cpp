// Copyright 2026 The tdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tdm/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tdm {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  std::int64_t value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed number: '" + std::string(whole) +
                                  "'");
    }
    if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
      throw std::invalid_argument("number out of range: '" +
                                  std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) {
    throw std::invalid_argument("empty number");
  }
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) {
    throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  }

  Rational result;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_digits(text.substr(0, slash), whole);
    const std::int64_t den = parse_digits(text.substr(slash + 1), whole);
    if (den == 0 || slash == 0 || slash + 1 == text.size()) {
      throw std::invalid_argument("malformed fraction: '" + std::string(whole) +
                                  "'");
    }
    result = Rational(num, den);
  } else {
    const auto dot = text.find('.');
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw std::invalid_argument("malformed number: '" + std::string(whole) +
                                  "'");
    }
    if (frac_part.size() > 15) {
      throw std::invalid_argument("too many decimals: '" + std::string(whole) +
                                  "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t ip = int_part.empty() ? 0 : parse_digits(int_part, whole);
    const std::int64_t fp = frac_part.empty() ? 0 : parse_digits(frac_part, whole);
    if (ip > (std::numeric_limits<std::int64_t>::max() - fp) / scale) {
      throw std::invalid_argument("number out of range: '" + std::string(whole) +
                                  "'");
    }
    result = Rational(ip * scale + fp, scale);
  }
  return negative ? -result : result;
}

std::string format_rational(const Rational& value) {
  std::int64_t num = value.numerator();
  const std::int64_t den = value.denominator();
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  // Terminating iff the denominator has no prime factors besides 2 and 5.
  std::int64_t rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) {
    return sign + std::to_string(num) + "/" + std::to_string(den);
  }
  const int digits = std::max(twos, fives);
  std::string out = sign + std::to_string(num / den);
  std::int64_t remainder = num % den;
  if (digits > 0 && remainder != 0) {
    out += '.';
    for (int i = 0; i < digits && remainder != 0; ++i) {
      remainder *= 10;
      out += static_cast<char>('0' + remainder / den);
      remainder %= den;
    }
  }
  return out;
}

std::int64_t floor(const Rational& value) {
  const std::int64_t q = value.numerator() / value.denominator();
  const std::int64_t r = value.numerator() % value.denominator();
  return (r != 0 && value.numerator() < 0) ? q - 1 : q;
}

std::int64_t ceil(const Rational& value) {
  const std::int64_t q = value.numerator() / value.denominator();
  const std::int64_t r = value.numerator() % value.denominator();
  return (r != 0 && value.numerator() > 0) ? q + 1 : q;
}

Rational approximate(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot approximate a non-finite value");
  }
  // Stern-Brocot walk via continued fractions, keeping the best convergent or
  // semiconvergent whose denominator fits.
  const bool negative = value < 0;
  double x = std::fabs(value);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(frac);
    if (a_real > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t q2 = q0 + a * q1;
    if (q2 > max_denominator) {
      const std::int64_t k = (max_denominator - q0) / q1;
      const Rational semi(p0 + k * p1, q0 + k * q1);
      const Rational conv(p1, q1);
      const double es = std::fabs(to_double(semi) - x);
      const double ec = std::fabs(to_double(conv) - x);
      const Rational best = es < ec ? semi : conv;
      return negative ? -best : best;
    }
    const std::int64_t p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double rem = frac - a_real;
    if (rem < 1e-12) break;
    frac = 1.0 / rem;
  }
  const Rational best(p1, q1);
  return negative ? -best : best;
}

}  // namespace tdm
