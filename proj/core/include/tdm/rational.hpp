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

#ifndef TDM_RATIONAL_HPP_
#define TDM_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace tdm {

// Exact arithmetic for rates and latencies. Denominators stay small (powers of
// ten from decimal input times slot counts), so 64-bit components suffice.
using Rational = boost::rational<std::int64_t>;

// Parses "0.0858", "12.5", "3", "-1.25" or "7/3". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Shortest exact rendering: a terminating decimal when one exists, else "p/q".
std::string format_rational(const Rational& value);

std::int64_t floor(const Rational& value);
std::int64_t ceil(const Rational& value);

inline double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) /
         static_cast<double>(value.denominator());
}

// Nearest fraction p/q with q <= max_denominator (continued fractions). Used to
// snap floating LP objectives back onto the exact grid they live on.
Rational approximate(double value, std::int64_t max_denominator);

}  // namespace tdm

#endif  // TDM_RATIONAL_HPP_
