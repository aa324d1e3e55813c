#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace latq {

// Exact entries are kept as arbitrary-precision rationals so that catalog
// determinants and duality checks carry no float drift.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

// Accepts "p", "-p" and "p/q" tokens. Decimal-point or exponent literals are
// not exact entries and yield nullopt.
std::optional<Rational> parse_exact_entry(std::string_view token);

std::string format_exact(const Rational& r);

}  // namespace latq
