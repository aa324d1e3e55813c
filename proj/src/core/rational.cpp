#include "core/rational.hpp"

#include <cctype>

namespace latq {

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_exact_entry(std::string_view token) {
  auto slash = token.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_token(token)) return std::nullopt;
    return Rational(BigInt(std::string(token)));
  }
  std::string_view num = token.substr(0, slash);
  std::string_view den = token.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
  BigInt q{std::string(den)};
  if (q == 0) return std::nullopt;
  return Rational(BigInt(std::string(num)), q);
}

std::string format_exact(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace latq
