#include "leap/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "leap/errors.hpp"

namespace leap {
namespace {

std::int64_t parse_digits(std::string_view text, std::size_t offset) {
  if (text.empty()) throw ParseError("expected digits", offset);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("invalid number '" + std::string(text) + "'", offset);
  }
  return value;
}

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return !s.empty();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num)) throw ParseError("invalid numerator", 0);
    if (!all_digits(den)) throw ParseError("invalid denominator", slash + 1);
    std::int64_t d = parse_digits(den, slash + 1);
    if (d == 0) throw ParseError("zero denominator", slash + 1);
    return Rational(parse_digits(num, 0), d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!all_digits(whole)) throw ParseError("invalid number", 0);
    if (!all_digits(frac)) throw ParseError("invalid fraction digits", dot + 1);
    if (frac.size() > 15) throw ParseError("too many fraction digits", dot + 1);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(parse_digits(whole, 0)) + Rational(parse_digits(frac, dot + 1), scale);
  }
  if (!all_digits(text)) throw ParseError("invalid number '" + std::string(text) + "'", 0);
  return Rational(parse_digits(text, 0));
}

std::string format_rational(const Rational& r) {
  std::int64_t den = r.denominator();
  std::int64_t rest = den;
  while (rest % 2 == 0) rest /= 2;
  while (rest % 5 == 0) rest /= 5;
  if (rest != 1) return std::to_string(r.numerator()) + "/" + std::to_string(den);

  std::int64_t num = r.numerator();
  std::string sign = num < 0 ? "-" : "";
  if (num < 0) num = -num;
  std::string out = sign + std::to_string(num / den);
  std::int64_t rem = num % den;
  if (rem == 0) return out;
  out += '.';
  while (rem != 0) {
    rem *= 10;
    out += static_cast<char>('0' + rem / den);
    rem %= den;
  }
  return out;
}

}  // namespace leap
