#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace leap {

using Rational = boost::rational<std::int64_t>;

/// Accepts "3", "2.25", "7/3". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Terminating decimals print as decimals ("2.3"), everything else as "p/q".
std::string format_rational(const Rational& r);

}  // namespace leap
