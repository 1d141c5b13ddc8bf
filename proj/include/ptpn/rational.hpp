#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace ptpn {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

// Accepts "p", "p/q" and finite decimals such as "2.45".
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

Integer floor_of(const Rational& q);
Rational frac(const Rational& q);
bool is_integer(const Rational& q);

} // namespace ptpn
