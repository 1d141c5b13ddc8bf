#include "ptpn/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ptpn {

namespace {

bool all_digits(std::string_view s) {
	if (s.empty()) return false;
	for (char c : s)
		if (!std::isdigit(static_cast<unsigned char>(c))) return false;
	return true;
}

// Leading zeros would select octal in the GMP string constructor.
Integer decimal(std::string digits) {
	auto nz = digits.find_first_not_of('0');
	return Integer{nz == std::string::npos ? std::string("0") : digits.substr(nz)};
}

} // namespace

Rational parse_rational(std::string_view text) {
	while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
	while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
	bool negative = false;
	if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
		negative = text.front() == '-';
		text.remove_prefix(1);
	}
	Rational value;
	if (auto slash = text.find('/'); slash != std::string_view::npos) {
		auto num = text.substr(0, slash), den = text.substr(slash + 1);
		if (!all_digits(num) || !all_digits(den))
			throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
		Integer d = decimal(std::string(den));
		if (d == 0) throw std::invalid_argument("zero denominator");
		value = Rational(decimal(std::string(num)), d);
	} else if (auto dot = text.find('.'); dot != std::string_view::npos) {
		auto whole = text.substr(0, dot), part = text.substr(dot + 1);
		if ((whole.empty() && part.empty()) || (!whole.empty() && !all_digits(whole)) ||
		    (!part.empty() && !all_digits(part)))
			throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
		Integer scale = 1;
		for (std::size_t i = 0; i < part.size(); ++i) scale *= 10;
		Integer digits = decimal(std::string(whole) + std::string(part));
		value = Rational(digits, scale);
	} else {
		if (!all_digits(text)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
		value = Rational(decimal(std::string(text)));
	}
	return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
	if (denominator(q) == 1) return numerator(q).str();
	return numerator(q).str() + "/" + denominator(q).str();
}

Integer floor_of(const Rational& q) {
	Integer n = numerator(q), d = denominator(q);
	Integer f = n / d;  // truncates toward zero
	if (n < 0 && f * d != n) f -= 1;
	return f;
}

Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }

bool is_integer(const Rational& q) { return denominator(q) == 1; }

} // namespace ptpn
