#pragma once

#include "ptpn/semantics.hpp"

#include <stdexcept>
#include <vector>

namespace ptpn {

class NotDeltaForm : public std::domain_error {
public:
	using std::domain_error::domain_error;
};

// Throws std::invalid_argument unless 0 < delta < 1/5.
void check_delta(const Rational& delta);

bool is_delta_form(const Marking& m, const Rational& delta);

struct DeltaGroup {
	Rational fraction;
	std::vector<Token> tokens;
};

// high: fractions > 1 - delta, increasing; zero: integer ages; low: fractions in (0, delta), increasing.
struct DeltaDecomposition {
	std::vector<DeltaGroup> high;
	std::vector<Token> zero;
	std::vector<DeltaGroup> low;
};

DeltaDecomposition decompose_delta(const Marking& m, const Rational& delta);

// Instants t in (0, d] at which some token age is an integer, in increasing order,
// stopping once `limit` instants are collected.
std::vector<Rational> integer_instants(const Marking& m, const Rational& d, std::size_t limit);

bool is_detailed_delay(const Marking& m, const Rational& d);
std::vector<Rational> split_delay(const Marking& m, const Rational& d);

bool is_delta_computation(const Net& net, const Computation& c, const Rational& delta);

} // namespace ptpn
