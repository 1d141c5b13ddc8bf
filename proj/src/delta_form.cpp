#include "ptpn/delta_form.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ptpn {

void check_delta(const Rational& delta) {
	if (delta <= 0 || delta >= Rational(1, 5))
		throw std::invalid_argument("delta must lie in (0, 1/5), got " + to_string(delta));
}

namespace {

bool near_integer(const Rational& f, const Rational& delta) { return f == 0 || f < delta || f > 1 - delta; }

} // namespace

bool is_delta_form(const Marking& m, const Rational& delta) {
	check_delta(delta);
	return std::all_of(m.tokens().begin(), m.tokens().end(),
	                   [&](const Token& t) { return near_integer(frac(t.age), delta); });
}

DeltaDecomposition decompose_delta(const Marking& m, const Rational& delta) {
	if (!is_delta_form(m, delta)) throw NotDeltaForm("marking is not in delta-form");
	std::map<Rational, std::vector<Token>> high, low;
	DeltaDecomposition out;
	for (const auto& t : m.tokens()) {
		Rational f = frac(t.age);
		if (f == 0)
			out.zero.push_back(t);
		else if (f < delta)
			low[f].push_back(t);
		else
			high[f].push_back(t);
	}
	for (auto& [f, ts] : high) out.high.push_back({f, std::move(ts)});
	for (auto& [f, ts] : low) out.low.push_back({f, std::move(ts)});
	return out;
}

std::vector<Rational> integer_instants(const Marking& m, const Rational& d, std::size_t limit) {
	std::set<Rational> firsts;
	for (const auto& t : m.tokens()) {
		Rational f = frac(t.age);
		firsts.insert(f == 0 ? Rational(1) : Rational(1 - f));
	}
	// instants repeat with period 1 per fractional class
	std::vector<Rational> out;
	for (Rational base = 0; out.size() < limit; base += 1) {
		bool any = false;
		for (const auto& first : firsts) {
			Rational at = base + first;
			if (at > d) break;
			any = true;
			out.push_back(at);
			if (out.size() == limit) break;
		}
		if (!any) break;
	}
	return out;
}

bool is_detailed_delay(const Marking& m, const Rational& d) { return integer_instants(m, d, 2).size() <= 1; }

std::vector<Rational> split_delay(const Marking& m, const Rational& d) {
	if (d <= 0) throw std::invalid_argument("delay must be positive");
	auto instants = integer_instants(m, d, static_cast<std::size_t>(-1));
	std::vector<Rational> out;
	Rational prev = 0;
	for (const auto& at : instants) {
		out.push_back(at - prev);
		prev = at;
	}
	if (prev < d) out.push_back(d - prev);
	return out;
}

bool is_delta_computation(const Net& net, const Computation& c, const Rational& delta) {
	check_delta(delta);
	run(net, c);
	for (const auto& step : c.steps) {
		if (const auto* d = std::get_if<Delay>(&step)) {
			const Rational& x = d->duration;
			if (!((x > 0 && x < delta) || (x > 1 - delta && x < 1))) return false;
		} else {
			for (const auto& t : std::get<Fire>(step).produced)
				if (!near_integer(frac(t.age), delta)) return false;
		}
	}
	return true;
}

} // namespace ptpn
