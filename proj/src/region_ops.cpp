#include "ptpn/region_ops.hpp"

#include "ptpn/delta_form.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ptpn {

bool class_sat(Part part, RVal v, const Interval& i) {
	if (v.is_omega()) return i.unbounded();
	std::uint32_t k = v.value();
	switch (part) {
	case Part::Zero: return interval_contains(i, Rational(k));
	case Part::Low: return i.lo <= k && (i.unbounded() || k < *i.hi);
	case Part::High: return i.lo <= k && (i.unbounded() || k + 1 <= *i.hi);
	}
	return false;
}

RVal value_of_age(const Net& net, const Rational& age) {
	if (age >= Rational(net.cmax() + 1)) return RVal::omega();
	return RVal::fin(static_cast<std::uint32_t>(floor_of(age)));
}

namespace {

Multiset abstract_tokens(const Net& net, const std::vector<Token>& tokens) {
	Multiset out;
	for (const auto& t : tokens) out.push_back({t.place, value_of_age(net, t.age)});
	normalize(out);
	return out;
}

Rational age_for(const Net& net, RVal v, const Rational& fraction) {
	return Rational(v.is_omega() ? net.cmax() + 1 : v.value()) + fraction;
}

} // namespace

Region abstract(const Net& net, const Marking& m, const Rational& delta) {
	auto d = decompose_delta(m, delta);
	Region r;
	for (const auto& g : d.high) r.high.push_back(abstract_tokens(net, g.tokens));
	r.zero = abstract_tokens(net, d.zero);
	for (const auto& g : d.low) r.low.push_back(abstract_tokens(net, g.tokens));
	return r;
}

bool satisfies(const Net& net, const Marking& m, const Region& r, const Rational& delta) {
	return is_delta_form(m, delta) && abstract(net, m, delta) == r;
}

Marking concretize(const Net& net, const Region& r, const Rational& delta) {
	check_delta(delta);
	std::vector<Token> tokens;
	const std::size_t h = r.high.size(), n = r.low.size();
	for (std::size_t i = 1; i <= h; ++i) {
		Rational f = 1 - delta * Rational(h + 1 - i, h + 1);
		for (const auto& t : r.high[i - 1]) tokens.push_back({t.place, age_for(net, t.value, f)});
	}
	for (const auto& t : r.zero) tokens.push_back({t.place, age_for(net, t.value, Rational(0))});
	for (std::size_t j = 1; j <= n; ++j) {
		Rational f = delta * Rational(j, n + 1);
		for (const auto& t : r.low[j - 1]) tokens.push_back({t.place, age_for(net, t.value, f)});
	}
	return Marking(std::move(tokens));
}

std::optional<Region> succ_type1(const Region& r) {
	if (r.zero.empty()) return std::nullopt;
	Region out;
	out.high = r.high;
	out.low.reserve(r.low.size() + 1);
	out.low.push_back(r.zero);
	out.low.insert(out.low.end(), r.low.begin(), r.low.end());
	return out;
}

std::optional<Region> succ_type2(const Net& net, const Region& r) {
	if (!r.zero.empty() || r.high.empty()) return std::nullopt;
	Region out;
	out.high.assign(r.high.begin(), r.high.end() - 1);
	out.zero = incremented(r.high.back(), net.cmax());
	out.low = r.low;
	return out;
}

Region succ_typeB(const Net& net, const Region& r, DelayKind kind, std::size_t split) {
	const std::size_t n = r.low.size();
	if (kind == DelayKind::III ? split > n : split >= n) throw std::out_of_range("invalid split position");
	Region out;
	for (const auto& m : r.high) out.high.push_back(incremented(m, net.cmax()));
	if (!r.zero.empty()) out.high.push_back(r.zero);
	out.high.insert(out.high.end(), r.low.begin(), r.low.begin() + static_cast<std::ptrdiff_t>(split));
	std::size_t rest = split;
	if (kind == DelayKind::IV) {
		out.zero = incremented(r.low[split], net.cmax());
		rest = split + 1;
	}
	for (std::size_t j = rest; j < n; ++j) out.low.push_back(incremented(r.low[j], net.cmax()));
	return out;
}

Cost token_cost(const Net& net, const Multiset& m) {
	Cost c = 0;
	for (const auto& t : m) c += net.place(t.place).cost;
	return c;
}

Cost token_cost(const Net& net, const Region& r) {
	Cost c = token_cost(net, r.zero);
	for (const auto& m : r.high) c += token_cost(net, m);
	for (const auto& m : r.low) c += token_cost(net, m);
	return c;
}

void apply_removal(Region& r, const Removal& rm) {
	if (rm.part == Part::Zero) {
		if (!erase_token(r.zero, rm.token)) throw std::logic_error("removal of a missing token");
		return;
	}
	auto& word = rm.part == Part::High ? r.high : r.low;
	if (rm.cls >= word.size() || !erase_token(word[rm.cls], rm.token)) throw std::logic_error("removal of a missing token");
	if (word[rm.cls].empty()) word.erase(word.begin() + static_cast<std::ptrdiff_t>(rm.cls));
}

void apply_insertion(Region& r, const Insertion& ins) {
	if (ins.mode == Insertion::Mode::Zero) {
		insert_token(r.zero, ins.token);
		return;
	}
	auto& word = ins.part == Part::High ? r.high : r.low;
	if (ins.mode == Insertion::Mode::Join)
		insert_token(word.at(ins.index), ins.token);
	else
		word.insert(word.begin() + static_cast<std::ptrdiff_t>(ins.index), Multiset{ins.token});
}

namespace {

std::vector<RVal> all_values(const Net& net) {
	std::vector<RVal> out;
	for (std::uint32_t k = 0; k <= net.cmax(); ++k) out.push_back(RVal::fin(k));
	out.push_back(RVal::omega());
	return out;
}

void removals_of(const Region& r, const Arc& arc, std::vector<Removal>& out) {
	auto scan = [&](Part part, std::size_t cls, const Multiset& m) {
		for (std::size_t i = 0; i < m.size(); ++i) {
			if (i > 0 && m[i] == m[i - 1]) continue;
			if (m[i].place == arc.place && class_sat(part, m[i].value, arc.interval)) out.push_back({part, cls, m[i]});
		}
	};
	for (std::size_t c = 0; c < r.high.size(); ++c) scan(Part::High, c, r.high[c]);
	scan(Part::Zero, 0, r.zero);
	for (std::size_t c = 0; c < r.low.size(); ++c) scan(Part::Low, c, r.low[c]);
}

void insertions_of(const Net& net, const Region& r, const Arc& arc, std::vector<Insertion>& out) {
	for (RVal v : all_values(net)) {
		RToken tok{arc.place, v};
		if (class_sat(Part::Zero, v, arc.interval)) out.push_back({Insertion::Mode::Zero, Part::Zero, 0, tok});
		for (Part part : {Part::High, Part::Low}) {
			if (!class_sat(part, v, arc.interval)) continue;
			const auto& word = part == Part::High ? r.high : r.low;
			for (std::size_t c = 0; c < word.size(); ++c) out.push_back({Insertion::Mode::Join, part, c, tok});
			for (std::size_t g = 0; g <= word.size(); ++g) out.push_back({Insertion::Mode::Fresh, part, g, tok});
		}
	}
}

} // namespace

std::vector<FireOutcome> fire_region_choices(const Net& net, const Region& r, TransitionId t) {
	const auto& tr = net.transition(t);
	std::map<Region, FireChoice> layer{{r, FireChoice{}}};
	for (const auto& arc : tr.inputs) {
		std::map<Region, FireChoice> next;
		for (const auto& [region, choice] : layer) {
			std::vector<Removal> opts;
			removals_of(region, arc, opts);
			for (const auto& rm : opts) {
				Region child = region;
				apply_removal(child, rm);
				if (next.count(child)) continue;
				FireChoice c = choice;
				c.removals.push_back(rm);
				next.emplace(std::move(child), std::move(c));
			}
		}
		layer = std::move(next);
	}
	for (const auto& arc : tr.outputs) {
		std::map<Region, FireChoice> next;
		for (const auto& [region, choice] : layer) {
			std::vector<Insertion> opts;
			insertions_of(net, region, arc, opts);
			for (const auto& ins : opts) {
				Region child = region;
				apply_insertion(child, ins);
				if (next.count(child)) continue;
				FireChoice c = choice;
				c.insertions.push_back(ins);
				next.emplace(std::move(child), std::move(c));
			}
		}
		layer = std::move(next);
	}
	std::vector<FireOutcome> out;
	out.reserve(layer.size());
	for (auto& [region, choice] : layer) out.push_back({region, std::move(choice)});
	return out;
}

std::vector<Region> fire_region(const Net& net, const Region& r, TransitionId t) {
	std::vector<Region> out;
	for (auto& o : fire_region_choices(net, r, t)) out.push_back(std::move(o.region));
	return out;
}

const char* kind_name(StepKind k) {
	switch (k) {
	case StepKind::TypeI: return "I";
	case StepKind::TypeII: return "II";
	case StepKind::TypeIII: return "III";
	case StepKind::TypeIV: return "IV";
	case StepKind::Fire: return "fire";
	}
	return "?";
}

bool is_type_a(StepKind k) { return k == StepKind::TypeI || k == StepKind::TypeII || k == StepKind::Fire; }

std::vector<RegionStep> succ_A(const Net& net, const Region& r) {
	std::vector<RegionStep> out;
	if (auto s = succ_type1(r)) out.push_back({StepKind::TypeI, std::move(*s), 0, 0, 0, {}});
	if (auto s = succ_type2(net, r)) out.push_back({StepKind::TypeII, std::move(*s), 0, 0, 0, {}});
	for (TransitionId t = 0; t < net.transitions().size(); ++t)
		for (auto& o : fire_region_choices(net, r, t))
			out.push_back({StepKind::Fire, std::move(o.region), net.transition(t).cost, t, 0, std::move(o.choice)});
	return out;
}

std::vector<RegionStep> succ_B(const Net& net, const Region& r) {
	std::vector<RegionStep> out;
	const Cost cost = token_cost(net, r);
	for (std::size_t k = 0; k <= r.low.size(); ++k)
		out.push_back({StepKind::TypeIII, succ_typeB(net, r, DelayKind::III, k), cost, 0, k, {}});
	for (std::size_t k = 0; k < r.low.size(); ++k)
		out.push_back({StepKind::TypeIV, succ_typeB(net, r, DelayKind::IV, k), cost, 0, k, {}});
	return out;
}

} // namespace ptpn
