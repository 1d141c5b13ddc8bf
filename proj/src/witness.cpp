#include "ptpn/witness.hpp"

#include "ptpn/delta_form.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace ptpn {

nlohmann::json witness_to_json(const Net& net, const Witness& w) {
	auto steps = nlohmann::json::array();
	Cost budget = w.budget;
	for (const auto& s : w.steps) {
		budget -= s.cost;
		nlohmann::json j{{"kind", kind_name(s.kind)}, {"cost", s.cost}, {"budget", budget},
		                 {"region", format_region(net, s.result)}};
		if (s.kind == StepKind::Fire) j["transition"] = net.transition(s.transition).name;
		if (s.kind == StepKind::TypeIII || s.kind == StepKind::TypeIV) j["split"] = s.split;
		steps.push_back(std::move(j));
	}
	return steps;
}

namespace {

// Fractional classes with signed offsets: H groups in (-delta, 0), Z at 0, L in (0, delta).
struct Group {
	Rational offset;
	std::vector<Token> tokens;
};

struct Classes {
	std::vector<Group> high;
	std::vector<Token> zero;
	std::vector<Group> low;

	std::optional<Rational> max_offset() const {
		if (!low.empty()) return low.back().offset;
		if (!zero.empty()) return Rational(0);
		if (!high.empty()) return high.back().offset;
		return std::nullopt;
	}
	std::optional<Rational> min_offset() const {
		if (!high.empty()) return high.front().offset;
		if (!zero.empty()) return Rational(0);
		if (!low.empty()) return low.front().offset;
		return std::nullopt;
	}
};

Classes classes_of(const Marking& m, const Rational& delta) {
	auto d = decompose_delta(m, delta);
	Classes c;
	for (auto& g : d.high) c.high.push_back({g.fraction - 1, std::move(g.tokens)});
	c.zero = std::move(d.zero);
	for (auto& g : d.low) c.low.push_back({g.fraction, std::move(g.tokens)});
	return c;
}

Token take(const Net& net, std::vector<Token>& tokens, const RToken& want) {
	for (auto it = tokens.begin(); it != tokens.end(); ++it)
		if (it->place == want.place && value_of_age(net, it->age) == want.value) {
			Token t = *it;
			tokens.erase(it);
			return t;
		}
	throw std::logic_error("no concrete token matches the removal");
}

Rational anchor(const Net& net, RVal v) { return Rational(v.is_omega() ? net.cmax() + 1 : v.value()); }

Fire realize_fire(const Net& net, const Marking& m, const RegionStep& step, const Rational& delta) {
	Classes c = classes_of(m, delta);
	Fire f{step.transition, {}, {}};
	for (const auto& rm : step.choice.removals) {
		if (rm.part == Part::Zero) {
			f.consumed.push_back(take(net, c.zero, rm.token));
			continue;
		}
		auto& word = rm.part == Part::High ? c.high : c.low;
		if (rm.cls >= word.size()) throw std::logic_error("removal class out of range");
		f.consumed.push_back(take(net, word[rm.cls].tokens, rm.token));
		if (word[rm.cls].tokens.empty()) word.erase(word.begin() + static_cast<std::ptrdiff_t>(rm.cls));
	}
	for (const auto& ins : step.choice.insertions) {
		Rational offset = 0;
		if (ins.mode == Insertion::Mode::Join) {
			offset = (ins.part == Part::High ? c.high : c.low).at(ins.index).offset;
		} else if (ins.mode == Insertion::Mode::Fresh) {
			auto maxo = c.max_offset(), mino = c.min_offset();
			Rational left, right;
			if (ins.part == Part::High) {
				const auto& w = c.high;
				left = ins.index == 0 ? std::max(Rational(-delta), maxo ? Rational(*maxo - delta) : Rational(-delta))
				                      : w[ins.index - 1].offset;
				right = ins.index == w.size() ? Rational(0) : w[ins.index].offset;
			} else {
				const auto& w = c.low;
				left = ins.index == 0 ? Rational(0) : w[ins.index - 1].offset;
				right = ins.index == w.size() ? std::min(delta, mino ? Rational(*mino + delta) : delta) : w[ins.index].offset;
			}
			offset = (left + right) / 2;
		}
		Rational age = anchor(net, ins.token.value) + offset;
		if (ins.part == Part::High) age += 1;
		Token tok{ins.token.place, age};
		f.produced.push_back(tok);
		if (ins.mode == Insertion::Mode::Zero) {
			c.zero.push_back(tok);
		} else {
			auto& word = ins.part == Part::High ? c.high : c.low;
			if (ins.mode == Insertion::Mode::Join)
				word[ins.index].tokens.push_back(tok);
			else
				word.insert(word.begin() + static_cast<std::ptrdiff_t>(ins.index), Group{offset, {tok}});
		}
	}
	return f;
}

} // namespace

Step realize_step(const Net& net, const Marking& m, const RegionStep& step, const Rational& delta) {
	if (step.kind == StepKind::Fire) return realize_fire(net, m, step, delta);
	Classes c = classes_of(m, delta);
	auto maxo = c.max_offset(), mino = c.min_offset();
	switch (step.kind) {
	case StepKind::TypeI: {
		if (c.zero.empty()) throw std::logic_error("type I needs integer-aged tokens");
		Rational gap = c.high.empty() ? delta : Rational(-c.high.back().offset);
		return Delay{std::min(gap, Rational(delta - *maxo)) / 2};
	}
	case StepKind::TypeII:
		if (!c.zero.empty() || c.high.empty()) throw std::logic_error("type II needs an empty zero class");
		return Delay{-c.high.back().offset};
	case StepKind::TypeIII: {
		const std::size_t k = step.split, n = c.low.size();
		if (k > n) throw std::logic_error("type III split out of range");
		Rational eta;
		if (k < n) {
			eta = ((k == 0 ? Rational(0) : c.low[k - 1].offset) + c.low[k].offset) / 2;
		} else {
			Rational top = maxo ? std::max(Rational(0), *maxo) : Rational(0);
			Rational room = mino ? std::min(delta, Rational(delta + *mino)) : delta;
			eta = (top + room) / 2;
		}
		return Delay{1 - eta};
	}
	case StepKind::TypeIV:
		if (step.split >= c.low.size()) throw std::logic_error("type IV split out of range");
		return Delay{1 - c.low[step.split].offset};
	case StepKind::Fire: break;
	}
	throw std::logic_error("unreachable");
}

Replay replay_witness(const Net& net, const Witness& w, const Rational& delta) {
	check_delta(delta);
	Replay out;
	// concretize spreads offsets over an arc of length delta; realize_step needs less.
	out.computation.initial = concretize(net, w.initial, delta / 2);
	Marking m = out.computation.initial;
	for (std::size_t i = 0; i < w.steps.size(); ++i) {
		const auto& s = w.steps[i];
		out.max_rate = std::max(out.max_rate, storage_rate(net, m));
		Step step = realize_step(net, m, s, delta);
		if (const auto* d = std::get_if<Delay>(&step)) {
			m = delay_step(net, m, d->duration).marking;
			++out.timed_steps;
		} else {
			const auto& f = std::get<Fire>(step);
			m = fire_step(net, m, f.transition, f.consumed, f.produced).marking;
		}
		if (!satisfies(net, m, s.result, delta))
			throw std::logic_error("witness step " + std::to_string(i) + " realizes a different region");
		out.computation.steps.push_back(std::move(step));
	}
	out.total_cost = run(net, out.computation).total_cost;
	out.bound = Rational(w.budget) + delta * Rational(out.timed_steps) * Rational(out.max_rate);
	return out;
}

} // namespace ptpn
