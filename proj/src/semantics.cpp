#include "ptpn/semantics.hpp"

#include <algorithm>
#include <functional>

namespace ptpn {

StepError::StepError(Reason reason, const std::string& message) : std::runtime_error(message), reason_(reason) {}

const char* reason_name(StepError::Reason reason) {
	switch (reason) {
	case StepError::Reason::NonPositiveDelay: return "non-positive-delay";
	case StepError::Reason::BindingNotEnabled: return "binding-not-enabled";
	case StepError::Reason::ProducedOutOfInterval: return "produced-age-out-of-interval";
	case StepError::Reason::ArityMismatch: return "arity-mismatch";
	}
	return "?";
}

ReplayError::ReplayError(std::size_t index, StepError::Reason reason, const std::string& message)
    : std::runtime_error("step " + std::to_string(index) + ": " + message), index_(index), reason_(reason) {}

Cost storage_rate(const Net& net, const Marking& m) {
	Cost rate = 0;
	for (const auto& t : m.tokens()) rate += net.place(t.place).cost;
	return rate;
}

TimedResult delay_step(const Net& net, const Marking& m, const Rational& d) {
	if (d <= 0) throw StepError(StepError::Reason::NonPositiveDelay, "delay must be positive, got " + to_string(d));
	std::vector<Token> aged = m.tokens();
	for (auto& t : aged) t.age += d;
	return {Marking(std::move(aged)), d * Rational(storage_rate(net, m))};
}

namespace {

// Assigns each token to a distinct arc with the same place whose interval holds its age.
bool match_arcs(const std::vector<Arc>& arcs, const std::vector<Token>& tokens) {
	if (arcs.size() != tokens.size()) return false;
	std::vector<bool> used(arcs.size(), false);
	std::function<bool(std::size_t)> go = [&](std::size_t i) {
		if (i == tokens.size()) return true;
		for (std::size_t a = 0; a < arcs.size(); ++a) {
			if (used[a] || arcs[a].place != tokens[i].place || !interval_contains(arcs[a].interval, tokens[i].age)) continue;
			used[a] = true;
			if (go(i + 1)) return true;
			used[a] = false;
		}
		return false;
	};
	return go(0);
}

bool same_places(const std::vector<Arc>& arcs, const std::vector<Token>& tokens) {
	std::vector<PlaceId> a, b;
	for (const auto& arc : arcs) a.push_back(arc.place);
	for (const auto& t : tokens) b.push_back(t.place);
	std::sort(a.begin(), a.end());
	std::sort(b.begin(), b.end());
	return a == b;
}

} // namespace

std::vector<std::vector<Token>> enabled_bindings(const Net& net, const Marking& m, TransitionId t) {
	const auto& inputs = net.transition(t).inputs;
	const auto& tokens = m.tokens();
	std::vector<std::vector<Token>> out;
	std::vector<bool> used(tokens.size(), false);
	std::vector<Token> pick;
	std::function<void(std::size_t)> go = [&](std::size_t arc) {
		if (arc == inputs.size()) {
			auto sorted = pick;
			std::sort(sorted.begin(), sorted.end());
			out.push_back(std::move(sorted));
			return;
		}
		for (std::size_t i = 0; i < tokens.size(); ++i) {
			if (used[i] || tokens[i].place != inputs[arc].place || !interval_contains(inputs[arc].interval, tokens[i].age))
				continue;
			// identical tokens give identical bindings
			if (i > 0 && !used[i - 1] && tokens[i - 1] == tokens[i]) continue;
			used[i] = true;
			pick.push_back(tokens[i]);
			go(arc + 1);
			pick.pop_back();
			used[i] = false;
		}
	};
	go(0);
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

FireResult fire_step(const Net& net, const Marking& m, TransitionId t, const std::vector<Token>& consumed,
                     const std::vector<Token>& produced) {
	const auto& tr = net.transition(t);
	if (!same_places(tr.inputs, consumed) || !same_places(tr.outputs, produced))
		throw StepError(StepError::Reason::ArityMismatch, "token places do not match the arcs of " + tr.name);
	if (!m.contains(consumed) || !match_arcs(tr.inputs, consumed))
		throw StepError(StepError::Reason::BindingNotEnabled, tr.name + " is not enabled with the given tokens");
	if (!match_arcs(tr.outputs, produced))
		throw StepError(StepError::Reason::ProducedOutOfInterval, "a produced age of " + tr.name + " is outside its arc interval");
	Marking next = m;
	for (const auto& tok : consumed) next.remove(tok);
	for (const auto& tok : produced) next.add(tok);
	return {std::move(next), tr.cost};
}

RunResult run(const Net& net, const Computation& c) {
	RunResult result{c.initial, Rational(0), {}};
	for (std::size_t i = 0; i < c.steps.size(); ++i) {
		try {
			if (const auto* d = std::get_if<Delay>(&c.steps[i])) {
				auto r = delay_step(net, result.final_marking, d->duration);
				result.final_marking = std::move(r.marking);
				result.step_costs.push_back(r.cost);
			} else {
				const auto& f = std::get<Fire>(c.steps[i]);
				auto r = fire_step(net, result.final_marking, f.transition, f.consumed, f.produced);
				result.final_marking = std::move(r.marking);
				result.step_costs.push_back(Rational(r.cost));
			}
		} catch (const StepError& e) {
			throw ReplayError(i, e.reason(), e.what());
		}
		result.total_cost += result.step_costs.back();
	}
	return result;
}

} // namespace ptpn
