#include "ptpn/pre.hpp"

#include <algorithm>
#include <set>

namespace ptpn {

namespace {

std::vector<RVal> all_values(const Net& net) {
	std::vector<RVal> out;
	for (std::uint32_t k = 0; k <= net.cmax(); ++k) out.push_back(RVal::fin(k));
	out.push_back(RVal::omega());
	return out;
}

// Tokens that may appear in a predecessor without being covered by c.
std::vector<RToken> extra_tokens(const Net& net, Order ord) {
	std::vector<RToken> out;
	for (PlaceId p = 0; p < net.places().size(); ++p) {
		if (ord == Order::Free && !net.is_free(p)) continue;
		for (RVal v : all_values(net)) out.push_back({p, v});
	}
	return out;
}

std::vector<std::vector<Multiset>> word_preimages(const Net& net, const std::vector<Multiset>& word) {
	std::vector<std::vector<Multiset>> out{{}};
	for (const auto& m : word) {
		auto options = preimages(net, m);
		if (options.empty()) return {};
		std::vector<std::vector<Multiset>> next;
		for (const auto& prefix : out)
			for (const auto& o : options) {
				auto w = prefix;
				w.push_back(o);
				next.push_back(std::move(w));
			}
		out = std::move(next);
	}
	return out;
}

} // namespace

std::vector<Multiset> preimages(const Net& net, const Multiset& m) {
	std::set<Multiset> out{Multiset{}};
	for (const auto& t : m) {
		std::vector<RVal> options;
		if (t.value.is_omega()) {
			options = {RVal::fin(net.cmax()), RVal::omega()};
		} else if (t.value.value() > 0) {
			options = {RVal::fin(t.value.value() - 1)};
		} else {
			return {};
		}
		std::set<Multiset> next;
		for (const auto& prefix : out)
			for (RVal v : options) {
				auto grown = prefix;
				insert_token(grown, {t.place, v});
				next.insert(std::move(grown));
			}
		out = std::move(next);
	}
	return {out.begin(), out.end()};
}

std::vector<PreResult> pre_type1_steps(const Net& net, const Configuration& c, Order ord) {
	std::vector<PreResult> out;
	const Region& r = c.region;
	if (!r.zero.empty()) return out;
	if (!r.low.empty()) {
		Region p{r.high, r.low.front(), {r.low.begin() + 1, r.low.end()}};
		out.push_back({{std::move(p), c.budget}, StepKind::TypeI, 0, 0});
	}
	for (const auto& x : extra_tokens(net, ord)) out.push_back({{Region{r.high, Multiset{x}, r.low}, c.budget}, StepKind::TypeI, 0, 0});
	return out;
}

std::vector<PreResult> pre_type2_steps(const Net& net, const Configuration& c, Order ord) {
	std::vector<PreResult> out;
	const Region& r = c.region;
	std::vector<Multiset> tops;
	if (r.zero.empty()) {
		for (const auto& x : extra_tokens(net, ord)) tops.push_back(Multiset{x});
	} else {
		tops = preimages(net, r.zero);
	}
	for (auto& top : tops) {
		Region p{r.high, {}, r.low};
		p.high.push_back(std::move(top));
		out.push_back({{std::move(p), c.budget}, StepKind::TypeII, 0, 0});
	}
	return out;
}

std::vector<PreResult> pre_discrete_steps(const Net& net, TransitionId t, const Configuration& c, Cost cap, Order ord) {
	const auto& tr = net.transition(t);
	std::vector<PreResult> out;
	if (c.budget > cap || tr.cost > cap - c.budget) return out;

	// outputs: match against tokens of c, or leave unmatched (absorbed by the upward closure)
	std::set<Region> layer{c.region};
	for (const auto& arc : tr.outputs) {
		std::set<Region> next;
		for (const auto& r : layer) {
			if (ord == Order::All || net.is_free(arc.place)) next.insert(r);
			auto scan = [&](Part part, std::size_t cls, const Multiset& m) {
				for (std::size_t i = 0; i < m.size(); ++i) {
					if ((i > 0 && m[i] == m[i - 1]) || m[i].place != arc.place || !class_sat(part, m[i].value, arc.interval))
						continue;
					Region child = r;
					apply_removal(child, {part, cls, m[i]});
					next.insert(std::move(child));
				}
			};
			for (std::size_t k = 0; k < r.high.size(); ++k) scan(Part::High, k, r.high[k]);
			scan(Part::Zero, 0, r.zero);
			for (std::size_t k = 0; k < r.low.size(); ++k) scan(Part::Low, k, r.low[k]);
		}
		layer = std::move(next);
	}
	// inputs: every placement satisfying the class condition
	for (const auto& arc : tr.inputs) {
		std::set<Region> next;
		for (const auto& r : layer)
			for (RVal v : all_values(net)) {
				RToken tok{arc.place, v};
				if (class_sat(Part::Zero, v, arc.interval)) {
					Region child = r;
					insert_token(child.zero, tok);
					next.insert(std::move(child));
				}
				for (Part part : {Part::High, Part::Low}) {
					if (!class_sat(part, v, arc.interval)) continue;
					const auto& word = part == Part::High ? r.high : r.low;
					for (std::size_t k = 0; k < word.size(); ++k) {
						Region child = r;
						apply_insertion(child, {Insertion::Mode::Join, part, k, tok});
						next.insert(std::move(child));
					}
					for (std::size_t g = 0; g <= word.size(); ++g) {
						Region child = r;
						apply_insertion(child, {Insertion::Mode::Fresh, part, g, tok});
						next.insert(std::move(child));
					}
				}
			}
		layer = std::move(next);
	}
	for (const auto& r : layer) out.push_back({{r, c.budget + tr.cost}, StepKind::Fire, t, 0});
	return out;
}

std::vector<PreResult> pre_A_steps(const Net& net, const Configuration& c, Cost cap, Order ord) {
	std::vector<PreResult> out;
	if (c.budget <= cap) {
		out = pre_type1_steps(net, c, ord);
		auto two = pre_type2_steps(net, c, ord);
		out.insert(out.end(), two.begin(), two.end());
	}
	for (TransitionId t = 0; t < net.transitions().size(); ++t) {
		auto d = pre_discrete_steps(net, t, c, cap, ord);
		out.insert(out.end(), d.begin(), d.end());
	}
	return out;
}

std::vector<PreResult> pre_B_steps(const Net& net, const Configuration& c, Cost cap, Order ord) {
	std::vector<PreResult> out;
	const Region& r = c.region;
	auto emit = [&](Region q, StepKind kind, std::size_t split) {
		Cost cost = token_cost(net, q);
		if (c.budget > cap || cost > cap - c.budget) return;
		out.push_back({{std::move(q), c.budget + cost}, kind, 0, split});
	};
	auto lows = word_preimages(net, r.low);
	if (lows.empty()) return out;

	// landing class for Type IV
	std::vector<Multiset> landing;
	if (r.zero.empty()) {
		for (const auto& x : extra_tokens(net, ord)) landing.push_back(Multiset{x});
	} else {
		landing = preimages(net, r.zero);
	}

	const std::size_t h = r.high.size();
	for (std::size_t a = 0; a <= h; ++a) {
		std::vector<Multiset> prefix(r.high.begin(), r.high.begin() + static_cast<std::ptrdiff_t>(a));
		auto highs = word_preimages(net, prefix);
		if (highs.empty()) continue;
		for (std::size_t b = 0; b <= 1 && a + b <= h; ++b) {
			Multiset zero = b ? r.high[a] : Multiset{};
			std::vector<Multiset> left(r.high.begin() + static_cast<std::ptrdiff_t>(a + b), r.high.end());
			for (const auto& hq : highs)
				for (const auto& lq : lows) {
					if (r.zero.empty()) {
						Region q{hq, zero, left};
						q.low.insert(q.low.end(), lq.begin(), lq.end());
						emit(std::move(q), StepKind::TypeIII, left.size());
					}
					for (const auto& m : landing) {
						Region q{hq, zero, left};
						q.low.push_back(m);
						q.low.insert(q.low.end(), lq.begin(), lq.end());
						emit(std::move(q), StepKind::TypeIV, left.size());
					}
				}
		}
	}
	return out;
}

namespace {

Basis minimal(const Net& net, const std::vector<PreResult>& steps, Order ord) {
	std::vector<Configuration> configs;
	configs.reserve(steps.size());
	for (const auto& s : steps) configs.push_back(s.config);
	return minimize(net, std::move(configs), ord);
}

} // namespace

Basis pre_discrete(const Net& net, TransitionId t, const Configuration& c, Cost cap, Order ord) {
	return minimal(net, pre_discrete_steps(net, t, c, cap, ord), ord);
}

Basis pre_A(const Net& net, const Configuration& c, Cost cap, Order ord) {
	return minimal(net, pre_A_steps(net, c, cap, ord), ord);
}

Basis pre_B(const Net& net, const Configuration& c, Cost cap, Order ord) {
	return minimal(net, pre_B_steps(net, c, cap, ord), ord);
}

} // namespace ptpn
