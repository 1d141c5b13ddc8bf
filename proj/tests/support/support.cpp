#include "support.hpp"

#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#ifndef PTPN_FIXTURE_DIR
#error "PTPN_FIXTURE_DIR must be defined"
#endif

namespace ptpn::testing {

std::string fixture_path(const std::string& name) { return std::string(PTPN_FIXTURE_DIR) + "/" + name; }

std::string read_fixture(const std::string& name) {
	std::ifstream in(fixture_path(name), std::ios::binary);
	if (!in) throw std::runtime_error("missing fixture " + name);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

Net load_net_fixture(const std::string& name) { return parse_net(read_fixture(name)); }

namespace {

template <class T>
T pick(Rng& rng, T lo, T hi) {
	return std::uniform_int_distribution<T>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

} // namespace

Interval random_interval(Rng& rng, std::uint32_t max_bound) {
	for (;;) {
		std::uint32_t lo = pick<std::uint32_t>(rng, 0, max_bound);
		bool lo_closed = coin(rng);
		if (coin(rng, 0.25)) return Interval::make(lo, lo_closed, std::nullopt, false);
		std::uint32_t hi = pick<std::uint32_t>(rng, lo, max_bound);
		bool hi_closed = coin(rng);
		if (hi == lo && !(lo_closed && hi_closed)) continue;
		return Interval::make(lo, lo_closed, hi, hi_closed);
	}
}

Net random_net(Rng& rng, const RandomNetSpec& spec) {
	const auto n_places = pick<std::uint32_t>(rng, 1, spec.max_places);
	std::vector<Place> places;
	for (std::uint32_t i = 0; i < n_places; ++i) places.push_back({"p" + std::to_string(i), pick<Cost>(rng, 0, spec.max_cost)});
	const auto n_trans = pick<std::uint32_t>(rng, 1, spec.max_transitions);
	std::vector<Transition> transitions;
	for (std::uint32_t i = 0; i < n_trans; ++i) {
		Transition t{"t" + std::to_string(i), pick<Cost>(rng, 0, spec.max_cost), {}, {}};
		auto n_in = pick<std::uint32_t>(rng, 1, spec.max_arcs);
		auto n_out = pick<std::uint32_t>(rng, 0, spec.max_arcs);
		for (std::uint32_t a = 0; a < n_in; ++a)
			t.inputs.push_back({pick<PlaceId>(rng, 0, n_places - 1), random_interval(rng, spec.max_bound)});
		for (std::uint32_t a = 0; a < n_out; ++a)
			t.outputs.push_back({pick<PlaceId>(rng, 0, n_places - 1), random_interval(rng, spec.max_bound)});
		transitions.push_back(std::move(t));
	}
	return Net(std::move(places), std::move(transitions));
}

std::vector<RVal> all_values(const Net& net) {
	std::vector<RVal> out;
	for (std::uint32_t k = 0; k <= net.cmax(); ++k) out.push_back(RVal::fin(k));
	out.push_back(RVal::omega());
	return out;
}

namespace {

std::vector<RToken> token_types(const Net& net) {
	std::vector<RToken> out;
	for (PlaceId p = 0; p < net.places().size(); ++p)
		for (RVal v : all_values(net)) out.push_back({p, v});
	return out;
}

// Multisets by size, index 0 holding only the empty multiset.
std::vector<std::vector<Multiset>> multisets_by_size(const std::vector<RToken>& types, std::size_t max) {
	std::vector<std::vector<Multiset>> out(max + 1);
	out[0].push_back({});
	for (std::size_t k = 1; k <= max; ++k)
		for (const auto& m : out[k - 1])
			for (std::size_t i = 0; i < types.size(); ++i) {
				if (!m.empty() && types[i] < m.back()) continue;
				auto next = m;
				next.push_back(types[i]);
				out[k].push_back(std::move(next));
			}
	return out;
}

void words(const std::vector<std::vector<Multiset>>& ms, std::size_t budget, std::vector<Multiset>& cur,
           std::vector<std::pair<std::vector<Multiset>, std::size_t>>& out, std::size_t used) {
	out.push_back({cur, used});
	for (std::size_t k = 1; k <= budget; ++k)
		for (const auto& m : ms[k]) {
			cur.push_back(m);
			words(ms, budget - k, cur, out, used + k);
			cur.pop_back();
		}
}

} // namespace

std::vector<Region> enumerate_regions(const Net& net, std::size_t max_tokens) {
	auto ms = multisets_by_size(token_types(net), max_tokens);
	std::vector<std::pair<std::vector<Multiset>, std::size_t>> ws;
	std::vector<Multiset> cur;
	words(ms, max_tokens, cur, ws, 0);
	std::vector<Region> out;
	for (const auto& [h, nh] : ws)
		for (std::size_t z = 0; z + nh <= max_tokens; ++z)
			for (const auto& zm : ms[z])
				for (const auto& [l, nl] : ws)
					if (nh + z + nl <= max_tokens) out.push_back(Region{h, zm, l});
	std::sort(out.begin(), out.end());
	return out;
}

Region random_region(const Net& net, Rng& rng, std::size_t max_tokens) {
	auto values = all_values(net);
	const auto k = pick<std::size_t>(rng, 0, max_tokens);
	std::vector<RToken> toks;
	for (std::size_t i = 0; i < k; ++i)
		toks.push_back({pick<PlaceId>(rng, 0, static_cast<PlaceId>(net.places().size() - 1)),
		                values[pick<std::size_t>(rng, 0, values.size() - 1)]});
	const auto classes = k == 0 ? 0 : pick<std::size_t>(rng, 0, k);
	const auto n_high = pick<std::size_t>(rng, 0, classes);
	const auto n_low = classes - n_high;
	// bins: 0..n_high-1 = H, n_high = Z, then L
	std::vector<Multiset> bins(classes + 1);
	std::vector<std::size_t> targets;
	for (std::size_t i = 0; i < n_high; ++i) targets.push_back(i);
	for (std::size_t i = 0; i < n_low; ++i) targets.push_back(n_high + 1 + i);
	std::shuffle(toks.begin(), toks.end(), rng);
	std::size_t next = 0;
	for (auto b : targets) bins[b].push_back(toks[next++]);
	for (; next < toks.size(); ++next) bins[pick<std::size_t>(rng, 0, classes)].push_back(toks[next]);
	Region r;
	for (std::size_t i = 0; i < n_high; ++i) r.high.push_back(make_multiset(bins[i]));
	r.zero = make_multiset(bins[n_high]);
	for (std::size_t i = 0; i < n_low; ++i) r.low.push_back(make_multiset(bins[n_high + 1 + i]));
	return r;
}

Marking random_delta_marking(const Net& net, Rng& rng, std::size_t max_tokens, const Rational& delta,
                             std::uint32_t max_int) {
	// A few shared fractions strictly inside (0, delta) and (1 - delta, 1).
	std::vector<Rational> pool{Rational(0)};
	for (int i = 1; i <= 3; ++i) {
		Rational eps = delta * Rational(pick<int>(rng, 1, 19), 20);
		pool.push_back(eps);
		pool.push_back(1 - eps);
	}
	Marking m;
	const auto k = pick<std::size_t>(rng, 0, max_tokens);
	for (std::size_t i = 0; i < k; ++i) {
		PlaceId p = pick<PlaceId>(rng, 0, static_cast<PlaceId>(net.places().size() - 1));
		Rational age = Rational(pick<std::uint32_t>(rng, 0, max_int)) + pool[pick<std::size_t>(rng, 0, pool.size() - 1)];
		m.add({p, age});
	}
	return m;
}

PreOracle::PreOracle(const Net& net, std::size_t max_tokens) : net_(net) {
	for (auto& r : enumerate_regions(net, max_tokens)) {
		std::vector<Edge> edges;
		if (auto s = succ_type1(r)) edges.push_back({StepKind::TypeI, 0, std::move(*s), 0});
		if (auto s = succ_type2(net, r)) edges.push_back({StepKind::TypeII, 0, std::move(*s), 0});
		for (TransitionId t = 0; t < net.transitions().size(); ++t)
			for (auto& s : fire_region(net, r, t)) edges.push_back({StepKind::Fire, t, std::move(s), net.transition(t).cost});
		const Cost tc = token_cost(net, r);
		for (std::size_t split = 0; split <= r.low.size(); ++split)
			edges.push_back({StepKind::TypeIII, 0, succ_typeB(net, r, DelayKind::III, split), tc});
		for (std::size_t split = 0; split < r.low.size(); ++split)
			edges.push_back({StepKind::TypeIV, 0, succ_typeB(net, r, DelayKind::IV, split), tc});
		edges_.emplace_back(std::move(r), std::move(edges));
	}
}

Basis PreOracle::predecessors(PreOp op, TransitionId t, const Configuration& c, Order ord) const {
	std::vector<Configuration> found;
	for (const auto& [r, edges] : edges_) {
		for (const auto& e : edges) {
			bool wanted = false;
			switch (op) {
			case PreOp::Discrete: wanted = e.kind == StepKind::Fire && e.transition == t; break;
			case PreOp::A: wanted = e.kind == StepKind::TypeI || e.kind == StepKind::TypeII || e.kind == StepKind::Fire; break;
			case PreOp::B: wanted = e.kind == StepKind::TypeIII || e.kind == StepKind::TypeIV; break;
			}
			if (wanted && region_embeds(net_, c.region, e.result, ord)) found.push_back({r, c.budget + e.cost});
		}
	}
	return minimize(net_, std::move(found), ord);
}

bool has_place(const Region& r, PlaceId p) {
	auto in = [&](const Multiset& m) {
		return std::any_of(m.begin(), m.end(), [&](const RToken& t) { return t.place == p; });
	};
	return in(r.zero) || std::any_of(r.high.begin(), r.high.end(), in) || std::any_of(r.low.begin(), r.low.end(), in);
}

ThresholdOracleResult threshold_oracle(const Net& net, PlaceId p_init, PlaceId p_fin, Cost v, std::size_t max_tokens,
                                       std::size_t max_states) {
	ThresholdOracleResult out;
	bool truncated = false;
	std::map<Region, Cost> best;
	using Item = std::pair<Cost, Region>;
	std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
	Region init{{}, {RToken{p_init, RVal::fin(0)}}, {}};
	best[init] = 0;
	queue.push({0, init});
	while (!queue.empty()) {
		auto [spent, r] = queue.top();
		queue.pop();
		if (best[r] < spent) continue;
		++out.states;
		if (has_place(r, p_fin)) {
			out.answer = OracleAnswer::Yes;
			return out;
		}
		if (out.states > max_states) return out;
		std::vector<std::pair<Region, Cost>> next;
		if (auto s = succ_type1(r)) next.push_back({std::move(*s), 0});
		if (auto s = succ_type2(net, r)) next.push_back({std::move(*s), 0});
		for (TransitionId t = 0; t < net.transitions().size(); ++t)
			for (auto& s : fire_region(net, r, t)) next.push_back({std::move(s), net.transition(t).cost});
		const Cost tc = token_cost(net, r);
		for (std::size_t split = 0; split <= r.low.size(); ++split)
			next.push_back({succ_typeB(net, r, DelayKind::III, split), tc});
		for (std::size_t split = 0; split < r.low.size(); ++split)
			next.push_back({succ_typeB(net, r, DelayKind::IV, split), tc});
		for (auto& [s, cost] : next) {
			if (spent + cost > v) continue;
			if (s.token_count() > max_tokens) {
				truncated = true;
				continue;
			}
			auto it = best.find(s);
			if (it != best.end() && it->second <= spent + cost) continue;
			best[s] = spent + cost;
			queue.push({spent + cost, std::move(s)});
		}
	}
	out.answer = truncated ? OracleAnswer::Inconclusive : OracleAnswer::No;
	return out;
}

} // namespace ptpn::testing
