#include "ptpn/order.hpp"

#include "ptpn/region_ops.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace ptpn {

const char* order_name(Order o) { return o == Order::All ? "all" : "free"; }

bool multiset_embeds(const Net& net, const Multiset& small, const Multiset& big, Order ord) {
	if (small.size() > big.size()) return false;
	std::size_t i = 0;
	for (const auto& t : big) {
		if (i < small.size() && small[i] == t) {
			++i;
			continue;
		}
		if (i < small.size() && small[i] < t) return false;
		if (ord == Order::Free && !net.is_free(t.place)) return false;
	}
	return i == small.size();
}

namespace {

bool all_free(const Net& net, const Multiset& m) {
	return std::all_of(m.begin(), m.end(), [&](const RToken& t) { return net.is_free(t.place); });
}

bool word_embeds(const Net& net, const std::vector<Multiset>& a, const std::vector<Multiset>& b, Order ord) {
	const std::size_t n = a.size(), m = b.size();
	if (n > m) return false;
	if (ord == Order::All) {
		// leftmost greedy matching is optimal when unmatched classes are unconstrained
		std::size_t i = 0;
		for (std::size_t j = 0; j < m && i < n; ++j)
			if (multiset_embeds(net, a[i], b[j], ord)) ++i;
		return i == n;
	}
	// can[i][j]: a[i..] embeds into b[j..] with every skipped class free
	thread_local std::vector<char> can;
	can.assign((n + 1) * (m + 1), 0);
	auto at = [&](std::size_t i, std::size_t j) -> char& { return can[i * (m + 1) + j]; };
	at(n, m) = 1;
	for (std::size_t j = m; j-- > 0;) at(n, j) = at(n, j + 1) && all_free(net, b[j]);
	for (std::size_t i = n; i-- > 0;)
		for (std::size_t j = m; j-- > 0;) {
			if (m - j < n - i) continue;
			at(i, j) = (at(i + 1, j + 1) && multiset_embeds(net, a[i], b[j], ord)) ||
			           (at(i, j + 1) && all_free(net, b[j]));
		}
	return at(0, 0);
}

} // namespace

bool region_embeds(const Net& net, const Region& r1, const Region& r2, Order ord) {
	if (r1.token_count() > r2.token_count()) return false;
	return multiset_embeds(net, r1.zero, r2.zero, ord) && word_embeds(net, r1.high, r2.high, ord) &&
	       word_embeds(net, r1.low, r2.low, ord);
}

bool config_leq(const Net& net, const Configuration& c1, const Configuration& c2, Order ord) {
	return c1.budget <= c2.budget && region_embeds(net, c1.region, c2.region, ord);
}

bool Basis::insert(const Net& net, const Configuration& c) {
	if (covers(net, c)) return false;
	std::erase_if(elements_, [&](const Configuration& e) { return config_leq(net, c, e, order_); });
	elements_.insert(std::lower_bound(elements_.begin(), elements_.end(), c), c);
	return true;
}

bool Basis::covers(const Net& net, const Configuration& c) const {
	return std::any_of(elements_.begin(), elements_.end(),
	                   [&](const Configuration& e) { return config_leq(net, e, c, order_); });
}

Basis minimize(const Net& net, std::vector<Configuration> configs, Order ord) {
	std::sort(configs.begin(), configs.end());
	configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
	if (ord == Order::All) {
		Basis b(ord);
		for (const auto& c : configs) b.insert(net, c);
		return b;
	}
	std::map<Multiset, Basis> groups;
	for (const auto& c : configs) groups.try_emplace(cost_signature(net, c.region), ord).first->second.insert(net, c);
	Basis b(ord);
	for (auto& [key, g] : groups)
		b.elements_.insert(b.elements_.end(), std::make_move_iterator(g.elements_.begin()),
		                   std::make_move_iterator(g.elements_.end()));
	std::sort(b.elements_.begin(), b.elements_.end());
	return b;
}

bool member_upward(const Net& net, const Configuration& c, const Basis& b) { return b.covers(net, c); }

std::size_t cost_token_count(const Net& net, const Region& r) {
	std::size_t n = 0;
	auto count = [&](const Multiset& m) {
		for (const auto& t : m) n += net.is_free(t.place) ? 0 : 1;
	};
	count(r.zero);
	for (const auto& m : r.high) count(m);
	for (const auto& m : r.low) count(m);
	return n;
}

Multiset cost_signature(const Net& net, const Region& r) {
	Multiset out;
	auto add = [&](const Multiset& m) {
		for (const auto& t : m)
			if (!net.is_free(t.place)) out.push_back(t);
	};
	add(r.zero);
	for (const auto& m : r.high) add(m);
	for (const auto& m : r.low) add(m);
	normalize(out);
	return out;
}

namespace {

bool within(const Net& net, const Region& r, Cost limit, PadBound bound) {
	switch (bound) {
	case PadBound::StrictCount: return cost_token_count(net, r) < limit;
	case PadBound::TokenCount: return cost_token_count(net, r) <= limit;
	case PadBound::TokenCost: return token_cost(net, r) <= limit;
	}
	return false;
}

} // namespace

Basis cost_pad(const Net& net, const Configuration& c, Cost limit, PadBound bound) {
	return *cost_pad(net, c, limit, bound, std::numeric_limits<std::size_t>::max());
}

std::optional<Basis> cost_pad(const Net& net, const Configuration& c, Cost limit, PadBound bound,
                              std::size_t max_regions) {
	if (!within(net, c.region, limit, bound)) return Basis(Order::Free);
	std::vector<RVal> values;
	for (std::uint32_t k = 0; k <= net.cmax(); ++k) values.push_back(RVal::fin(k));
	values.push_back(RVal::omega());

	std::set<Region> seen{c.region};
	std::vector<Region> frontier{c.region};
	while (!frontier.empty()) {
		std::vector<Region> next;
		for (const auto& r : frontier) {
			for (PlaceId p = 0; p < net.places().size(); ++p) {
				if (net.is_free(p)) continue;
				for (RVal v : values) {
					RToken tok{p, v};
					std::vector<Insertion> opts{{Insertion::Mode::Zero, Part::Zero, 0, tok}};
					for (Part part : {Part::High, Part::Low}) {
						const auto& word = part == Part::High ? r.high : r.low;
						for (std::size_t i = 0; i < word.size(); ++i) opts.push_back({Insertion::Mode::Join, part, i, tok});
						for (std::size_t g = 0; g <= word.size(); ++g) opts.push_back({Insertion::Mode::Fresh, part, g, tok});
					}
					for (const auto& ins : opts) {
						Region child = r;
						apply_insertion(child, ins);
						if (!within(net, child, limit, bound) || !seen.insert(child).second) continue;
						if (seen.size() > max_regions) return std::nullopt;
						next.push_back(std::move(child));
					}
				}
			}
		}
		frontier = std::move(next);
	}
	std::vector<Configuration> all;
	all.reserve(seen.size());
	for (const auto& r : seen) all.push_back({r, c.budget});
	return minimize(net, std::move(all), Order::Free);
}

Basis cost_pad(const Net& net, const Configuration& c) { return cost_pad(net, c, c.budget, PadBound::StrictCount); }

nlohmann::json config_to_json(const Net& net, const Configuration& c) {
	return {{"region", region_to_json(net, c.region)}, {"budget", c.budget}};
}

nlohmann::json basis_to_json(const Net& net, const Basis& b) {
	auto arr = nlohmann::json::array();
	for (const auto& c : b.elements()) arr.push_back(config_to_json(net, c));
	return arr;
}

} // namespace ptpn
