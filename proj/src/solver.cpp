#include "ptpn/solver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace ptpn {

const char* bound_name(Bound b) {
	switch (b) {
	case Bound::Depth: return "depth";
	case Bound::Tokens: return "tokens";
	case Bound::Configs: return "configs";
	}
	return "?";
}

const char* verdict_name(Verdict::Kind k) {
	switch (k) {
	case Verdict::Kind::Yes: return "yes";
	case Verdict::Kind::No: return "no";
	case Verdict::Kind::Unknown: return "unknown";
	}
	return "?";
}

Configuration initial_configuration(PlaceId p_init, Cost budget) {
	return {Region{{}, Multiset{RToken{p_init, RVal::fin(0)}}, {}}, budget};
}

Basis target_basis(const Net& net, PlaceId p_fin) {
	std::vector<Configuration> configs;
	std::vector<RVal> values;
	for (std::uint32_t k = 0; k <= net.cmax(); ++k) values.push_back(RVal::fin(k));
	values.push_back(RVal::omega());
	for (RVal v : values) {
		Multiset m{RToken{p_fin, v}};
		configs.push_back({Region{{m}, {}, {}}, 0});
		configs.push_back({Region{{}, m, {}}, 0});
		configs.push_back({Region{{}, {}, {m}}, 0});
	}
	return minimize(net, std::move(configs), Order::All);
}

namespace {

bool contains(const Basis& b, const Configuration& c) {
	return std::binary_search(b.elements().begin(), b.elements().end(), c);
}

void note(std::vector<Bound>& hit, Bound b) {
	if (std::find(hit.begin(), hit.end(), b) == hit.end()) hit.push_back(b);
}

} // namespace

FixpointResult acjt_fixpoint(const Net& net, const Basis& start, const PreOperator& pre, Order ord,
                             std::size_t max_configs, Worklist policy) {
	FixpointResult out{Basis(ord), false};
	std::deque<Configuration> work;
	std::size_t inserted = 0;
	for (const auto& c : start.elements())
		if (out.basis.insert(net, c)) work.push_back(c), ++inserted;
	while (!work.empty()) {
		Configuration c;
		if (policy == Worklist::Fifo) {
			c = std::move(work.front());
			work.pop_front();
		} else {
			c = std::move(work.back());
			work.pop_back();
		}
		if (!contains(out.basis, c)) continue;
		for (auto& p : pre(c)) {
			if (out.basis.covers(net, p.config)) continue;
			if (inserted >= max_configs) {
				out.exhausted = true;
				return out;
			}
			out.basis.insert(net, p.config);
			++inserted;
			work.push_back(std::move(p.config));
		}
	}
	return out;
}

BoundedResult bounded_pre_star(const Net& net, const Basis& targets, const SearchBounds& bounds, Cost cap) {
	BoundedResult out;
	std::map<Configuration, std::size_t> depth;
	std::deque<Configuration> work;
	for (const auto& c : targets.elements())
		if (out.basis.insert(net, c)) {
			depth[c] = 0;
			work.push_back(c);
		}
	std::size_t inserted = work.size();
	while (!work.empty()) {
		Configuration c = std::move(work.front());
		work.pop_front();
		if (!contains(out.basis, c)) continue;
		const std::size_t d = depth[c];
		for (auto& p : pre_A_steps(net, c, cap, Order::Free)) {
			if (out.basis.covers(net, p.config)) continue;
			if (d + 1 > bounds.max_depth) {
				note(out.hit, Bound::Depth);
				continue;
			}
			if (p.config.region.token_count() > bounds.max_tokens) {
				note(out.hit, Bound::Tokens);
				continue;
			}
			if (inserted >= bounds.max_configs) {
				note(out.hit, Bound::Configs);
				out.exhausted = true;
				return out;
			}
			out.basis.insert(net, p.config);
			++inserted;
			depth[p.config] = d + 1;
			work.push_back(std::move(p.config));
		}
	}
	out.exhausted = !out.hit.empty();
	return out;
}

namespace {

struct Node {
	Configuration conf;
	std::ptrdiff_t parent = -1;
	bool pad = false;
	StepKind kind = StepKind::TypeI;
	TransitionId transition = 0;
	Order parent_order = Order::All;
	std::size_t depth = 0;
};

// Antichain of node ids. Under Free only nodes with the same cost signature
// can be comparable, so they are bucketed by it; within a bucket the free
// tokens of the smaller node must be a sub-multiset of the larger one's.
class NodeSet {
public:
	explicit NodeSet(Order ord) : ord_(ord) {}

	std::optional<std::size_t> coverer(const Net& net, const std::vector<Node>& nodes, const Configuration& c) const {
		auto it = buckets_.find(key(net, c.region));
		if (it == buckets_.end()) return std::nullopt;
		const Summary sc = summarize(net, c);
		for (const auto& e : it->second)
			if (may_leq(e.summary, sc) && config_leq(net, nodes[e.id].conf, c, ord_)) return e.id;
		return std::nullopt;
	}

	void insert(const Net& net, const std::vector<Node>& nodes, std::size_t id) {
		const auto& conf = nodes[id].conf;
		auto& bucket = buckets_[key(net, conf.region)];
		Summary sn = summarize(net, conf);
		std::erase_if(bucket, [&](const Entry& e) {
			bool dominated = may_leq(sn, e.summary) && config_leq(net, conf, nodes[e.id].conf, ord_);
			if (dominated) alive_.erase(e.id);
			return dominated;
		});
		bucket.push_back({id, std::move(sn)});
		alive_.insert(id);
	}

	bool alive(std::size_t id) const { return alive_.count(id) > 0; }
	std::size_t size() const { return alive_.size(); }
	Order order() const { return ord_; }

	std::vector<std::size_t> sorted_ids(const std::vector<Node>& nodes) const {
		std::vector<std::size_t> out(alive_.begin(), alive_.end());
		std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return nodes[a].conf < nodes[b].conf; });
		return out;
	}

private:
	struct Summary {
		Cost budget;
		std::size_t tokens;
		Multiset free;  // Free only
	};
	struct Entry {
		std::size_t id;
		Summary summary;
	};

	Multiset key(const Net& net, const Region& r) const { return ord_ == Order::Free ? cost_signature(net, r) : Multiset{}; }

	Summary summarize(const Net& net, const Configuration& c) const {
		Summary s{c.budget, c.region.token_count(), {}};
		if (ord_ == Order::Free) {
			auto add = [&](const Multiset& m) {
				for (const auto& t : m)
					if (net.is_free(t.place)) s.free.push_back(t);
			};
			add(c.region.zero);
			for (const auto& m : c.region.high) add(m);
			for (const auto& m : c.region.low) add(m);
			normalize(s.free);
		}
		return s;
	}

	static bool may_leq(const Summary& a, const Summary& b) {
		return a.budget <= b.budget && a.tokens <= b.tokens &&
		       std::includes(b.free.begin(), b.free.end(), a.free.begin(), a.free.end());
	}

	Order ord_;
	std::map<Multiset, std::vector<Entry>> buckets_;
	std::set<std::size_t> alive_;
};

class ThresholdEngine {
public:
	ThresholdEngine(const Query& q, const SolverOptions& opt)
	    : net_(q.net), q_(q), opt_(opt), init_(initial_configuration(q.p_init, q.threshold)) {}

	Verdict run() {
		Verdict out;
		if (!a_only_fixpoint()) return finish(out);
		if (auto hit = w_.coverer(net_, nodes_, init_)) return yes(out, *hit);

		std::vector<std::size_t> pending;
		for (auto id : w_.sorted_ids(nodes_)) {
			const auto& conf = nodes_[id].conf;
			auto pads = cost_pad(net_, conf, q_.threshold - conf.budget, opt_.pad, opt_.bounds.max_configs);
			if (!pads) {
				note(hit_, Bound::Configs);
				return finish(out);
			}
			for (const auto& p : pads->elements()) {
				Node n{p, static_cast<std::ptrdiff_t>(id), true, StepKind::TypeI, 0, Order::All, 0};
				if (auto added = add(v_, std::move(n))) pending.push_back(*added);
				if (stopped_) return finish(out);
			}
		}

		for (std::size_t k = 1;; ++k) {
			std::vector<std::size_t> fresh_u;
			for (auto id : pending) {
				if (!v_.alive(id)) continue;
				for (auto& p : pre_B_steps(net_, nodes_[id].conf, q_.threshold, Order::Free)) {
					if (p.config.region.token_count() > opt_.bounds.max_tokens) {
						if (!u_.coverer(net_, nodes_, p.config)) note(hit_, Bound::Tokens);
						continue;
					}
					Node n{std::move(p.config), static_cast<std::ptrdiff_t>(id), false, p.kind, 0, Order::Free, 0};
					if (auto added = add(u_, std::move(n))) fresh_u.push_back(*added);
					if (stopped_) return finish(out);
				}
			}
			out.iterations.push_back({k, v_.size(), u_.size()});
			if (fresh_u.empty()) {
				converged_ = true;
				break;
			}
			pending = explore_free(fresh_u);
			if (stopped_) return finish(out);
			if (auto hit = v_.coverer(net_, nodes_, init_)) return yes(out, *hit);
		}
		return finish(out);
	}

private:
	// Exact Pre_A* under All; false when the config cap was hit.
	bool a_only_fixpoint() {
		std::deque<std::size_t> work;
		const Basis targets = target_basis(net_, q_.p_fin);
		for (const auto& c : targets.elements())
			if (auto id = add(w_, Node{c, -1, false, StepKind::TypeI, 0, Order::All, 0})) work.push_back(*id);
		while (!work.empty() && !stopped_) {
			auto id = work.front();
			work.pop_front();
			if (!w_.alive(id)) continue;
			auto conf = nodes_[id].conf;
			for (auto& p : pre_A_steps(net_, conf, q_.threshold, Order::All)) {
				Node n{std::move(p.config), static_cast<std::ptrdiff_t>(id), false, p.kind, p.transition, Order::All, 0};
				if (auto added = add(w_, std::move(n))) work.push_back(*added);
				if (stopped_) break;
			}
		}
		return !stopped_;
	}

	// Bounded Pre_A* under Free from the new U elements into V.
	std::vector<std::size_t> explore_free(const std::vector<std::size_t>& seeds) {
		std::vector<std::size_t> inserted;
		std::deque<std::size_t> work;
		for (auto id : seeds) {
			if (!u_.alive(id) || v_.coverer(net_, nodes_, nodes_[id].conf)) continue;
			v_.insert(net_, nodes_, id);
			nodes_[id].depth = 0;
			inserted.push_back(id);
			work.push_back(id);
		}
		while (!work.empty() && !stopped_) {
			auto id = work.front();
			work.pop_front();
			if (!v_.alive(id)) continue;
			auto conf = nodes_[id].conf;
			const std::size_t depth = nodes_[id].depth;
			for (auto& p : pre_A_steps(net_, conf, q_.threshold, Order::Free)) {
				if (v_.coverer(net_, nodes_, p.config)) continue;
				if (depth + 1 > opt_.bounds.max_depth) {
					note(hit_, Bound::Depth);
					continue;
				}
				if (p.config.region.token_count() > opt_.bounds.max_tokens) {
					note(hit_, Bound::Tokens);
					continue;
				}
				Node n{std::move(p.config), static_cast<std::ptrdiff_t>(id), false, p.kind, p.transition, Order::Free,
				       depth + 1};
				if (auto added = add(v_, std::move(n))) {
					inserted.push_back(*added);
					work.push_back(*added);
				}
				if (stopped_) break;
			}
		}
		return inserted;
	}

	std::optional<std::size_t> add(NodeSet& set, Node n) {
		if (set.coverer(net_, nodes_, n.conf)) return std::nullopt;
		if (nodes_.size() >= opt_.bounds.max_configs) {
			note(hit_, Bound::Configs);
			stopped_ = true;
			return std::nullopt;
		}
		nodes_.push_back(std::move(n));
		set.insert(net_, nodes_, nodes_.size() - 1);
		return nodes_.size() - 1;
	}

	Verdict& finish(Verdict& out) {
		out.exhausted = hit_;
		out.kind = converged_ && hit_.empty() ? Verdict::Kind::No : Verdict::Kind::Unknown;
		return out;
	}

	Verdict& yes(Verdict& out, std::size_t id) {
		out.kind = Verdict::Kind::Yes;
		out.exhausted = hit_;
		out.witness = reconstruct(id);
		return out;
	}

	// Forward path from the initial configuration following the parent chain of id.
	Witness reconstruct(std::size_t id) {
		Witness w{init_.region, q_.threshold, {}};
		Region cur = init_.region;
		Cost budget = q_.threshold;
		std::ptrdiff_t at = static_cast<std::ptrdiff_t>(id);
		while (nodes_[at].parent >= 0) {
			const Node& n = nodes_[at];
			const Node& p = nodes_[n.parent];
			if (!n.pad) {
				for (auto& s : bridge(cur, n, p.conf.region)) {
					budget -= s.cost;
					cur = s.result;
					w.steps.push_back(std::move(s));
				}
				if (budget < p.conf.budget) throw std::logic_error("witness overspends its budget");
			}
			at = n.parent;
		}
		return w;
	}

	// Zero-cost type I/II steps, then one step of n's kind, reaching a region above target.
	std::vector<RegionStep> bridge(const Region& from, const Node& n, const Region& target) {
		auto covered = [&](const Region& r) { return region_embeds(net_, target, r, n.parent_order); };
		if (covered(from)) return {};
		struct Item {
			Region region;
			std::vector<RegionStep> path;
		};
		std::deque<Item> work{{from, {}}};
		std::set<Region> seen{from};
		while (!work.empty()) {
			Item item = std::move(work.front());
			work.pop_front();
			std::vector<RegionStep> options;
			if (n.kind == StepKind::Fire) {
				for (auto& o : fire_region_choices(net_, item.region, n.transition))
					options.push_back({StepKind::Fire, std::move(o.region), net_.transition(n.transition).cost, n.transition, 0,
					                   std::move(o.choice)});
			} else if (n.kind == StepKind::TypeIII || n.kind == StepKind::TypeIV) {
				for (auto& s : succ_B(net_, item.region))
					if (s.kind == n.kind) options.push_back(std::move(s));
			}
			for (auto& s : options)
				if (covered(s.result)) {
					item.path.push_back(std::move(s));
					return item.path;
				}
			std::vector<RegionStep> timed;
			if (auto r = succ_type1(item.region)) timed.push_back({StepKind::TypeI, std::move(*r), 0, 0, 0, {}});
			if (auto r = succ_type2(net_, item.region)) timed.push_back({StepKind::TypeII, std::move(*r), 0, 0, 0, {}});
			for (auto& s : timed) {
				if (covered(s.result) && (n.kind == StepKind::TypeI || n.kind == StepKind::TypeII)) {
					item.path.push_back(std::move(s));
					return item.path;
				}
				if (!seen.insert(s.result).second) continue;
				auto path = item.path;
				path.push_back(s);
				work.push_back({s.result, std::move(path)});
			}
		}
		throw std::logic_error("no forward step matches a backward witness link");
	}

	static void note(std::vector<Bound>& hit, Bound b) {
		if (std::find(hit.begin(), hit.end(), b) == hit.end()) hit.push_back(b);
	}

	const Net& net_;
	const Query& q_;
	const SolverOptions& opt_;
	Configuration init_;
	std::vector<Node> nodes_;
	NodeSet w_{Order::All};
	NodeSet v_{Order::Free};
	NodeSet u_{Order::Free};
	std::vector<Bound> hit_;
	bool stopped_ = false;
	bool converged_ = false;
};

} // namespace

Verdict cost_threshold(const Query& q, const SolverOptions& options) { return ThresholdEngine(q, options).run(); }

bool coverability(const Net& net, PlaceId p_init, PlaceId p_fin, std::size_t max_configs) {
	Net zero = net.zero_cost_copy();
	auto pre = [&](const Configuration& c) {
		auto out = pre_A_steps(zero, c, 0, Order::All);
		auto b = pre_B_steps(zero, c, 0, Order::All);
		out.insert(out.end(), b.begin(), b.end());
		return out;
	};
	auto fix = acjt_fixpoint(zero, target_basis(zero, p_fin), pre, Order::All, max_configs);
	if (fix.basis.covers(zero, initial_configuration(p_init, 0))) return true;
	if (fix.exhausted) throw ResourceLimit("coverability fixpoint exceeded the configuration cap");
	return false;
}

OptResult cost_optimal(const Net& net, PlaceId p_init, PlaceId p_fin, const SolverOptions& options, Cost max_threshold) {
	OptResult out;
	if (!coverability(net, p_init, p_fin, options.bounds.max_configs)) {
		out.kind = OptResult::Kind::Infinite;
		return out;
	}
	bool unsure = false;
	for (Cost v = 0; v <= max_threshold; ++v) {
		auto verdict = cost_threshold(Query{net, p_init, p_fin, v}, options);
		out.verdicts.push_back(verdict.kind);
		if (verdict.kind == Verdict::Kind::Yes) {
			out.kind = OptResult::Kind::Value;
			out.value = v;
			out.exactness = unsure ? OptResult::Exactness::UpperBound : OptResult::Exactness::Exact;
			out.witness = std::move(verdict.witness);
			return out;
		}
		if (verdict.kind == Verdict::Kind::Unknown) unsure = true;
	}
	out.kind = OptResult::Kind::Unresolved;
	return out;
}

Verdict forward_search(const Query& q, const SearchBounds& bounds) {
	const Net& net = q.net;
	struct FNode {
		Configuration conf;
		std::ptrdiff_t parent;
		RegionStep step;
		std::size_t depth;
	};
	std::vector<FNode> nodes{{initial_configuration(q.p_init, q.threshold), -1, {}, 0}};
	std::deque<std::size_t> work{0};
	Verdict out;
	auto has_target = [&](const Region& r) {
		auto in = [&](const Multiset& m) {
			return std::any_of(m.begin(), m.end(), [&](const RToken& t) { return t.place == q.p_fin; });
		};
		return in(r.zero) || std::any_of(r.high.begin(), r.high.end(), in) || std::any_of(r.low.begin(), r.low.end(), in);
	};
	auto witness_of = [&](std::size_t id) {
		Witness w{nodes[0].conf.region, q.threshold, {}};
		for (auto at = static_cast<std::ptrdiff_t>(id); nodes[at].parent >= 0; at = nodes[at].parent)
			w.steps.push_back(nodes[at].step);
		std::reverse(w.steps.begin(), w.steps.end());
		return w;
	};
	while (!work.empty()) {
		auto id = work.front();
		work.pop_front();
		if (has_target(nodes[id].conf.region)) {
			out.kind = Verdict::Kind::Yes;
			out.witness = witness_of(id);
			out.exhausted.clear();
			return out;
		}
		auto steps = succ_A(net, nodes[id].conf.region);
		auto b = succ_B(net, nodes[id].conf.region);
		steps.insert(steps.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
		for (auto& s : steps) {
			if (s.cost > nodes[id].conf.budget) continue;
			Configuration next{s.result, nodes[id].conf.budget - s.cost};
			bool dominated = std::any_of(nodes.begin(), nodes.end(),
			                             [&](const FNode& e) { return config_leq(net, next, e.conf, Order::Free); });
			if (dominated) continue;
			if (nodes[id].depth + 1 > bounds.max_depth) {
				note(out.exhausted, Bound::Depth);
				continue;
			}
			if (next.region.token_count() > bounds.max_tokens) {
				note(out.exhausted, Bound::Tokens);
				continue;
			}
			if (nodes.size() >= bounds.max_configs) {
				note(out.exhausted, Bound::Configs);
				out.kind = Verdict::Kind::Unknown;
				return out;
			}
			nodes.push_back({std::move(next), static_cast<std::ptrdiff_t>(id), std::move(s), nodes[id].depth + 1});
			work.push_back(nodes.size() - 1);
		}
	}
	out.kind = Verdict::Kind::Unknown;
	return out;
}

} // namespace ptpn
