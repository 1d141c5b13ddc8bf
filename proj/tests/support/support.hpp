#pragma once
// Test-only helpers: fixtures, random instances and brute-force oracles.

#include "ptpn/order.hpp"
#include "ptpn/region_ops.hpp"
#include "ptpn/solver.hpp"

#include <random>
#include <string>

namespace ptpn::testing {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
Net load_net_fixture(const std::string& name);

using Rng = std::mt19937_64;

struct RandomNetSpec {
	std::uint32_t max_places = 3;
	std::uint32_t max_bound = 2;  // largest finite interval endpoint, hence cmax
	std::uint32_t max_transitions = 3;
	std::uint32_t max_arcs = 2;   // per side
	Cost max_cost = 2;
};

Net random_net(Rng& rng, const RandomNetSpec& spec = {});
Interval random_interval(Rng& rng, std::uint32_t max_bound);

// Values 0..cmax followed by omega.
std::vector<RVal> all_values(const Net& net);

// Every region with at most max_tokens tokens, in canonical order.
std::vector<Region> enumerate_regions(const Net& net, std::size_t max_tokens);

Region random_region(const Net& net, Rng& rng, std::size_t max_tokens);

// Delta-form marking whose fractional parts come from a small pool so that classes collide.
Marking random_delta_marking(const Net& net, Rng& rng, std::size_t max_tokens, const Rational& delta,
                             std::uint32_t max_int);

enum class PreOp { Discrete, A, B };

// Minimal predecessors of c within the token bound, found by running every
// forward step from every enumerated region.
class PreOracle {
public:
	PreOracle(const Net& net, std::size_t max_tokens);
	Basis predecessors(PreOp op, TransitionId t, const Configuration& c, Order ord) const;
	std::size_t region_count() const { return edges_.size(); }

private:
	struct Edge {
		StepKind kind;
		TransitionId transition;
		Region result;
		Cost cost;
	};
	const Net& net_;
	std::vector<std::pair<Region, std::vector<Edge>>> edges_;
};

// Exhaustive forward search over (region, spent cost) with a token bound.
enum class OracleAnswer { Yes, No, Inconclusive };
struct ThresholdOracleResult {
	OracleAnswer answer = OracleAnswer::Inconclusive;
	std::size_t states = 0;
};
ThresholdOracleResult threshold_oracle(const Net& net, PlaceId p_init, PlaceId p_fin, Cost v, std::size_t max_tokens,
                                       std::size_t max_states = 200000);

bool has_place(const Region& r, PlaceId p);

} // namespace ptpn::testing
