#pragma once

#include "ptpn/region_ops.hpp"
#include "ptpn/semantics.hpp"

#include <json.hpp>

#include <vector>

namespace ptpn {

struct Witness {
	Region initial;
	Cost budget = 0;
	std::vector<RegionStep> steps;
};

nlohmann::json witness_to_json(const Net& net, const Witness& w);

// Concrete step from m realizing the symbolic step. m must be in delta-form with
// all fractional offsets within an arc of length < delta around 0.
Step realize_step(const Net& net, const Marking& m, const RegionStep& step, const Rational& delta);

struct Replay {
	Computation computation;
	Rational total_cost;
	Rational bound;  // budget + delta * K * R
	std::size_t timed_steps = 0;
	Cost max_rate = 0;
};

// Throws std::logic_error when a step cannot be realized (a solver bug).
Replay replay_witness(const Net& net, const Witness& w, const Rational& delta);

} // namespace ptpn
