#pragma once

#include "ptpn/order.hpp"
#include "ptpn/region_ops.hpp"

#include <limits>
#include <vector>

namespace ptpn {

inline constexpr Cost kNoCap = std::numeric_limits<Cost>::max();

// A predecessor together with the step that leads from it towards c.
struct PreResult {
	Configuration config;
	StepKind kind = StepKind::TypeI;
	TransitionId transition = 0;
	std::size_t split = 0;
};

// Under Order::Free, tokens not covered by c must lie in zero-cost places.
// Candidates whose budget exceeds cap are dropped. Results are not minimized.
std::vector<PreResult> pre_type1_steps(const Net& net, const Configuration& c, Order ord);
std::vector<PreResult> pre_type2_steps(const Net& net, const Configuration& c, Order ord);
std::vector<PreResult> pre_discrete_steps(const Net& net, TransitionId t, const Configuration& c, Cost cap, Order ord);
std::vector<PreResult> pre_A_steps(const Net& net, const Configuration& c, Cost cap, Order ord);
std::vector<PreResult> pre_B_steps(const Net& net, const Configuration& c, Cost cap, Order ord);

// Minimal bases.
Basis pre_discrete(const Net& net, TransitionId t, const Configuration& c, Cost cap = kNoCap, Order ord = Order::All);
Basis pre_A(const Net& net, const Configuration& c, Cost cap = kNoCap, Order ord = Order::All);
Basis pre_B(const Net& net, const Configuration& c, Cost cap = kNoCap, Order ord = Order::Free);

// All multisets m' with m'+1 = m (empty when some value is 0).
std::vector<Multiset> preimages(const Net& net, const Multiset& m);

} // namespace ptpn
