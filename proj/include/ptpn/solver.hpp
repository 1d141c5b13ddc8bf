#pragma once

#include "ptpn/order.hpp"
#include "ptpn/pre.hpp"
#include "ptpn/witness.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ptpn {

struct Query {
	Net net;
	PlaceId p_init = 0;
	PlaceId p_fin = 0;
	Cost threshold = 0;
};

struct SearchBounds {
	std::size_t max_depth = 64;
	std::size_t max_tokens = 32;
	std::size_t max_configs = 100000;
};

enum class Bound { Depth, Tokens, Configs };

const char* bound_name(Bound b);

struct IterationStat {
	std::size_t k = 0;
	std::size_t v_size = 0;
	std::size_t u_size = 0;
};

struct Verdict {
	enum class Kind { Yes, No, Unknown };
	Kind kind = Kind::Unknown;
	std::optional<Witness> witness;
	std::vector<Bound> exhausted;
	std::vector<IterationStat> iterations;
};

const char* verdict_name(Verdict::Kind k);

struct SolverOptions {
	SearchBounds bounds;
	// Padding of the A-only fixpoint: limit = threshold - budget.
	PadBound pad = PadBound::TokenCost;
};

Configuration initial_configuration(PlaceId p_init, Cost budget);

Basis target_basis(const Net& net, PlaceId p_fin);

using PreOperator = std::function<std::vector<PreResult>(const Configuration&)>;

struct FixpointResult {
	Basis basis;
	bool exhausted = false;
};

enum class Worklist { Fifo, Lifo };

FixpointResult acjt_fixpoint(const Net& net, const Basis& start, const PreOperator& pre, Order ord,
                             std::size_t max_configs = SearchBounds{}.max_configs, Worklist policy = Worklist::Fifo);

struct BoundedResult {
	Basis basis{Order::Free};
	bool exhausted = false;
	std::vector<Bound> hit;
};

// Backward A-exploration under Free from the targets; budgets above cap are pruned.
BoundedResult bounded_pre_star(const Net& net, const Basis& targets, const SearchBounds& bounds, Cost cap);

Verdict cost_threshold(const Query& q, const SolverOptions& options = {});

class ResourceLimit : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Exact; throws ResourceLimit when the fixpoint exceeds max_configs.
bool coverability(const Net& net, PlaceId p_init, PlaceId p_fin, std::size_t max_configs = SearchBounds{}.max_configs);

struct OptResult {
	enum class Kind { Infinite, Value, Unresolved };
	enum class Exactness { Exact, UpperBound };
	Kind kind = Kind::Unresolved;
	Cost value = 0;
	Exactness exactness = Exactness::Exact;
	std::vector<Verdict::Kind> verdicts;  // per threshold tried
	std::optional<Witness> witness;
};

OptResult cost_optimal(const Net& net, PlaceId p_init, PlaceId p_fin, const SolverOptions& options = {},
                       Cost max_threshold = 64);

Verdict forward_search(const Query& q, const SearchBounds& bounds = {});

} // namespace ptpn
