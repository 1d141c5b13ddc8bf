#pragma once

#include "ptpn/region.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace ptpn {

enum class Order { All, Free };

const char* order_name(Order o);

// Remaining budget: larger budgets are better.
struct Configuration {
	Region region;
	Cost budget = 0;
	friend auto operator<=>(const Configuration&, const Configuration&) = default;
	friend bool operator==(const Configuration&, const Configuration&) = default;
};

bool multiset_embeds(const Net& net, const Multiset& small, const Multiset& big, Order ord);
bool region_embeds(const Net& net, const Region& r1, const Region& r2, Order ord);
bool config_leq(const Net& net, const Configuration& c1, const Configuration& c2, Order ord);

// Antichain of minimal elements, kept in canonical (sorted) order.
class Basis {
public:
	explicit Basis(Order ord = Order::All) : order_(ord) {}

	Order order() const { return order_; }
	const std::vector<Configuration>& elements() const { return elements_; }
	std::size_t size() const { return elements_.size(); }
	bool empty() const { return elements_.empty(); }

	// Adds c unless an element is below it; drops elements above it. Returns whether c was added.
	bool insert(const Net& net, const Configuration& c);
	bool covers(const Net& net, const Configuration& c) const;

	friend bool operator==(const Basis&, const Basis&) = default;
	friend Basis minimize(const Net& net, std::vector<Configuration> configs, Order ord);

private:
	Order order_;
	std::vector<Configuration> elements_;
};

Basis minimize(const Net& net, std::vector<Configuration> configs, Order ord);
bool member_upward(const Net& net, const Configuration& c, const Basis& b);

std::size_t cost_token_count(const Net& net, const Region& r);
// Cost-place tokens of r regardless of position. Under Order::Free, c1 <= c2
// implies equal signatures, since the extra tokens of c2 must be free.
Multiset cost_signature(const Net& net, const Region& r);

enum class PadBound {
	StrictCount,  // cost-token count < limit
	TokenCount,   // cost-token count <= limit
	TokenCost,    // token_cost <= limit
};

// Free basis of the configurations above c (under All) that contain only
// additional cost-place tokens and respect the bound.
Basis cost_pad(const Net& net, const Configuration& c, Cost limit, PadBound bound);
// As above, but gives up (nullopt) once more than max_regions regions were generated.
std::optional<Basis> cost_pad(const Net& net, const Configuration& c, Cost limit, PadBound bound,
                              std::size_t max_regions);
// Count-based bound against c's own budget.
Basis cost_pad(const Net& net, const Configuration& c);

nlohmann::json config_to_json(const Net& net, const Configuration& c);
nlohmann::json basis_to_json(const Net& net, const Basis& b);

} // namespace ptpn
