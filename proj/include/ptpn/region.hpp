#pragma once

#include "ptpn/net.hpp"

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ptpn {

// Integer part 0..cmax, or omega for ages >= cmax + 1.
class RVal {
public:
	constexpr RVal() = default;
	static constexpr RVal fin(std::uint32_t k) { return RVal(static_cast<std::uint16_t>(k)); }
	static constexpr RVal omega() { return RVal(kOmega); }

	constexpr bool is_omega() const { return raw_ == kOmega; }
	constexpr std::uint32_t value() const { return raw_; }

	// Fin(cmax) + 1 = omega + 1 = omega.
	constexpr RVal incremented(std::uint32_t cmax) const {
		return is_omega() || raw_ >= cmax ? omega() : fin(raw_ + 1u);
	}

	friend constexpr auto operator<=>(RVal, RVal) = default;

private:
	static constexpr std::uint16_t kOmega = 0xFFFF;
	constexpr explicit RVal(std::uint16_t raw) : raw_(raw) {}
	std::uint16_t raw_ = 0;
};

struct RToken {
	PlaceId place = 0;
	RVal value;
	friend constexpr auto operator<=>(const RToken&, const RToken&) = default;
};

// Sorted vector.
using Multiset = std::vector<RToken>;

enum class Part { High, Zero, Low };

struct Region {
	std::vector<Multiset> high;
	Multiset zero;
	std::vector<Multiset> low;

	std::size_t token_count() const;
	bool empty() const { return high.empty() && zero.empty() && low.empty(); }

	friend auto operator<=>(const Region&, const Region&) = default;
	friend bool operator==(const Region&, const Region&) = default;
};

void normalize(Multiset& m);
Multiset make_multiset(std::vector<RToken> tokens);
void insert_token(Multiset& m, RToken t);
bool erase_token(Multiset& m, const RToken& t);
Multiset incremented(const Multiset& m, std::uint32_t cmax);

// Throws std::invalid_argument on empty classes or values above cmax.
void validate_region(const Net& net, const Region& r);

// H:[{red:6, green:4} {blue:0}] | Z:{blue:1, red:5} | L:[{orange:2, green:w}]
std::string format_region(const Net& net, const Region& r);
std::string format_multiset(const Net& net, const Multiset& m);
Region parse_region(const Net& net, std::string_view text);

nlohmann::json region_to_json(const Net& net, const Region& r);
Region region_from_json(const Net& net, const nlohmann::json& j);

} // namespace ptpn
