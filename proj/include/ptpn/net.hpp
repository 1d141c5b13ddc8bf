#pragma once

#include "ptpn/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ptpn {

using PlaceId = std::uint32_t;
using TransitionId = std::uint32_t;
using Cost = std::uint64_t;

struct Interval {
	std::uint32_t lo = 0;
	bool lo_closed = true;
	std::optional<std::uint32_t> hi;  // nullopt = infinity
	bool hi_closed = false;

	// Throws std::invalid_argument on an empty or malformed interval.
	static Interval make(std::uint32_t lo, bool lo_closed, std::optional<std::uint32_t> hi, bool hi_closed);

	bool unbounded() const { return !hi.has_value(); }
	friend bool operator==(const Interval&, const Interval&) = default;
};

bool interval_contains(const Interval& i, const Rational& age);
std::string to_string(const Interval& i);

struct Arc {
	PlaceId place = 0;
	Interval interval;
	friend bool operator==(const Arc&, const Arc&) = default;
};

struct Place {
	std::string name;
	Cost cost = 0;
	friend bool operator==(const Place&, const Place&) = default;
};

struct Transition {
	std::string name;
	Cost cost = 0;
	std::vector<Arc> inputs;
	std::vector<Arc> outputs;
	friend bool operator==(const Transition&, const Transition&) = default;
};

class Net {
public:
	// Validates names, place references and nonemptiness; throws std::invalid_argument.
	Net(std::vector<Place> places, std::vector<Transition> transitions);

	const std::vector<Place>& places() const { return places_; }
	const std::vector<Transition>& transitions() const { return transitions_; }
	const Place& place(PlaceId p) const { return places_.at(p); }
	const Transition& transition(TransitionId t) const { return transitions_.at(t); }

	std::uint32_t cmax() const { return cmax_; }
	bool is_free(PlaceId p) const { return places_[p].cost == 0; }
	bool has_free_place() const;

	std::optional<PlaceId> place_id(std::string_view name) const;
	std::optional<TransitionId> transition_id(std::string_view name) const;

	// Same structure with every place and transition cost set to zero.
	Net zero_cost_copy() const;

	friend bool operator==(const Net& a, const Net& b) {
		return a.places_ == b.places_ && a.transitions_ == b.transitions_;
	}

private:
	std::vector<Place> places_;
	std::vector<Transition> transitions_;
	std::uint32_t cmax_ = 0;
};

std::uint32_t cmax(const Net& net);

class NetParseError : public std::runtime_error {
public:
	enum class Code { Syntax, UnknownPlace, DuplicateName, EmptyInterval, NoPlaces };

	NetParseError(Code code, std::size_t line, std::size_t column, const std::string& message);

	Code code() const { return code_; }
	std::size_t line() const { return line_; }
	std::size_t column() const { return column_; }

private:
	Code code_;
	std::size_t line_;
	std::size_t column_;
};

const char* code_name(NetParseError::Code code);

Net parse_net(std::string_view text);
std::string serialize_net(const Net& net);

} // namespace ptpn
