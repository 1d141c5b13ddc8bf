#pragma once

#include "ptpn/marking.hpp"
#include "ptpn/region.hpp"

#include <optional>
#include <vector>

namespace ptpn {

bool class_sat(Part part, RVal v, const Interval& i);

RVal value_of_age(const Net& net, const Rational& age);

Region abstract(const Net& net, const Marking& m, const Rational& delta);
bool satisfies(const Net& net, const Marking& m, const Region& r, const Rational& delta);
Marking concretize(const Net& net, const Region& r, const Rational& delta);

std::optional<Region> succ_type1(const Region& r);
std::optional<Region> succ_type2(const Net& net, const Region& r);

enum class DelayKind { III, IV };

// III: split = |L_left| in [0, |L|]. IV: split = index of the landing class in [0, |L|).
// Throws std::out_of_range on an invalid split.
Region succ_typeB(const Net& net, const Region& r, DelayKind kind, std::size_t split);

Cost token_cost(const Net& net, const Region& r);
Cost token_cost(const Net& net, const Multiset& m);

struct Removal {
	Part part = Part::Zero;
	std::size_t cls = 0;  // class index in H or L at the time of removal
	RToken token;
	friend bool operator==(const Removal&, const Removal&) = default;
};

struct Insertion {
	enum class Mode { Zero, Join, Fresh };
	Mode mode = Mode::Zero;
	Part part = Part::Zero;
	std::size_t index = 0;  // Join: class index; Fresh: gap index
	RToken token;
	friend bool operator==(const Insertion&, const Insertion&) = default;
};

// Applied in order: removals for the input arcs, then insertions for the output arcs.
struct FireChoice {
	std::vector<Removal> removals;
	std::vector<Insertion> insertions;
	friend bool operator==(const FireChoice&, const FireChoice&) = default;
};

void apply_removal(Region& r, const Removal& rm);
void apply_insertion(Region& r, const Insertion& ins);

struct FireOutcome {
	Region region;
	FireChoice choice;
};

// One outcome per distinct result region, sorted by region.
std::vector<FireOutcome> fire_region_choices(const Net& net, const Region& r, TransitionId t);
std::vector<Region> fire_region(const Net& net, const Region& r, TransitionId t);

enum class StepKind { TypeI, TypeII, TypeIII, TypeIV, Fire };

const char* kind_name(StepKind k);
bool is_type_a(StepKind k);

struct RegionStep {
	StepKind kind = StepKind::TypeI;
	Region result;
	Cost cost = 0;
	TransitionId transition = 0;
	std::size_t split = 0;
	FireChoice choice;
};

std::vector<RegionStep> succ_A(const Net& net, const Region& r);
std::vector<RegionStep> succ_B(const Net& net, const Region& r);

} // namespace ptpn
