#pragma once

#include "ptpn/marking.hpp"
#include "ptpn/net.hpp"

#include <stdexcept>
#include <variant>
#include <vector>

namespace ptpn {

struct Delay {
	Rational duration;
	friend bool operator==(const Delay&, const Delay&) = default;
};

struct Fire {
	TransitionId transition = 0;
	std::vector<Token> consumed;
	std::vector<Token> produced;
	friend bool operator==(const Fire&, const Fire&) = default;
};

using Step = std::variant<Delay, Fire>;

struct Computation {
	Marking initial;
	std::vector<Step> steps;
};

class StepError : public std::runtime_error {
public:
	enum class Reason { NonPositiveDelay, BindingNotEnabled, ProducedOutOfInterval, ArityMismatch };

	StepError(Reason reason, const std::string& message);
	Reason reason() const { return reason_; }

private:
	Reason reason_;
};

const char* reason_name(StepError::Reason reason);

class ReplayError : public std::runtime_error {
public:
	ReplayError(std::size_t index, StepError::Reason reason, const std::string& message);
	std::size_t index() const { return index_; }
	StepError::Reason reason() const { return reason_; }

private:
	std::size_t index_;
	StepError::Reason reason_;
};

Cost storage_rate(const Net& net, const Marking& m);

struct TimedResult {
	Marking marking;
	Rational cost;
};

// d must be positive.
TimedResult delay_step(const Net& net, const Marking& m, const Rational& d);

// Distinct consumed multisets (sorted token lists), one token per input arc.
std::vector<std::vector<Token>> enabled_bindings(const Net& net, const Marking& m, TransitionId t);

struct FireResult {
	Marking marking;
	Cost cost = 0;
};

FireResult fire_step(const Net& net, const Marking& m, TransitionId t, const std::vector<Token>& consumed,
                     const std::vector<Token>& produced);

struct RunResult {
	Marking final_marking;
	Rational total_cost;
	std::vector<Rational> step_costs;
};

// Throws ReplayError naming the first invalid step.
RunResult run(const Net& net, const Computation& c);

} // namespace ptpn
