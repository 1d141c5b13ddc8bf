#pragma once

#include "ptpn/semantics.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptpn {

class TraceParseError : public std::runtime_error {
public:
	TraceParseError(std::size_t line, const std::string& message);
	std::size_t line() const { return line_; }

private:
	std::size_t line_;
};

// JSON Lines: an optional {"initial": [...]} line followed by steps
// {"delay": "p/q"} or {"fire": "t", "consume": [...], "produce": [...]}.
struct Trace {
	std::optional<Marking> initial;
	std::vector<Step> steps;
};

Trace parse_trace(const Net& net, std::string_view text);
nlohmann::json step_to_json(const Net& net, const Step& step);
std::string write_trace(const Net& net, const Computation& c);

} // namespace ptpn
