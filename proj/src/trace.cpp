#include "ptpn/trace.hpp"

namespace ptpn {

TraceParseError::TraceParseError(std::size_t line, const std::string& message)
    : std::runtime_error("trace line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<Token> token_list(const Net& net, const nlohmann::json& j) {
	if (!j.is_array()) throw std::invalid_argument("expected an array of \"place:age\" strings");
	std::vector<Token> out;
	for (const auto& item : j) {
		if (!item.is_string()) throw std::invalid_argument("expected \"place:age\" string");
		out.push_back(parse_token(net, item.get<std::string>()));
	}
	return out;
}

nlohmann::json token_json(const Net& net, const std::vector<Token>& tokens) {
	auto arr = nlohmann::json::array();
	for (const auto& t : tokens) arr.push_back(format_token(net, t));
	return arr;
}

} // namespace

Trace parse_trace(const Net& net, std::string_view text) {
	Trace trace;
	std::size_t line_no = 0, pos = 0;
	while (pos < text.size()) {
		auto end = text.find('\n', pos);
		if (end == std::string_view::npos) end = text.size();
		++line_no;
		auto line = text.substr(pos, end - pos);
		pos = end + 1;
		if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
		try {
			auto j = nlohmann::json::parse(line);
			if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
			if (j.contains("initial")) {
				if (trace.initial || !trace.steps.empty()) throw std::invalid_argument("\"initial\" must be the first line");
				trace.initial = Marking(token_list(net, j.at("initial")));
			} else if (j.contains("delay")) {
				const auto& d = j.at("delay");
				Rational value = d.is_string() ? parse_rational(d.get<std::string>()) : parse_rational(d.dump());
				trace.steps.push_back(Delay{value});
			} else if (j.contains("fire")) {
				auto name = j.at("fire").get<std::string>();
				auto t = net.transition_id(name);
				if (!t) throw std::invalid_argument("unknown transition '" + name + "'");
				Fire f{*t, {}, {}};
				if (j.contains("consume")) f.consumed = token_list(net, j.at("consume"));
				if (j.contains("produce")) f.produced = token_list(net, j.at("produce"));
				trace.steps.push_back(std::move(f));
			} else {
				throw std::invalid_argument("expected \"delay\", \"fire\" or \"initial\"");
			}
		} catch (const nlohmann::json::exception& e) {
			throw TraceParseError(line_no, e.what());
		} catch (const std::invalid_argument& e) {
			throw TraceParseError(line_no, e.what());
		}
	}
	return trace;
}

nlohmann::json step_to_json(const Net& net, const Step& step) {
	if (const auto* d = std::get_if<Delay>(&step)) return {{"delay", to_string(d->duration)}};
	const auto& f = std::get<Fire>(step);
	return {{"fire", net.transition(f.transition).name},
	        {"consume", token_json(net, f.consumed)},
	        {"produce", token_json(net, f.produced)}};
}

std::string write_trace(const Net& net, const Computation& c) {
	std::string out = nlohmann::json{{"initial", token_json(net, c.initial.tokens())}}.dump() + "\n";
	for (const auto& s : c.steps) out += step_to_json(net, s).dump() + "\n";
	return out;
}

} // namespace ptpn
