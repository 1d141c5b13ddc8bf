#include "ptpn/net.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace ptpn {

Interval Interval::make(std::uint32_t lo, bool lo_closed, std::optional<std::uint32_t> hi, bool hi_closed) {
	if (!hi && hi_closed) throw std::invalid_argument("infinite upper bound must be open");
	if (hi) {
		bool ok = lo < *hi || (lo == *hi && lo_closed && hi_closed);
		if (!ok) throw std::invalid_argument("empty interval");
	}
	return Interval{lo, lo_closed, hi, hi_closed};
}

bool interval_contains(const Interval& i, const Rational& age) {
	Rational lo(i.lo);
	if (i.lo_closed ? age < lo : age <= lo) return false;
	if (!i.hi) return true;
	Rational hi(*i.hi);
	return i.hi_closed ? age <= hi : age < hi;
}

std::string to_string(const Interval& i) {
	std::string s;
	s += i.lo_closed ? '[' : '(';
	s += std::to_string(i.lo);
	s += ',';
	s += i.hi ? std::to_string(*i.hi) : "inf";
	s += i.hi_closed ? ']' : ')';
	return s;
}

Net::Net(std::vector<Place> places, std::vector<Transition> transitions)
    : places_(std::move(places)), transitions_(std::move(transitions)) {
	if (places_.empty()) throw std::invalid_argument("a net needs at least one place");
	std::set<std::string> names;
	for (const auto& p : places_)
		if (!names.insert(p.name).second) throw std::invalid_argument("duplicate place name '" + p.name + "'");
	names.clear();
	for (const auto& t : transitions_) {
		if (!names.insert(t.name).second) throw std::invalid_argument("duplicate transition name '" + t.name + "'");
		for (const auto* arcs : {&t.inputs, &t.outputs})
			for (const auto& a : *arcs) {
				if (a.place >= places_.size()) throw std::invalid_argument("arc refers to unknown place");
				Interval::make(a.interval.lo, a.interval.lo_closed, a.interval.hi, a.interval.hi_closed);
				cmax_ = std::max(cmax_, a.interval.hi ? std::max(a.interval.lo, *a.interval.hi) : a.interval.lo);
			}
	}
}

bool Net::has_free_place() const {
	return std::any_of(places_.begin(), places_.end(), [](const Place& p) { return p.cost == 0; });
}

std::optional<PlaceId> Net::place_id(std::string_view name) const {
	for (PlaceId p = 0; p < places_.size(); ++p)
		if (places_[p].name == name) return p;
	return std::nullopt;
}

std::optional<TransitionId> Net::transition_id(std::string_view name) const {
	for (TransitionId t = 0; t < transitions_.size(); ++t)
		if (transitions_[t].name == name) return t;
	return std::nullopt;
}

Net Net::zero_cost_copy() const {
	auto places = places_;
	auto transitions = transitions_;
	for (auto& p : places) p.cost = 0;
	for (auto& t : transitions) t.cost = 0;
	return Net(std::move(places), std::move(transitions));
}

std::uint32_t cmax(const Net& net) { return net.cmax(); }

NetParseError::NetParseError(Code code, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": [" +
                         code_name(code) + "] " + message),
      code_(code), line_(line), column_(column) {}

const char* code_name(NetParseError::Code code) {
	switch (code) {
	case NetParseError::Code::Syntax: return "syntax";
	case NetParseError::Code::UnknownPlace: return "unknown-place";
	case NetParseError::Code::DuplicateName: return "duplicate-name";
	case NetParseError::Code::EmptyInterval: return "empty-interval";
	case NetParseError::Code::NoPlaces: return "no-places";
	}
	return "?";
}

namespace {

struct Word {
	std::string_view text;
	std::size_t column;
};

std::vector<Word> split_words(std::string_view line) {
	std::vector<Word> words;
	std::size_t i = 0;
	while (i < line.size()) {
		while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
		std::size_t start = i;
		while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
		if (i > start) words.push_back({line.substr(start, i - start), start + 1});
	}
	return words;
}

bool valid_name(std::string_view s) {
	if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
	return std::all_of(s.begin(), s.end(), [](char c) {
		return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '\'';
	});
}

template <typename T>
std::optional<T> parse_natural(std::string_view s) {
	T value{};
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
	if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
	return value;
}

class Parser {
public:
	explicit Parser(std::string_view text) : text_(text) {}

	Net run() {
		std::size_t line_no = 0;
		std::size_t pos = 0;
		while (pos <= text_.size()) {
			auto end = text_.find('\n', pos);
			if (end == std::string_view::npos) end = text_.size();
			++line_no;
			auto line = text_.substr(pos, end - pos);
			if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
			if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
			parse_line(line_no, line);
			if (end == text_.size()) break;
			pos = end + 1;
		}
		if (places_.empty()) throw NetParseError(NetParseError::Code::NoPlaces, line_no, 1, "net declares no places");
		return Net(std::move(places_), std::move(transitions_));
	}

private:
	[[noreturn]] void fail(NetParseError::Code code, std::size_t line, std::size_t col, const std::string& msg) {
		throw NetParseError(code, line, col, msg);
	}

	void parse_line(std::size_t line_no, std::string_view line) {
		auto words = split_words(line);
		if (words.empty()) return;
		auto keyword = words[0].text;
		if (keyword == "place" || keyword == "transition") {
			if (words.size() != 4 || words[2].text != "cost")
				fail(NetParseError::Code::Syntax, line_no, words[0].column,
				     "expected '" + std::string(keyword) + " <name> cost <nat>'");
			if (!valid_name(words[1].text))
				fail(NetParseError::Code::Syntax, line_no, words[1].column, "invalid name '" + std::string(words[1].text) + "'");
			auto cost = parse_natural<Cost>(words[3].text);
			if (!cost) fail(NetParseError::Code::Syntax, line_no, words[3].column, "cost must be a natural number");
			std::string name(words[1].text);
			if (keyword == "place") {
				if (place_names_.count(name))
					fail(NetParseError::Code::DuplicateName, line_no, words[1].column, "duplicate place '" + name + "'");
				place_names_.insert(name);
				places_.push_back(Place{name, *cost});
			} else {
				if (transition_names_.count(name))
					fail(NetParseError::Code::DuplicateName, line_no, words[1].column, "duplicate transition '" + name + "'");
				transition_names_.insert(name);
				transitions_.push_back(Transition{name, *cost, {}, {}});
			}
			return;
		}
		if (keyword == "in" || keyword == "out") {
			if (transitions_.empty())
				fail(NetParseError::Code::Syntax, line_no, words[0].column, "arc outside of a transition");
			if (words.size() < 3)
				fail(NetParseError::Code::Syntax, line_no, words[0].column, "expected '" + std::string(keyword) + " <place> <interval>'");
			PlaceId place = 0;
			bool found = false;
			for (PlaceId p = 0; p < places_.size(); ++p)
				if (places_[p].name == words[1].text) place = p, found = true;
			if (!found)
				fail(NetParseError::Code::UnknownPlace, line_no, words[1].column, "unknown place '" + std::string(words[1].text) + "'");
			std::string spec;
			for (std::size_t i = 2; i < words.size(); ++i) spec += words[i].text;
			Arc arc{place, parse_interval(line_no, words[2].column, spec)};
			(keyword == "in" ? transitions_.back().inputs : transitions_.back().outputs).push_back(arc);
			return;
		}
		fail(NetParseError::Code::Syntax, line_no, words[0].column, "unexpected '" + std::string(keyword) + "'");
	}

	Interval parse_interval(std::size_t line_no, std::size_t col, std::string_view s) {
		auto bad = [&](const std::string& why) { fail(NetParseError::Code::Syntax, line_no, col, "interval: " + why); };
		if (s.size() < 5) bad("expected [a,b] form");
		char open = s.front(), close = s.back();
		if (open != '[' && open != '(') bad("expected '[' or '('");
		if (close != ']' && close != ')') bad("expected ']' or ')'");
		auto body = s.substr(1, s.size() - 2);
		auto comma = body.find(',');
		if (comma == std::string_view::npos) bad("missing ','");
		auto lo = parse_natural<std::uint32_t>(body.substr(0, comma));
		if (!lo) bad("lower bound must be a natural number");
		auto hi_text = body.substr(comma + 1);
		std::optional<std::uint32_t> hi;
		if (hi_text != "inf") {
			hi = parse_natural<std::uint32_t>(hi_text);
			if (!hi) bad("upper bound must be a natural number or 'inf'");
		} else if (close == ']') {
			bad("'inf' needs an open bracket");
		}
		try {
			return Interval::make(*lo, open == '[', hi, close == ']');
		} catch (const std::invalid_argument&) {
			fail(NetParseError::Code::EmptyInterval, line_no, col, "empty interval " + std::string(s));
		}
	}

	std::string_view text_;
	std::vector<Place> places_;
	std::vector<Transition> transitions_;
	std::set<std::string> place_names_;
	std::set<std::string> transition_names_;
};

} // namespace

Net parse_net(std::string_view text) { return Parser(text).run(); }

std::string serialize_net(const Net& net) {
	std::ostringstream out;
	for (const auto& p : net.places()) out << "place " << p.name << " cost " << p.cost << '\n';
	for (const auto& t : net.transitions()) {
		out << "transition " << t.name << " cost " << t.cost << '\n';
		for (const auto& a : t.inputs) out << "  in " << net.place(a.place).name << ' ' << to_string(a.interval) << '\n';
		for (const auto& a : t.outputs) out << "  out " << net.place(a.place).name << ' ' << to_string(a.interval) << '\n';
	}
	return out.str();
}

} // namespace ptpn
