#include "ptpn/region.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ptpn {

std::size_t Region::token_count() const {
	std::size_t n = zero.size();
	for (const auto& m : high) n += m.size();
	for (const auto& m : low) n += m.size();
	return n;
}

void normalize(Multiset& m) { std::sort(m.begin(), m.end()); }

Multiset make_multiset(std::vector<RToken> tokens) {
	normalize(tokens);
	return tokens;
}

void insert_token(Multiset& m, RToken t) { m.insert(std::upper_bound(m.begin(), m.end(), t), t); }

bool erase_token(Multiset& m, const RToken& t) {
	auto it = std::lower_bound(m.begin(), m.end(), t);
	if (it == m.end() || *it != t) return false;
	m.erase(it);
	return true;
}

Multiset incremented(const Multiset& m, std::uint32_t cmax) {
	Multiset out;
	out.reserve(m.size());
	for (const auto& t : m) out.push_back({t.place, t.value.incremented(cmax)});
	normalize(out);
	return out;
}

void validate_region(const Net& net, const Region& r) {
	auto check = [&](const Multiset& m) {
		for (const auto& t : m) {
			if (t.place >= net.places().size()) throw std::invalid_argument("region token refers to unknown place");
			if (!t.value.is_omega() && t.value.value() > net.cmax())
				throw std::invalid_argument("region value exceeds cmax");
		}
		if (!std::is_sorted(m.begin(), m.end())) throw std::invalid_argument("multiset not in canonical order");
	};
	for (const auto& m : r.high) {
		if (m.empty()) throw std::invalid_argument("empty multiset in H");
		check(m);
	}
	check(r.zero);
	for (const auto& m : r.low) {
		if (m.empty()) throw std::invalid_argument("empty multiset in L");
		check(m);
	}
}

namespace {

std::string value_text(RVal v) { return v.is_omega() ? "w" : std::to_string(v.value()); }

std::string word_text(const Net& net, const std::vector<Multiset>& word) {
	std::string s = "[";
	for (std::size_t i = 0; i < word.size(); ++i) {
		if (i) s += ' ';
		s += format_multiset(net, word[i]);
	}
	return s + "]";
}

class RegionParser {
public:
	RegionParser(const Net& net, std::string_view text) : net_(net), text_(text) {}

	Region run() {
		Region r;
		expect_label('H');
		r.high = word();
		expect('|');
		expect_label('Z');
		r.zero = multiset();
		expect('|');
		expect_label('L');
		r.low = word();
		skip();
		if (pos_ != text_.size()) fail("trailing input");
		for (const auto& m : r.high)
			if (m.empty()) fail("empty multiset in H");
		for (const auto& m : r.low)
			if (m.empty()) fail("empty multiset in L");
		validate_region(net_, r);
		return r;
	}

private:
	[[noreturn]] void fail(const std::string& why) const {
		throw std::invalid_argument("region literal, offset " + std::to_string(pos_) + ": " + why);
	}

	void skip() {
		while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
	}

	bool peek(char c) {
		skip();
		return pos_ < text_.size() && text_[pos_] == c;
	}

	void expect(char c) {
		if (!peek(c)) fail(std::string("expected '") + c + "'");
		++pos_;
	}

	void expect_label(char c) {
		expect(c);
		expect(':');
	}

	std::vector<Multiset> word() {
		std::vector<Multiset> out;
		expect('[');
		while (!peek(']')) {
			out.push_back(multiset());
			if (peek(',')) ++pos_;
		}
		++pos_;
		return out;
	}

	Multiset multiset() {
		Multiset out;
		expect('{');
		while (!peek('}')) {
			out.push_back(token());
			if (peek(',')) ++pos_;
			else if (!peek('}')) fail("expected ',' or '}'");
		}
		++pos_;
		normalize(out);
		return out;
	}

	RToken token() {
		skip();
		std::size_t start = pos_;
		while (pos_ < text_.size() && text_[pos_] != ':' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
		auto name = text_.substr(start, pos_ - start);
		auto place = net_.place_id(name);
		if (!place) fail("unknown place '" + std::string(name) + "'");
		expect(':');
		skip();
		if (text_.substr(pos_, 1) == "w") {
			++pos_;
			return {*place, RVal::omega()};
		}
		if (text_.substr(pos_, 2) == "\xCF\x89") {  // UTF-8 omega
			pos_ += 2;
			return {*place, RVal::omega()};
		}
		std::size_t digits = pos_;
		while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
		if (digits == pos_) fail("expected a value");
		auto k = std::stoul(std::string(text_.substr(digits, pos_ - digits)));
		if (k > net_.cmax()) fail("value exceeds cmax");
		return {*place, RVal::fin(static_cast<std::uint32_t>(k))};
	}

	const Net& net_;
	std::string_view text_;
	std::size_t pos_ = 0;
};

nlohmann::json multiset_json(const Net& net, const Multiset& m) {
	auto arr = nlohmann::json::array();
	for (const auto& t : m) {
		nlohmann::json v = t.value.is_omega() ? nlohmann::json("w") : nlohmann::json(t.value.value());
		arr.push_back({{"place", net.place(t.place).name}, {"value", v}});
	}
	return arr;
}

Multiset multiset_from_json(const Net& net, const nlohmann::json& j) {
	Multiset out;
	for (const auto& item : j) {
		auto name = item.at("place").get<std::string>();
		auto place = net.place_id(name);
		if (!place) throw std::invalid_argument("unknown place '" + name + "'");
		const auto& v = item.at("value");
		if (v.is_string()) {
			if (v.get<std::string>() != "w") throw std::invalid_argument("value must be a natural or \"w\"");
			out.push_back({*place, RVal::omega()});
		} else {
			out.push_back({*place, RVal::fin(v.get<std::uint32_t>())});
		}
	}
	normalize(out);
	return out;
}

} // namespace

std::string format_multiset(const Net& net, const Multiset& m) {
	std::string s = "{";
	for (std::size_t i = 0; i < m.size(); ++i) {
		if (i) s += ", ";
		s += net.place(m[i].place).name + ":" + value_text(m[i].value);
	}
	return s + "}";
}

std::string format_region(const Net& net, const Region& r) {
	return "H:" + word_text(net, r.high) + " | Z:" + format_multiset(net, r.zero) + " | L:" + word_text(net, r.low);
}

Region parse_region(const Net& net, std::string_view text) { return RegionParser(net, text).run(); }

nlohmann::json region_to_json(const Net& net, const Region& r) {
	auto word = [&](const std::vector<Multiset>& w) {
		auto arr = nlohmann::json::array();
		for (const auto& m : w) arr.push_back(multiset_json(net, m));
		return arr;
	};
	return {{"H", word(r.high)}, {"Z", multiset_json(net, r.zero)}, {"L", word(r.low)}};
}

Region region_from_json(const Net& net, const nlohmann::json& j) {
	Region r;
	for (const auto& m : j.at("H")) r.high.push_back(multiset_from_json(net, m));
	r.zero = multiset_from_json(net, j.at("Z"));
	for (const auto& m : j.at("L")) r.low.push_back(multiset_from_json(net, m));
	validate_region(net, r);
	return r;
}

} // namespace ptpn
