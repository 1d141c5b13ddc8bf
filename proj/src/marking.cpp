#include "ptpn/marking.hpp"

#include <algorithm>
#include <stdexcept>

namespace ptpn {

Marking::Marking(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
	for (const auto& t : tokens_)
		if (t.age < 0) throw std::invalid_argument("negative token age");
	std::sort(tokens_.begin(), tokens_.end());
}

std::size_t Marking::count(PlaceId p) const {
	return std::count_if(tokens_.begin(), tokens_.end(), [p](const Token& t) { return t.place == p; });
}

void Marking::add(Token t) {
	if (t.age < 0) throw std::invalid_argument("negative token age");
	tokens_.insert(std::upper_bound(tokens_.begin(), tokens_.end(), t), std::move(t));
}

bool Marking::remove(const Token& t) {
	auto it = std::lower_bound(tokens_.begin(), tokens_.end(), t);
	if (it == tokens_.end() || !(*it == t)) return false;
	tokens_.erase(it);
	return true;
}

bool Marking::contains(const std::vector<Token>& sub) const {
	auto sorted = sub;
	std::sort(sorted.begin(), sorted.end());
	return std::includes(tokens_.begin(), tokens_.end(), sorted.begin(), sorted.end());
}

Marking initial_marking(PlaceId p) { return Marking({Token{p, Rational(0)}}); }

Token parse_token(const Net& net, std::string_view text) {
	auto colon = text.find(':');
	if (colon == std::string_view::npos) throw std::invalid_argument("expected place:age in '" + std::string(text) + "'");
	auto name = text.substr(0, colon);
	while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
	while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
	auto place = net.place_id(name);
	if (!place) throw std::invalid_argument("unknown place '" + std::string(name) + "'");
	Rational age = parse_rational(text.substr(colon + 1));
	if (age < 0) throw std::invalid_argument("negative age in '" + std::string(text) + "'");
	return Token{*place, age};
}

Marking parse_marking(const Net& net, std::string_view text) {
	std::vector<Token> tokens;
	std::size_t pos = 0;
	while (pos < text.size()) {
		auto comma = text.find(',', pos);
		if (comma == std::string_view::npos) comma = text.size();
		auto piece = text.substr(pos, comma - pos);
		if (piece.find_first_not_of(" \t") != std::string_view::npos) tokens.push_back(parse_token(net, piece));
		pos = comma + 1;
	}
	return Marking(std::move(tokens));
}

std::string format_token(const Net& net, const Token& t) { return net.place(t.place).name + ":" + to_string(t.age); }

std::string format_marking(const Net& net, const Marking& m) {
	std::string s;
	for (const auto& t : m.tokens()) {
		if (!s.empty()) s += ", ";
		s += format_token(net, t);
	}
	return s;
}

} // namespace ptpn
