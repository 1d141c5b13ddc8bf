#pragma once

#include "ptpn/net.hpp"
#include "ptpn/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ptpn {

struct Token {
	PlaceId place = 0;
	Rational age;

	friend bool operator==(const Token&, const Token&) = default;
	friend bool operator<(const Token& a, const Token& b) {
		return a.place != b.place ? a.place < b.place : a.age < b.age;
	}
};

// Multiset of tokens, kept sorted so that equality is structural.
class Marking {
public:
	Marking() = default;
	explicit Marking(std::vector<Token> tokens);

	const std::vector<Token>& tokens() const { return tokens_; }
	std::size_t size() const { return tokens_.size(); }
	bool empty() const { return tokens_.empty(); }
	std::size_t count(PlaceId p) const;

	void add(Token t);
	bool remove(const Token& t);
	bool contains(const std::vector<Token>& sub) const;

	friend bool operator==(const Marking&, const Marking&) = default;

private:
	std::vector<Token> tokens_;
};

// Marking with a single token of age 0.
Marking initial_marking(PlaceId p);

// "red:0, blue:7/2"; throws std::invalid_argument.
Token parse_token(const Net& net, std::string_view text);
Marking parse_marking(const Net& net, std::string_view text);
std::string format_token(const Net& net, const Token& t);
std::string format_marking(const Net& net, const Marking& m);

} // namespace ptpn
