#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wordeq/equation.hpp"
#include "wordeq/groups.hpp"
#include "wordeq/oracle.hpp"

namespace wordeq {

class ParseError : public std::runtime_error {
public:
	ParseError(int line, int column, const std::string& what);
	int line;
	int column;
};

// An equation file:
//
//   mode: group          (optional, monoid by default)
//   letters: a b
//   vars: X Y
//   X a Y = b Y^         (one or more equations)
//
// Names are identifiers, a trailing ^ is the involution, 1 is the empty
// word and // starts a comment. Tokens may be written without spaces;
// the longest declared name wins.
struct Problem {
	Mode mode = Mode::Monoid;
	Universe uni;
	std::vector<Sym> vars;
	std::vector<Equation> equations;
};

Problem parse_problem(const std::string& text);

// One side of an equation, or a value when allow_vars is false.
Word parse_word(const Universe& uni, const std::string& text, bool allow_vars, int line = 1, int column = 1);

// "X=ab,Y=b^a": every variable gets a reduced word over the letters.
Assignment parse_assignment(const Problem& p, const std::string& text);

std::string format_word(const Universe& uni, const Word& w);

} // namespace wordeq
