#pragma once

#include <map>

#include "wordeq/alphabet.hpp"

namespace wordeq {

// theta: partial map symbol -> constant. x commutes with theta(x) and
// nothing else commutes.
using TypeMap = std::map<Sym, Sym>;

bool commute(Sym x, Sym y, const TypeMap& theta);

Word projection(const Word& w, Sym a, Sym b);

bool trace_eq(const Word& u, const Word& w, const TypeMap& theta);

bool is_factor(const Word& u, const Word& w, const TypeMap& theta);

// lexicographically least representative of the commutation class
Word normal_form(const Word& w, const TypeMap& theta);

} // namespace wordeq
