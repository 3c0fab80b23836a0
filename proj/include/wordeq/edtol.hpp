#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wordeq/search.hpp"

namespace wordeq {

// Applies labels given in path order h_1 ... h_t to w: h_t first.
Word compose_apply(const std::vector<Endo>& labels, const Word& w);

using Tuple = std::vector<Word>; // one word per variable of X_init

struct EnumLimits {
	std::size_t max_len = 4;        // per component
	std::vector<std::size_t> max_len_each; // overrides max_len where given
	std::size_t max_steps = 2000000; // backward expansions before giving up
};

struct Enumeration {
	std::vector<Tuple> tuples; // length-lexicographic
	bool truncated = false;    // max_steps was hit
};

// Walks the automaton backwards from each final state, applying labels to
// the seed letters, and collects the tuples reached at initial states.
Enumeration enumerate_solutions(const PartialNfa& nfa, const Context& ctx, const EnumLimits& lim = {});

bool tuple_less(const Tuple& x, const Tuple& y);

enum class SolutionClass { Empty, Finite, Infinite };
const char* class_name(SolutionClass c);

struct Classification {
	SolutionClass kind = SolutionClass::Empty;
	bool exact = true; // false when the automaton was capped: only a lower bound
};

// expects a trimmed automaton
Classification classify(const PartialNfa& trimmed);

std::string export_json(const PartialNfa& nfa, const Context& ctx);
std::string export_dot(const PartialNfa& nfa, const Context& ctx);
PartialNfa import_json(const std::string& text);

// short text for an edge: compressions list c->word, substitutions X->word
std::string edge_summary(const NfaEdge& e, const Context& ctx);

} // namespace wordeq
