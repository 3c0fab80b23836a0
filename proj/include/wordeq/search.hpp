#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wordeq/equation.hpp"
#include "wordeq/transitions.hpp"

namespace wordeq {

struct SearchOptions {
	std::optional<Bounds> bounds; // defaults to the context's bounds
	bool split_blocks = true;     // guess block-crossing variables and split them
	bool all_partitions = false;  // branch over every (L,R) instead of one maximal
	bool check = true;            // validate every state and edge as it is built
	std::size_t max_states = 200000;
	std::size_t max_depth = 100000;
};

struct NfaEdge {
	std::size_t src = 0;
	std::size_t dst = 0;
	EdgeKind kind = EdgeKind::Substitution;
	Endo label;
	Tau tau;
	std::string note;
};

struct PartialNfa {
	std::vector<State> states;
	std::vector<NfaEdge> edges;
	std::vector<std::size_t> initials;
	std::vector<std::size_t> finals;
	bool complete = true;
	std::size_t violations = 0;
	std::vector<std::string> violation_log;
	std::size_t weight_checks = 0; // non-final compression edges checked
};

PartialNfa explore(const Context& ctx, const SearchOptions& opt = {});

// Admissible mu values for the remainder after removing a prefix with
// constraint `head` from something constrained by `whole`.
std::vector<NF> residuals(NF whole, NF head, int num_letters);

// Initial constraint maps: every mu_init with mu(X) != 0 that is consistent
// with the component structure of W_init.
std::vector<std::map<Sym, NF>> initial_mus(const Context& ctx);

PartialNfa trim(const PartialNfa& nfa);
bool has_cycle(const PartialNfa& nfa);

// Deterministic replay for a known solution. Every step is checked for the
// forward property; milestones of block and pair compression are logged.
struct TraceStep {
	std::string phase; // preprocess, block, pair, erase, reduce or final
	std::string description;
	EdgeKind kind = EdgeKind::Substitution;
	Endo label;
	Tau tau;
	State state;       // state after the step
	Assignment sigma;  // solution at that state
	bool forward_ok = true;
};

struct BlockMilestone {
	std::map<Sym, std::set<std::size_t>> lambda; // b -> Lambda_b (positive and negative letters)
	std::map<Sym, std::set<Sym>> crossing;       // b -> X_b
	bool squares_left = false;                   // a proper b^2 remains afterwards
};

struct PairMilestone {
	std::vector<std::vector<Sym>> maximal_L; // every maximal partition, as the set L
	std::vector<Sym> chosen_L;
	Endo alpha; // what each letter of B \ A stands for over A
};

struct WitnessTrace {
	bool ok = false;
	std::string error;
	State initial;
	std::vector<TraceStep> steps;
	std::vector<BlockMilestone> blocks;
	std::vector<PairMilestone> pairs;
	std::vector<Word> solution; // recovered from the labels, per variable
};

// Preprocessing continues while |W| <= 2n + |W_init|.
Bounds witness_bounds(const Context& ctx);

WitnessTrace witness_trace(const Context& ctx, const Assignment& sigma, std::optional<Bounds> bounds = std::nullopt);

} // namespace wordeq
