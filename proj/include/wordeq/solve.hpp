#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wordeq/edtol.hpp"
#include "wordeq/parse.hpp"

namespace wordeq {

struct SolveOptions {
	std::size_t max_states = 200000;
	std::size_t max_depth = 100000;
	bool check = true;
};

enum class Status { Sat, Unsat, Unknown };
const char* status_name(Status s);

struct Branch {
	Context ctx;
	PartialNfa nfa;
	PartialNfa trimmed;
};

// A monoid problem has one branch. A group problem has one per branch of
// its encoding; the solution set is the union, projected to the original
// variables.
struct Solved {
	Mode mode = Mode::Monoid;
	std::size_t originals = 0;
	std::vector<Branch> branches;
	Status status = Status::Unknown;
	Classification cls;
	bool complete = true;
	std::size_t states = 0, edges = 0, violations = 0;
};

// Adds fresh variables to p.uni in group mode; p must outlive the result.
Solved solve(Problem& p, const SolveOptions& opt = {});

struct Listing {
	std::vector<Tuple> tuples; // length-lexicographic, over the original variables
	bool truncated = false;
};
Listing enumerate(const Solved& s, std::size_t max_len, std::size_t max_steps = 2000000);

struct CheckResult {
	bool ok = true;
	std::vector<Equation> evaluated; // sigma(U), sigma(V) per equation, reduced in group mode
};
CheckResult check_assignment(const Problem& p, const Assignment& sigma);

std::string export_json(const Solved& s);
std::string export_dot(const Solved& s);

// the monoid equation handed to the search, for trace
Context monoid_context(const Problem& p);

} // namespace wordeq
