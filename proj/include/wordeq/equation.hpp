#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wordeq/alphabet.hpp"
#include "wordeq/traces.hpp"

namespace wordeq {

struct Bounds {
	std::size_t n = 0;
	std::size_t winit_len = 0;
	std::size_t small_bound = 0;
	std::size_t pair_start_bound = 0;
	std::size_t block_bound = 0;
	std::size_t hard_cap = 0;
	std::size_t max_states = 200000;
	std::size_t max_depth = 100000;

	// thresholds as used by the completeness argument
	static Bounds paper(std::size_t n, std::size_t winit_len);
	// tight thresholds: popping stops at 3n, typed pops stop at 6n plus slack
	static Bounds compact(std::size_t n, std::size_t winit_len, std::size_t var_occ);
};

struct Weight4 {
	std::size_t w1 = 0, w2 = 0, w3 = 0, w4 = 0;
	auto operator<=>(const Weight4&) const = default;
};

struct SolutionWeight5 {
	std::size_t total = 0;
	Weight4 w;
	auto operator<=>(const SolutionWeight5&) const = default;
};

// Extended equation (W, B, X, theta, mu). B always contains A; X is closed
// under involution; mu is stored for symbols outside A only.
struct State {
	Word W;
	std::vector<Sym> B;
	std::vector<Sym> X;
	TypeMap theta;
	std::map<Sym, NF> mu;

	NF mu_of(Sym s) const;
	NF mu_of(const Word& w) const;
	bool has_var(Sym x) const;
	bool has_const(Sym c) const;
	Word inv_W() const { return inv(W); }
	std::string key() const;
	bool operator==(const State&) const = default;
};

// Per-equation data shared by all states.
struct Context {
	const Universe* uni = nullptr;
	Word U, V;
	std::vector<Sym> xinit; // positive members, in order
	Word winit;
	std::size_t n = 0;
	std::size_t winit_hashes = 0;
	std::size_t winit_var_occ = 0;
	Bounds bounds;

	int m() const { return static_cast<int>(xinit.size()); }
	Sym fresh_base = kVarBase;
	// fresh variables are allocated above every named one
	Sym first_fresh_var() const { return fresh_base; }
	Sym seed(int i) const { return const_pair(uni->num_letters() + i); }
	std::string show(const Word& w) const { return uni->show(w); }
	std::string show_compact(const Word& w) const { return uni->show(w, ""); }
};

class EquationError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// n = |A| + |UV|
std::size_t input_size(const Universe& uni, const Word& U, const Word& V);

// Builds the context and the state with W = W_init, B = A, theta = {} and
// mu unassigned on variables.
Context make_context(const Universe& uni, const Word& U, const Word& V, const std::vector<Sym>& vars,
                     std::optional<Bounds> bounds = std::nullopt);
State build_winit(const Context& ctx);

struct Violation {
	int condition; // 0 = well-formedness, 1..6 as in the definition
	std::string detail;
};
std::vector<Violation> validate_state(const State& s, const Context& ctx);

Weight4 weight(const State& s);

bool is_initial(const State& s, const Context& ctx);
bool is_final(const State& s, const Context& ctx);
bool is_small(const State& s, const Bounds& b);

using Assignment = std::map<Sym, Word>; // positive variable -> word

Word apply_assignment(const Word& w, const Assignment& sigma);
bool check_B_solution(const State& s, const Assignment& sigma);

// Quick necessary conditions for solvability: mu of every component matches
// its mirror, and heads/tails of mirrored components agree where constant.
bool plausible(const State& s, const Context& ctx);

// Renames fresh constants and fresh variables to canonical indices.
struct Canonical {
	State state;
	std::map<Sym, Sym> cmap; // old constant -> new constant (non-A only)
	std::map<Sym, Sym> vmap; // old variable -> new variable (fresh only)
};
Canonical canonicalize(const State& s, const Context& ctx);

Sym next_const_id(const State& s, const Context& ctx);
Sym next_var_id(const State& s, const Context& ctx);

std::string show_state(const State& s, const Context& ctx);

} // namespace wordeq
