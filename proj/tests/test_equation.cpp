#include <doctest.h>

#include "wordeq/equation.hpp"

using namespace wordeq;

namespace {
struct Fig2 {
	Universe u{{"a", "b"}};
	Sym X = u.add_var("X");
	Sym a = u.letter(0), b = u.letter(1);
	Context ctx = make_context(u, {a, X}, {a, a, a, b}, {X});
};
} // namespace

TEST_CASE("W_init layout and n") {
	Fig2 f;
	// #X#aX#aaab#X^a^#b^a^a^a^#X^#
	CHECK(f.ctx.winit.size() == 21);
	CHECK(f.ctx.n == 5 + 6);
	CHECK(f.ctx.winit_hashes == 7);
	CHECK(f.ctx.winit_var_occ == 4);
	CHECK(f.u.show(f.ctx.winit, "") == "#X#aX#aaab#X^a^#b^a^a^a^#X^#");
	State s = build_winit(f.ctx);
	CHECK(is_initial(s, f.ctx));
	CHECK_FALSE(is_final(s, f.ctx));
	CHECK(validate_state(s, f.ctx).empty());
}

TEST_CASE("make_context rejects malformed input") {
	Universe u({"a"});
	Sym X = u.add_var("X");
	Sym Y = u.add_var("Y");
	CHECK_THROWS_AS(make_context(u, {X}, {Y}, {X}), EquationError);
	CHECK_THROWS_AS(make_context(u, {X, kHash}, {X}, {X}), EquationError);
	CHECK_THROWS_AS(make_context(u, {X}, {X}, {X, inv(X)}), EquationError);
	CHECK_THROWS_AS(make_context(u, {X}, {const_pair(3)}, {X}), EquationError);
}

TEST_CASE("assignments and B-solutions") {
	Fig2 f;
	Assignment good{{f.X, {f.a, f.a, f.b}}};
	CHECK(apply_assignment({f.a, inv(f.X)}, good) == Word{f.a, inv(f.b), inv(f.a), inv(f.a)});
	State s = build_winit(f.ctx);
	s.mu[f.X] = NF::pair(f.a, f.b);
	s.mu[inv(f.X)] = NF::pair(inv(f.b), inv(f.a));
	CHECK(check_B_solution(s, good));
	CHECK_FALSE(check_B_solution(s, {{f.X, {f.a, f.b}}}));
}

TEST_CASE("final states are seed lists") {
	Fig2 f;
	State s;
	Sym c = f.ctx.seed(0);
	s.W = {kHash, c, kHash, inv(c), kHash};
	s.B = f.u.A();
	s.B.push_back(c);
	s.B.push_back(inv(c));
	s.mu[c] = NF::pair(f.a, f.b);
	s.mu[inv(c)] = nf_inv(s.mu[c]);
	CHECK(is_final(s, f.ctx));
	s.W = {kHash, c, kHash};
	CHECK_FALSE(is_final(s, f.ctx));
}

TEST_CASE("weight counts") {
	State s;
	s.W = {kHash, 1, 1, 3, kHash};
	s.B = {0, 1, 2, 3, 4};
	Weight4 w = weight(s);
	CHECK(w.w1 == 5);
	CHECK(w.w2 == 2);
	CHECK(w.w3 == 5);
	CHECK(w.w4 == 5);
}

TEST_CASE("bounds") {
	Bounds p = Bounds::paper(10, 30);
	CHECK(p.hard_cap == 2040);
	CHECK(p.small_bound < p.pair_start_bound);
	CHECK(p.pair_start_bound < p.block_bound);
	CHECK(p.block_bound <= p.hard_cap);
	Bounds c = Bounds::compact(10, 30, 8);
	CHECK(c.small_bound == 30);
	CHECK(c.hard_cap == 2040);
}

TEST_CASE("plausibility prunes mismatched letters") {
	Universe u({"a", "b"});
	Sym X = u.add_var("X");
	(void)X;
	Context ctx = make_context(u, {u.letter(0)}, {u.letter(1)}, {X});
	CHECK_FALSE(plausible(build_winit(ctx), ctx));
}

TEST_CASE("canonical renaming is idempotent") {
	Fig2 f;
	State s = build_winit(f.ctx);
	Sym c = const_pair(7);
	for (Sym& t : s.W)
		if (t == f.a) t = c;
		else if (t == inv(f.a)) t = inv(c);
	s.B.push_back(c);
	s.B.push_back(inv(c));
	Canonical k = canonicalize(s, f.ctx);
	CHECK(k.cmap.at(c) == f.ctx.seed(0));
	CHECK(canonicalize(k.state, f.ctx).state == k.state);
}
