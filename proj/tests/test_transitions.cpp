#include <doctest.h>

#include "wordeq/transitions.hpp"

using namespace wordeq;

namespace {
struct Fig2 {
	Universe u{{"a", "b"}};
	Sym X = u.add_var("X");
	Sym a = u.letter(0), b = u.letter(1);
	Context ctx = make_context(u, {a, X}, {a, a, a, b}, {X});
	State s = build_winit(ctx);
	Fig2() {
		s.mu[X] = NF::pair(a, b);
		s.mu[inv(X)] = NF::pair(inv(b), inv(a));
	}
};
} // namespace

TEST_CASE("endomorphisms") {
	Endo h{{5, {1, 3}}};
	CHECK(apply_endo(h, Word{5, 1, 6}) == Word{1, 3, 1, 6});
	Endo c = close_under_inv(h);
	CHECK(c.at(6) == Word{4, 2});
	CHECK(is_identity({{1, {1}}}));
	CHECK_FALSE(is_identity(h));
}

TEST_CASE("pop keeps the solution up to the popped letter") {
	Fig2 f;
	SubstitutionSpec sp;
	sp.kind = SubstitutionSpec::Pop;
	sp.x = f.X;
	sp.u = {f.a};
	sp.mu_rest = NF::pair(f.a, f.b);
	Step st = apply_substitution(f.s, sp);
	CHECK(st.tau.at(f.X) == Word{f.a, f.X});
	CHECK(st.tau.at(inv(f.X)) == Word{inv(f.X), inv(f.a)});
	CHECK(validate_edge(f.s, st.dst, st, f.ctx));
	Assignment before{{f.X, {f.a, f.a, f.b}}}, after{{f.X, {f.a, f.b}}};
	CHECK(check_B_solution(st.dst, after));
	CHECK(check_forward(f.s, st.dst, st, before, after, {}));
	CHECK_FALSE(check_forward(f.s, st.dst, st, before, before, {}));
}

TEST_CASE("pop rejects inconsistent constraints") {
	Fig2 f;
	SubstitutionSpec sp;
	sp.kind = SubstitutionSpec::Pop;
	sp.x = f.X;
	sp.u = {f.b};
	sp.mu_rest = NF::pair(f.a, f.b);
	CHECK_THROWS_AS(apply_substitution(f.s, sp), TransitionError);
	sp.u = {f.a, f.a, f.a};
	CHECK_THROWS_AS(apply_substitution(f.s, sp), TransitionError);
}

TEST_CASE("erase removes the variable pair") {
	Fig2 f;
	f.s.mu[f.X] = NF::one();
	f.s.mu[inv(f.X)] = NF::one();
	SubstitutionSpec sp;
	sp.x = f.X;
	Step st = apply_substitution(f.s, sp);
	CHECK(st.dst.X.empty());
	CHECK(std::count(st.dst.W.begin(), st.dst.W.end(), f.X) == 0);
}

TEST_CASE("split introduces a typed variable") {
	Fig2 f;
	f.s.mu[f.X] = NF::pair(f.a, f.a);
	f.s.mu[inv(f.X)] = NF::pair(inv(f.a), inv(f.a));
	SubstitutionSpec sp;
	sp.kind = SubstitutionSpec::Split;
	sp.x = f.X;
	sp.c = f.a;
	sp.xprime = var_pair(1);
	sp.mu_prime = NF::pair(f.a, f.a);
	sp.mu_rest = NF::one();
	Step st = apply_substitution(f.s, sp);
	CHECK(st.dst.theta.at(var_pair(1)) == f.a);
	CHECK(st.dst.theta.at(inv(var_pair(1))) == inv(f.a));
	CHECK(st.tau.at(f.X) == Word{f.a, var_pair(1), f.X});
}

TEST_CASE("pair compression and its label") {
	Fig2 f;
	f.s.mu[f.X] = NF::one();
	f.s.mu[inv(f.X)] = NF::one();
	SubstitutionSpec er;
	er.x = f.X;
	State v = apply_substitution(f.s, er).dst; // #aaab#...
	Sym c = f.ctx.seed(0);
	Step st = compress_pair(v, f.a, f.b, c, f.ctx);
	CHECK(apply_endo(close_under_inv(st.label), st.dst.W) == v.W);
	CHECK(std::count(st.dst.W.begin(), st.dst.W.end(), c) == 1);
	CHECK(std::count(st.dst.W.begin(), st.dst.W.end(), inv(c)) == 1);
	CHECK(validate_edge(v, st.dst, st, f.ctx));
	CHECK(weight(st.dst) < weight(v));
}

TEST_CASE("final compression reaches a final state") {
	Fig2 f;
	f.s.mu[f.X] = NF::one();
	f.s.mu[inv(f.X)] = NF::one();
	SubstitutionSpec pop;
	pop.kind = SubstitutionSpec::Pop;
	pop.x = f.X;
	pop.u = {f.a, f.a};
	f.s.mu[f.X] = NF::pair(f.a, f.b);
	f.s.mu[inv(f.X)] = NF::pair(inv(f.b), inv(f.a));
	pop.mu_rest = NF::pair(f.b, f.b);
	State v = apply_substitution(f.s, pop).dst;
	pop.u = {f.b};
	pop.mu_rest = NF::one();
	v = apply_substitution(v, pop).dst;
	SubstitutionSpec er;
	er.x = f.X;
	v = apply_substitution(v, er).dst;
	Step fin = final_compress(v, f.ctx);
	CHECK(fin.kind == EdgeKind::Final);
	CHECK(is_final(fin.dst, f.ctx));
	CHECK(apply_endo(fin.label, f.ctx.seed(0)) == Word{f.a, f.a, f.b});
}

TEST_CASE("edge kinds have names") {
	CHECK(std::string(edge_kind_name(EdgeKind::Final)) != edge_kind_name(EdgeKind::Compression));
}
