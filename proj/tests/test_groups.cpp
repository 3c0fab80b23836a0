#include <doctest.h>

#include "wordeq/groups.hpp"

using namespace wordeq;

TEST_CASE("free reduction") {
	CHECK(free_reduce({1, 3, 4, 2}).empty());
	CHECK(free_reduce({1, 3, 4, 3}) == Word{1, 3});
	Sym X = var_pair(0);
	CHECK(free_reduce({X, inv(X), 1}) == Word{1});
	CHECK(free_reduce({X, 2, 1, inv(X)}).empty());
}

TEST_CASE("atoms split variables from constant runs") {
	Sym X = var_pair(0);
	Atoms at = atoms_of({1, 3, X, 1, X});
	REQUIRE(at.size() == 4);
	CHECK(at[0] == Word{1, 3});
	CHECK(at[1] == Word{X});
}

TEST_CASE("triangulation yields short equations") {
	Universe u({"a", "b"});
	Sym X = u.add_var("X");
	Sym Y = u.add_var("Y");
	std::vector<Sym> fresh;
	auto eqs = triangulate(u, {X, 1, Y, 3, X}, {Y, Y, 1}, fresh);
	CHECK_FALSE(fresh.empty());
	for (auto& e : eqs) CHECK(e.lhs.size() + e.rhs.size() <= 3);
}

TEST_CASE("Cayley tree split") {
	Universe u({"a"});
	Sym X = u.add_var("X");
	std::vector<Sym> fresh;
	Triangle t{{X}, {1}, {1, X}};
	auto eqs = caytree_split(u, t, fresh);
	CHECK(fresh.size() == 3);
	CHECK(eqs.size() == 3);
}

TEST_CASE("systems are joined with #") {
	Equation e = encode_system({{{1}, {1}}, {{3}, {3, 3}}});
	CHECK(e.first == Word{1, kHash, 3});
	CHECK(e.second == Word{1, kHash, 3, 3});
}

TEST_CASE("group encoding stays linear") {
	Universe u({"a", "b"});
	Sym X = u.add_var("X");
	Word U{X, 1}, V{1, X};
	GroupEncoding g = encode_group(u, U, V, {X});
	CHECK(g.originals == std::vector<Sym>{X});
	const auto& d = g.direct.encoded;
	CHECK(d.first.size() + d.second.size() <= 15 * (U.size() + V.size()));
	CHECK_FALSE(g.branches.empty());
	for (auto& br : g.branches) CHECK(br.vars.front() == X);
}
