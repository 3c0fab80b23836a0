#include <doctest.h>

#include "wordeq/solve.hpp"

using namespace wordeq;

TEST_CASE("solve reports status and class") {
	Problem p = parse_problem("letters: a b\nvars: X\naX = aaab\n");
	Solved s = solve(p);
	CHECK(s.status == Status::Sat);
	CHECK(s.cls.kind == SolutionClass::Finite);
	CHECK(s.complete);
	CHECK(s.violations == 0);
	Listing l = enumerate(s, 4);
	REQUIRE(l.tuples.size() == 1);
	CHECK(p.uni.show(l.tuples[0][0], "") == "aab");

	Problem q = parse_problem("letters: a b\nvars: X\na = b\n");
	Solved z = solve(q);
	CHECK(z.status == Status::Unsat);
	CHECK(z.cls.kind == SolutionClass::Empty);
	CHECK(std::string(status_name(z.status)) == "UNSAT");
}

TEST_CASE("capped searches are UNKNOWN, not UNSAT") {
	Problem p = parse_problem("letters: a b\nvars: X Y\nX a Y b = b Y a X\n");
	SolveOptions opt;
	opt.max_states = 5;
	Solved s = solve(p, opt);
	CHECK_FALSE(s.complete);
	CHECK(s.status != Status::Unsat);
}

TEST_CASE("systems") {
	Problem p = parse_problem("letters: a b\nvars: X Y\nX b = a Y\nY = b\n");
	Solved s = solve(p);
	Listing l = enumerate(s, 3);
	REQUIRE(l.tuples.size() == 1);
	CHECK(p.uni.show(l.tuples[0][0], "") == "a");
	CHECK(p.uni.show(l.tuples[0][1], "") == "b");
}

TEST_CASE("every enumerated tuple checks") {
	Problem p = parse_problem("letters: a b\nvars: X Y\nX a Y = Y a X\n");
	SolveOptions opt;
	opt.max_states = 20000;
	Solved s = solve(p, opt);
	Listing l = enumerate(s, 2);
	CHECK_FALSE(l.tuples.empty());
	for (auto& t : l.tuples) {
		Assignment sigma{{p.vars[0], t[0]}, {p.vars[1], t[1]}};
		CHECK(check_assignment(p, sigma).ok);
	}
}

TEST_CASE("group pipeline on a finite instance") {
	Problem p = parse_problem("mode: group\nletters: a b\nvars: X\naX = aaab\n");
	Solved s = solve(p);
	CHECK(s.status == Status::Sat);
	CHECK(s.cls.kind == SolutionClass::Finite);
	Listing l = enumerate(s, 4);
	REQUIRE(l.tuples.size() == 1);
	CHECK(p.uni.show(l.tuples[0][0], "") == "aab");
}

TEST_CASE("check evaluates in the right structure") {
	Problem m = parse_problem("letters: a\nvars: X\nX a = a\n");
	Assignment s = parse_assignment(m, "X=1");
	CHECK(check_assignment(m, s).ok);
	Problem g = parse_problem("mode: group\nletters: a b\nvars: X\nX b = a\n");
	Assignment t = parse_assignment(g, "X=ab^");
	CheckResult r = check_assignment(g, t);
	CHECK(r.ok);
	CHECK(r.evaluated[0].first == Word{g.uni.letter(0)});
	Problem mm = parse_problem("letters: a b\nvars: X\nX b = a\n");
	CHECK_FALSE(check_assignment(mm, parse_assignment(mm, "X=ab^")).ok);
}

TEST_CASE("union exports") {
	Problem p = parse_problem("mode: group\nletters: a b\nvars: X\naX = aaab\n");
	Solved s = solve(p);
	std::string j = export_json(s);
	CHECK(j.find("wordeq-edtol") != std::string::npos);
	CHECK(export_dot(s).find("digraph") != std::string::npos);
}
