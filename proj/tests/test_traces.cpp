#include <doctest.h>

#include "wordeq/traces.hpp"

using namespace wordeq;

TEST_CASE("only typed symbols commute with their type") {
	TypeMap th{{10, 1}, {11, 2}};
	CHECK(commute(10, 1, th));
	CHECK(commute(1, 10, th));
	CHECK_FALSE(commute(10, 2, th));
	CHECK_FALSE(commute(1, 3, th));
	CHECK_FALSE(commute(1, 1, th));
}

TEST_CASE("trace equality") {
	TypeMap th{{10, 1}};
	CHECK(trace_eq({1, 10, 3}, {10, 1, 3}, th));
	CHECK_FALSE(trace_eq({1, 10, 3}, {1, 3, 10}, th));
	CHECK_FALSE(trace_eq({1, 3}, {3, 1}, th));
	CHECK(trace_eq({1, 3}, {1, 3}, {}));
	CHECK_FALSE(trace_eq({1}, {1, 1}, th));
}

TEST_CASE("two typed symbols of one type keep their order") {
	TypeMap th{{10, 1}, {12, 1}};
	CHECK(trace_eq({10, 1, 12}, {1, 10, 12}, th));
	CHECK_FALSE(trace_eq({10, 12}, {12, 10}, th));
	CHECK(normal_form({10, 1, 12, 1}, th) == normal_form({1, 1, 10, 12}, th));
}

TEST_CASE("factors up to commutation") {
	TypeMap th{{10, 1}};
	CHECK(is_factor({3, 1}, {3, 10, 1}, th));
	CHECK(is_factor({1, 1}, {1, 10, 1}, th));
	CHECK_FALSE(is_factor({3, 1}, {3, 5, 1}, th));
	CHECK(is_factor({}, {3}, th));
	CHECK(is_factor({3, 5}, {1, 3, 5}, {}));
	CHECK_FALSE(is_factor({5, 3}, {1, 3, 5}, {}));
}

TEST_CASE("projection") {
	CHECK(projection({1, 2, 3, 1, 4}, 1, 3) == Word{1, 3, 1});
}
