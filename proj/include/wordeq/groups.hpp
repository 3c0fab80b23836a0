#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wordeq/alphabet.hpp"

namespace wordeq {

using Equation = std::pair<Word, Word>;

// cancels factors a inv(a) until none is left; variables cancel only
// against their own inverse
Word free_reduce(const Word& w);

// A side of a group equation cut into atoms: single variables and maximal
// constant factors.
using Atoms = std::vector<Word>;
Atoms atoms_of(const Word& w);

struct AtomEquation {
	Atoms lhs, rhs;
};

// Splits (U,V) into equations with at most three atoms over the original
// and fresh variables. When both sides have two or more atoms, V is first
// bound to a fresh variable. Fresh variables are appended to `fresh`.
std::vector<AtomEquation> triangulate(Universe& uni, const Word& U, const Word& V, std::vector<Sym>& fresh);

// xy = z with each of x, y, z a single atom or empty
struct Triangle {
	Word x, y, z;
};
Triangle as_triangle(const AtomEquation& eq);

// x = PR, y = inv(R)Q, z = PQ with fresh P, Q, R
std::vector<Equation> caytree_split(Universe& uni, const Triangle& t, std::vector<Sym>& fresh);

// (U_1#...#U_s, V_1#...#V_s)
Equation encode_system(const std::vector<Equation>& eqs);

struct MonoidSystem {
	std::vector<Equation> equations;
	Equation encoded;
	std::vector<Sym> vars; // originals first, then fresh ones still present
};

struct GroupEncoding {
	std::vector<Sym> originals;
	std::size_t input_length = 0;
	MonoidSystem direct;               // triangulation and splitting only
	std::vector<MonoidSystem> branches; // simplified; their union has the same solutions
};

// Reduction of a free-group equation to equations over the free monoid with
// involution. `direct` is the plain construction; `branches` additionally
// substitutes away fresh variables and splits constant sides.
GroupEncoding encode_group(Universe& uni, const Word& U, const Word& V, const std::vector<Sym>& vars);

} // namespace wordeq
