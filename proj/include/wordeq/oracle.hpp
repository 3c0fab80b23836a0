#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wordeq/edtol.hpp"

namespace wordeq {

enum class Mode { Monoid, Group };

struct OracleQuery {
	std::vector<std::pair<Word, Word>> equations;
	std::vector<Sym> vars; // positive members; tuples follow this order
	Mode mode = Mode::Monoid;
	std::size_t max_len = 3;
	std::size_t budget = 50000000; // assignments tried
};

class BudgetExceeded : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// all reduced words over A± of length <= max_len, length-lexicographic
std::vector<Word> reduced_words(const Universe& uni, std::size_t max_len);

// every assignment of reduced words of length <= max_len satisfying all
// equations, in length-lexicographic order
std::vector<Tuple> brute_solutions(const Universe& uni, const OracleQuery& q);

} // namespace wordeq
