#include "wordeq/oracle.hpp"

#include <algorithm>

#include "wordeq/groups.hpp"

namespace wordeq {

std::vector<Word> reduced_words(const Universe& uni, std::size_t max_len) {
	std::vector<Word> out{Word{}};
	const auto letters = uni.A_pm();
	for (std::size_t begin = 0, len = 0; len < max_len; ++len) {
		const std::size_t end = out.size();
		for (std::size_t i = begin; i < end; ++i)
			for (Sym a : letters) {
				if (!out[i].empty() && out[i].back() == inv(a)) continue;
				Word w = out[i];
				w.push_back(a);
				out.push_back(std::move(w));
			}
		begin = end;
	}
	return out;
}

std::vector<Tuple> brute_solutions(const Universe& uni, const OracleQuery& q) {
	const auto words = reduced_words(uni, q.max_len);
	const std::size_t m = q.vars.size();
	double space = 1;
	for (std::size_t i = 0; i < m; ++i) space *= static_cast<double>(words.size());
	if (space > static_cast<double>(q.budget)) throw BudgetExceeded("oracle search space exceeds the budget");

	std::vector<Tuple> out;
	std::vector<std::size_t> pick(m, 0);
	Assignment sigma;
	auto holds = [&]() {
		for (auto& [u, v] : q.equations) {
			Word su = apply_assignment(u, sigma), sv = apply_assignment(v, sigma);
			if (q.mode == Mode::Group) {
				su = free_reduce(su);
				sv = free_reduce(sv);
			}
			if (su != sv) return false;
		}
		return true;
	};
	while (true) {
		for (std::size_t i = 0; i < m; ++i) sigma[q.vars[i]] = words[pick[i]];
		if (holds()) {
			Tuple t;
			for (std::size_t i = 0; i < m; ++i) t.push_back(words[pick[i]]);
			out.push_back(std::move(t));
		}
		std::size_t i = 0;
		while (i < m && ++pick[i] == words.size()) pick[i++] = 0;
		if (i == m) break;
	}
	std::sort(out.begin(), out.end(), tuple_less);
	return out;
}

} // namespace wordeq
