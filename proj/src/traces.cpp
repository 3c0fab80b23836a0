#include "wordeq/traces.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace wordeq {

bool commute(Sym x, Sym y, const TypeMap& theta) {
	if (x == y || theta.empty()) return false;
	auto it = theta.find(x);
	if (it != theta.end() && it->second == y) return true;
	it = theta.find(y);
	return it != theta.end() && it->second == x;
}

Word projection(const Word& w, Sym a, Sym b) {
	Word r;
	for (Sym s : w)
		if (s == a || s == b) r.push_back(s);
	return r;
}

static bool touches(const Word& w, const TypeMap& theta) {
	if (theta.empty()) return false;
	for (Sym s : w) {
		if (theta.count(s)) return true;
	}
	return false;
}

bool trace_eq(const Word& u, const Word& w, const TypeMap& theta) {
	if (u.size() != w.size()) return false;
	if (!touches(u, theta) && !touches(w, theta)) return u == w;
	return normal_form(u, theta) == normal_form(w, theta);
}

bool is_factor(const Word& u, const Word& w, const TypeMap& theta) {
	if (u.empty()) return true;
	if (u.size() > w.size()) return false;
	if (!touches(u, theta) && !touches(w, theta))
		return std::search(w.begin(), w.end(), u.begin(), u.end()) != w.end();

	std::map<Sym, int> need;
	for (Sym s : u) ++need[s];
	// labels: 0 = prefix p, 1 = factor u, 2 = suffix q. A labeling is
	// admissible iff dependent positions carry non-decreasing labels; then
	// w = p u' q and it remains to compare u' with u.
	const std::size_t n = w.size();
	std::vector<int> label(n, 0);
	std::map<Sym, int> have;
	std::size_t taken = 0;
	std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
		if (taken == u.size()) {
			// remaining positions: each goes to p if allowed, else q
			std::vector<int> saved(label.begin() + static_cast<long>(i), label.end());
			for (std::size_t k = i; k < n; ++k) {
				int lo = 0;
				for (std::size_t j = 0; j < k; ++j)
					if (!commute(w[j], w[k], theta)) lo = std::max(lo, label[j]);
				label[k] = lo == 0 ? 0 : 2;
			}
			Word cand;
			for (std::size_t k = 0; k < n; ++k)
				if (label[k] == 1) cand.push_back(w[k]);
			bool ok = trace_eq(cand, u, theta);
			std::copy(saved.begin(), saved.end(), label.begin() + static_cast<long>(i));
			return ok;
		}
		if (i == n) return false;
		if (n - i < u.size() - taken) return false;
		int lo = 0;
		for (std::size_t j = 0; j < i; ++j)
			if (!commute(w[j], w[i], theta)) lo = std::max(lo, label[j]);
		// p dominates q whenever both are admissible, so only the choice
		// "into u or not" branches
		auto nd = need.find(w[i]);
		if (lo <= 1 && nd != need.end() && have[w[i]] < nd->second) {
			++have[w[i]];
			++taken;
			label[i] = 1;
			bool r = go(i + 1);
			--have[w[i]];
			--taken;
			if (r) return true;
		}
		label[i] = lo == 0 ? 0 : 2;
		if (go(i + 1)) return true;
		label[i] = 0;
		return false;
	};
	return go(0);
}

// Only c and the symbols typed c commute, so a word splits into blocks over
// {c} u theta^-1(c) that never exchange letters with their surroundings.
// Inside a block the typed symbols keep their order and the copies of c
// are placed greedily.
Word normal_form(const Word& w, const TypeMap& theta) {
	if (!touches(w, theta)) return w;
	std::set<Sym> values;
	for (auto& [x, c] : theta) values.insert(c);
	auto block_letter = [&](Sym s) -> Sym {
		auto it = theta.find(s);
		if (it != theta.end()) return it->second;
		return values.count(s) ? s : kHash;
	};
	Word out;
	out.reserve(w.size());
	std::vector<Sym> typed;
	for (std::size_t i = 0; i < w.size();) {
		const Sym d = block_letter(w[i]);
		if (d == kHash) {
			out.push_back(w[i++]);
			continue;
		}
		std::size_t copies = 0;
		typed.clear();
		for (; i < w.size() && block_letter(w[i]) == d; ++i) {
			if (w[i] == d) ++copies;
			else typed.push_back(w[i]);
		}
		std::size_t t = 0;
		while (copies || t < typed.size()) {
			if (copies && (t == typed.size() || d < typed[t])) {
				out.push_back(d);
				--copies;
			} else {
				out.push_back(typed[t++]);
			}
		}
	}
	return out;
}

} // namespace wordeq
