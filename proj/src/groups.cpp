#include "wordeq/groups.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace wordeq {

Word free_reduce(const Word& w) {
	Word st;
	for (Sym t : w) {
		if (!st.empty() && t != kHash && st.back() == inv(t)) st.pop_back();
		else st.push_back(t);
	}
	return st;
}

Atoms atoms_of(const Word& w) {
	Atoms out;
	for (std::size_t i = 0; i < w.size();) {
		if (is_var(w[i])) {
			out.push_back(Word{w[i++]});
			continue;
		}
		std::size_t j = i;
		while (j < w.size() && is_const(w[j])) ++j;
		out.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
		i = j;
	}
	return out;
}

namespace {

Sym fresh_var(Universe& uni, const std::string& stem, std::vector<Sym>& fresh) {
	std::string name = stem;
	while (uni.find_var(name) >= 0 || uni.find_letter(name) >= 0) name += "'";
	Sym x = uni.add_var(name);
	fresh.push_back(x);
	return x;
}

void tri(Universe& uni, Atoms U, Atoms V, std::vector<Sym>& fresh, std::vector<AtomEquation>& out) {
	if (U.size() < V.size()) std::swap(U, V);
	if (U.size() + V.size() <= 3) {
		out.push_back({U, V});
		return;
	}
	if (V.size() >= 2) {
		Sym z = fresh_var(uni, "Z_" + std::to_string(fresh.size() + 1), fresh);
		tri(uni, U, Atoms{Word{z}}, fresh, out);
		tri(uni, V, Atoms{Word{z}}, fresh, out);
		return;
	}
	Sym t = fresh_var(uni, "T_" + std::to_string(fresh.size() + 1), fresh);
	Word last = U.back();
	U.pop_back();
	tri(uni, U, Atoms{Word{t}}, fresh, out);
	out.push_back({Atoms{Word{t}, last}, V});
}

Word at(const Atoms& w, std::size_t i) { return i < w.size() ? w[i] : Word{}; }

Word flat(const Atoms& a) {
	Word w;
	for (auto& x : a) w.insert(w.end(), x.begin(), x.end());
	return w;
}

} // namespace

std::vector<AtomEquation> triangulate(Universe& uni, const Word& U, const Word& V, std::vector<Sym>& fresh) {
	std::vector<AtomEquation> out;
	tri(uni, atoms_of(U), atoms_of(V), fresh, out);
	return out;
}

Triangle as_triangle(const AtomEquation& eq) {
	Atoms U = eq.lhs, V = eq.rhs;
	if (U.size() + V.size() > 3) throw std::invalid_argument("equation is not triangular");
	if (U.size() < V.size()) std::swap(U, V);
	if (U.size() == 3) return {at(U, 0), at(U, 1), inv(at(U, 2))};
	return {at(U, 0), at(U, 1), flat(V)};
}

std::vector<Equation> caytree_split(Universe& uni, const Triangle& t, std::vector<Sym>& fresh) {
	if (t.x.empty()) return {{t.y, t.z}};
	if (t.y.empty()) return {{t.x, t.z}};
	if (t.z.empty()) return {{t.x, inv(t.y)}};
	const std::string k = std::to_string(fresh.size() + 1);
	Sym P = fresh_var(uni, "P_" + k, fresh);
	Sym Q = fresh_var(uni, "Q_" + k, fresh);
	Sym R = fresh_var(uni, "R_" + k, fresh);
	return {{t.x, Word{P, R}}, {t.y, Word{inv(R), Q}}, {t.z, Word{P, Q}}};
}

Equation encode_system(const std::vector<Equation>& eqs) {
	Equation out;
	for (std::size_t i = 0; i < eqs.size(); ++i) {
		if (i) {
			out.first.push_back(kHash);
			out.second.push_back(kHash);
		}
		out.first.insert(out.first.end(), eqs[i].first.begin(), eqs[i].first.end());
		out.second.insert(out.second.end(), eqs[i].second.begin(), eqs[i].second.end());
	}
	return out;
}

namespace {

bool mentions(const Word& w, Sym x) {
	return std::any_of(w.begin(), w.end(), [&](Sym t) { return pos_rep(t) == x; });
}

bool var_free(const Word& w) { return std::none_of(w.begin(), w.end(), is_var); }

Word substitute(const Word& w, const std::map<Sym, Word>& val) {
	Word r;
	for (Sym t : w) {
		auto it = is_var(t) ? val.find(pos_rep(t)) : val.end();
		if (it == val.end()) {
			r.push_back(t);
			continue;
		}
		Word img = t == it->first ? it->second : inv(it->second);
		r.insert(r.end(), img.begin(), img.end());
	}
	return r;
}

// Simplifies in place; false if some equation became unsatisfiable.
bool settle(std::vector<Equation>& eqs, const std::set<Sym>& fresh) {
	for (bool again = true; again;) {
		again = false;
		for (auto& [u, v] : eqs) {
			std::size_t p = 0;
			while (p < u.size() && p < v.size() && is_const(u[p]) && is_const(v[p])) {
				if (u[p] != v[p]) return false;
				++p;
			}
			u.erase(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(p));
			v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p));
			while (!u.empty() && !v.empty() && is_const(u.back()) && is_const(v.back())) {
				if (u.back() != v.back()) return false;
				u.pop_back();
				v.pop_back();
			}
			if (var_free(u) && var_free(v) && u != v) return false;
		}
		eqs.erase(std::remove_if(eqs.begin(), eqs.end(), [](const Equation& e) { return e.first == e.second; }),
		          eqs.end());
		for (std::size_t i = 0; i < eqs.size() && !again; ++i)
			for (int side = 0; side < 2 && !again; ++side) {
				const Word& one = side ? eqs[i].second : eqs[i].first;
				const Word& other = side ? eqs[i].first : eqs[i].second;
				if (one.size() != 1 || !is_var(one[0]) || !fresh.count(pos_rep(one[0]))) continue;
				const Sym x = pos_rep(one[0]);
				if (mentions(other, x)) continue;
				std::map<Sym, Word> val{{x, one[0] == x ? other : inv(other)}};
				eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(i));
				for (auto& [u, v] : eqs) {
					u = substitute(u, val);
					v = substitute(v, val);
				}
				again = true;
			}
	}
	return true;
}

// every assignment of the fresh variables in w making it equal to c
void matches(const Word& w, std::size_t i, const Word& c, std::size_t j, std::map<Sym, Word>& val,
             std::vector<std::map<Sym, Word>>& out) {
	if (i == w.size()) {
		if (j == c.size()) out.push_back(val);
		return;
	}
	const Sym t = w[i];
	if (is_const(t)) {
		if (j < c.size() && c[j] == t) matches(w, i + 1, c, j + 1, val, out);
		return;
	}
	const Sym x = pos_rep(t);
	auto it = val.find(x);
	if (it != val.end()) {
		Word img = t == x ? it->second : inv(it->second);
		if (c.size() - j >= img.size() && std::equal(img.begin(), img.end(), c.begin() + static_cast<std::ptrdiff_t>(j)))
			matches(w, i + 1, c, j + img.size(), val, out);
		return;
	}
	for (std::size_t len = 0; j + len <= c.size(); ++len) {
		Word piece(c.begin() + static_cast<std::ptrdiff_t>(j), c.begin() + static_cast<std::ptrdiff_t>(j + len));
		val[x] = t == x ? piece : inv(piece);
		matches(w, i + 1, c, j + len, val, out);
	}
	val.erase(x);
}

void branch(std::vector<Equation> eqs, const std::set<Sym>& fresh, std::vector<std::vector<Equation>>& out) {
	if (!settle(eqs, fresh)) return;
	for (std::size_t i = 0; i < eqs.size(); ++i)
		for (int side = 0; side < 2; ++side) {
			const Word& c = side ? eqs[i].second : eqs[i].first;
			const Word& w = side ? eqs[i].first : eqs[i].second;
			if (!var_free(c)) continue;
			bool only_fresh = true;
			for (Sym t : w) only_fresh = only_fresh && (is_const(t) || fresh.count(pos_rep(t)));
			if (!only_fresh) continue;
			std::vector<std::map<Sym, Word>> vals;
			std::map<Sym, Word> val;
			matches(w, 0, c, 0, val, vals);
			for (auto& v : vals) {
				std::vector<Equation> next;
				for (std::size_t k = 0; k < eqs.size(); ++k)
					if (k != i) next.push_back({substitute(eqs[k].first, v), substitute(eqs[k].second, v)});
				branch(std::move(next), fresh, out);
			}
			return;
		}
	out.push_back(std::move(eqs));
}

MonoidSystem make_system(std::vector<Equation> eqs, const std::vector<Sym>& originals, const std::vector<Sym>& fresh) {
	MonoidSystem s;
	s.equations = std::move(eqs);
	s.encoded = encode_system(s.equations);
	s.vars = originals;
	for (Sym x : fresh) {
		bool used = false;
		for (auto& [u, v] : s.equations) used = used || mentions(u, x) || mentions(v, x);
		if (used) s.vars.push_back(x);
	}
	return s;
}

} // namespace

GroupEncoding encode_group(Universe& uni, const Word& U, const Word& V, const std::vector<Sym>& vars) {
	GroupEncoding enc;
	for (Sym x : vars) enc.originals.push_back(pos_rep(x));
	enc.input_length = U.size() + V.size();

	const Word u = free_reduce(U), v = free_reduce(V);
	std::vector<Sym> fresh;
	std::vector<Equation> system;
	if (!u.empty() || !v.empty())
		for (const AtomEquation& e : triangulate(uni, u, v, fresh)) {
			auto parts = caytree_split(uni, as_triangle(e), fresh);
			system.insert(system.end(), parts.begin(), parts.end());
		}
	enc.direct = make_system(system, enc.originals, fresh);
	const std::size_t len = enc.direct.encoded.first.size() + enc.direct.encoded.second.size();
	if (len > 15 * std::max<std::size_t>(enc.input_length, 1))
		throw std::logic_error("encoded equation exceeds 15|UV|");

	std::vector<std::vector<Equation>> parts;
	branch(system, std::set<Sym>(fresh.begin(), fresh.end()), parts);
	std::set<std::vector<Equation>> seen;
	for (auto& p : parts)
		if (seen.insert(p).second) enc.branches.push_back(make_system(p, enc.originals, fresh));
	return enc;
}

} // namespace wordeq
