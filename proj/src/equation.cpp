#include "wordeq/equation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wordeq {

Bounds Bounds::paper(std::size_t n, std::size_t winit_len) {
	Bounds b;
	b.n = n;
	b.winit_len = winit_len;
	b.small_bound = 96 * n + 6 * winit_len;
	b.pair_start_bound = 104 * n + 6 * winit_len;
	b.block_bound = 168 * n + 6 * winit_len;
	b.hard_cap = 204 * n;
	return b;
}

Bounds Bounds::compact(std::size_t n, std::size_t winit_len, std::size_t var_occ) {
	Bounds b;
	b.n = n;
	b.winit_len = winit_len;
	b.small_bound = 3 * n;
	b.pair_start_bound = b.small_bound + 2 * var_occ;
	b.block_bound = 6 * n + 4 * var_occ;
	b.hard_cap = 204 * n;
	return b;
}

NF State::mu_of(Sym s) const {
	auto it = mu.find(s);
	if (it != mu.end()) return it->second;
	if (is_var(s)) return NF::one();
	return mu0(s);
}

NF State::mu_of(const Word& w) const {
	NF r = NF::one();
	for (Sym s : w) r = nf_mul(r, mu_of(s));
	return r;
}

bool State::has_var(Sym x) const { return std::binary_search(X.begin(), X.end(), x); }
bool State::has_const(Sym c) const { return std::binary_search(B.begin(), B.end(), c); }

namespace {
void put(std::string& out, std::int32_t v) {
	out.append(reinterpret_cast<const char*>(&v), sizeof v);
}
} // namespace

std::string State::key() const {
	std::string k;
	k.reserve(4 * (W.size() + B.size() + X.size() + 2 * theta.size() + 3 * mu.size() + 5));
	put(k, static_cast<std::int32_t>(W.size()));
	for (Sym s : W) put(k, s);
	put(k, static_cast<std::int32_t>(B.size()));
	for (Sym s : B) put(k, s);
	put(k, static_cast<std::int32_t>(X.size()));
	for (Sym s : X) put(k, s);
	put(k, static_cast<std::int32_t>(theta.size()));
	for (auto& [x, c] : theta) {
		put(k, x);
		put(k, c);
	}
	put(k, static_cast<std::int32_t>(mu.size()));
	for (auto& [x, v] : mu) {
		put(k, x);
		put(k, v.tag);
		put(k, v.a);
		put(k, v.b);
	}
	return k;
}

std::size_t input_size(const Universe& uni, const Word& U, const Word& V) {
	return static_cast<std::size_t>(uni.alphabet_size()) + U.size() + V.size();
}

Context make_context(const Universe& uni, const Word& U, const Word& V, const std::vector<Sym>& vars,
                     std::optional<Bounds> bounds) {
	Context ctx;
	ctx.uni = &uni;
	ctx.U = U;
	ctx.V = V;
	std::set<Sym> listed;
	for (Sym x : vars) {
		if (!is_var(x)) throw EquationError("variable list contains a constant");
		if (!listed.insert(pos_rep(x)).second) throw EquationError("variable listed twice");
		ctx.xinit.push_back(pos_rep(x));
	}
	// # separates the equations of an encoded system; both sides need the same number
	if (std::count(U.begin(), U.end(), kHash) != std::count(V.begin(), V.end(), kHash))
		throw EquationError("the sides contain different numbers of #");
	for (const Word* side : {&U, &V})
		for (Sym s : *side) {
			if (s == kHash) continue;
			if (is_var(s) && !listed.count(pos_rep(s))) throw EquationError("unlisted variable " + uni.name(s));
			if (is_const(s) && !uni.in_A(s)) throw EquationError("unknown constant");
		}
	Word& w = ctx.winit;
	w.push_back(kHash);
	for (Sym x : ctx.xinit) {
		w.push_back(x);
		w.push_back(kHash);
	}
	auto add = [&](const Word& part) {
		w.insert(w.end(), part.begin(), part.end());
		w.push_back(kHash);
	};
	add(U);
	add(V);
	add(inv(U));
	add(inv(V));
	for (auto it = ctx.xinit.rbegin(); it != ctx.xinit.rend(); ++it) {
		w.push_back(inv(*it));
		w.push_back(kHash);
	}
	ctx.fresh_base = var_pair(uni.num_named_vars());
	ctx.n = input_size(uni, U, V);
	ctx.winit_hashes = static_cast<std::size_t>(std::count(w.begin(), w.end(), kHash));
	ctx.winit_var_occ = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), is_var));
	ctx.bounds = bounds ? *bounds : Bounds::compact(ctx.n, w.size(), ctx.winit_var_occ);
	ctx.bounds.n = ctx.n;
	ctx.bounds.winit_len = w.size();
	if (!ctx.bounds.hard_cap) ctx.bounds.hard_cap = 204 * ctx.n;
	return ctx;
}

State build_winit(const Context& ctx) {
	State s;
	s.W = ctx.winit;
	s.B = ctx.uni->A();
	for (Sym x : ctx.xinit) {
		s.X.push_back(x);
		s.X.push_back(inv(x));
	}
	std::sort(s.X.begin(), s.X.end());
	return s;
}

namespace {

std::vector<Word> segments(const Word& w) {
	std::vector<Word> out;
	Word cur;
	for (std::size_t i = 0; i < w.size(); ++i) {
		if (w[i] == kHash) {
			if (i) out.push_back(cur);
			cur.clear();
		} else {
			cur.push_back(w[i]);
		}
	}
	if (!w.empty() && w.back() != kHash) out.push_back(cur);
	return out;
}

} // namespace

std::vector<Violation> validate_state(const State& s, const Context& ctx) {
	std::vector<Violation> v;
	const Universe& uni = *ctx.uni;
	const std::size_t n = ctx.n;
	auto bad = [&](int c, std::string d) { v.push_back({c, std::move(d)}); };

	// well-formedness
	for (Sym a : uni.A())
		if (!s.has_const(a)) bad(0, "B does not contain A");
	for (Sym b : s.B)
		if (!is_const(b) || !s.has_const(inv(b))) bad(0, "B not closed under involution");
	for (Sym x : s.X)
		if (!is_var(x) || !s.has_var(inv(x))) bad(0, "X not closed under involution");
	for (Sym t : s.W)
		if (is_var(t) ? !s.has_var(t) : !s.has_const(t)) bad(0, "W uses a symbol outside B and X: " + uni.name(t));
	for (auto& [x, c] : s.theta) {
		if (uni.in_A(x)) bad(0, "type on a letter of A");
		if (x == c) bad(0, "reflexive type");
		if (uni.in_A(c) || !s.has_const(c)) bad(0, "type value outside B minus A");
		auto it = s.theta.find(inv(x));
		if (it == s.theta.end() || it->second != inv(c)) bad(0, "type does not respect involution");
	}
	for (auto& [x, val] : s.mu) {
		if (nf_inv(val) != s.mu_of(inv(x))) bad(0, "mu does not respect involution at " + uni.name(x));
		if (is_const(x) && uni.in_A(x)) bad(0, "mu stored for a letter of A");
	}
	for (Sym b : s.B)
		if (!uni.in_A(b) && !s.mu.count(b)) bad(0, "mu missing for " + uni.name(b));

	// (1)
	if (s.W.size() > 204 * n) bad(1, "|W| = " + std::to_string(s.W.size()) + " > 204n");
	// (2)
	std::size_t occ = static_cast<std::size_t>(std::count_if(s.W.begin(), s.W.end(), is_var));
	std::size_t cap = s.theta.empty() ? 4 * n : 12 * n;
	if (occ > cap) bad(2, "variable occurrences " + std::to_string(occ) + " exceed bound");
	// (3)
	std::size_t hashes = static_cast<std::size_t>(std::count(s.W.begin(), s.W.end(), kHash));
	if (hashes != ctx.winit_hashes) bad(3, "number of # changed");
	if (s.W.size() < 2 || s.W.front() != kHash || s.W.back() != kHash) bad(3, "W not of the form #...#");
	// (4)
	for (Sym b : s.B)
		if (b != kHash && s.mu_of(b).is_zero()) bad(4, "mu(" + uni.name(b) + ") = 0");
	for (Sym x : s.X) {
		auto it = s.mu.find(x);
		if (it != s.mu.end() && it->second.is_zero()) bad(4, "mu(" + uni.name(x) + ") = 0");
	}
	// (5)
	for (Sym x : s.X)
		if (std::find(s.W.begin(), s.W.end(), x) == s.W.end()) bad(5, "variable " + uni.name(x) + " absent from W");
	// (6): it suffices to check maximal #-free factors
	auto segs = segments(s.W);
	for (const Word& seg : segs) {
		Word target = inv(seg);
		bool found = false;
		for (const Word& other : segs)
			if (other.size() >= target.size() && is_factor(target, other, s.theta)) {
				found = true;
				break;
			}
		if (!found) bad(6, "involution of factor " + uni.show(seg, "") + " missing");
	}
	return v;
}

Weight4 weight(const State& s) {
	Weight4 w;
	w.w1 = s.W.size();
	std::set<Sym> distinct;
	for (Sym t : s.W)
		if (is_const(t)) distinct.insert(t);
	w.w2 = s.W.size() - distinct.size();
	w.w3 = s.W.size() - s.theta.size();
	w.w4 = s.B.size();
	return w;
}

bool is_initial(const State& s, const Context& ctx) {
	if (!s.theta.empty() || s.W != ctx.winit || s.B != ctx.uni->A()) return false;
	std::vector<Sym> xs;
	for (Sym x : ctx.xinit) {
		xs.push_back(x);
		xs.push_back(inv(x));
	}
	std::sort(xs.begin(), xs.end());
	return s.X == xs;
}

bool is_final(const State& s, const Context& ctx) {
	if (!s.X.empty() || !s.theta.empty()) return false;
	if (s.W != inv(s.W)) return false;
	std::size_t pos = 0;
	if (s.W.empty() || s.W[pos++] != kHash) return false;
	for (int i = 0; i < ctx.m(); ++i) {
		if (pos + 1 >= s.W.size() || s.W[pos] != ctx.seed(i) || s.W[pos + 1] != kHash) return false;
		pos += 2;
	}
	return true;
}

bool is_small(const State& s, const Bounds& b) { return s.W.size() <= b.small_bound; }

Word apply_assignment(const Word& w, const Assignment& sigma) {
	Word out;
	for (Sym t : w) {
		if (!is_var(t)) {
			out.push_back(t);
			continue;
		}
		auto it = sigma.find(pos_rep(t));
		if (it == sigma.end()) {
			out.push_back(t);
			continue;
		}
		if (t == pos_rep(t)) {
			out.insert(out.end(), it->second.begin(), it->second.end());
		} else {
			Word r = inv(it->second);
			out.insert(out.end(), r.begin(), r.end());
		}
	}
	return out;
}

bool check_B_solution(const State& s, const Assignment& sigma) {
	for (Sym x : s.X) {
		auto it = sigma.find(pos_rep(x));
		if (it == sigma.end()) return false;
		Word val = x == pos_rep(x) ? it->second : inv(it->second);
		for (Sym t : val)
			if (!is_const(t) || !s.has_const(t)) return false;
		if (s.mu_of(val) != s.mu_of(x)) return false;
		auto ty = s.theta.find(x);
		if (ty != s.theta.end())
			for (Sym t : val)
				if (t != ty->second) return false;
	}
	Word lhs = apply_assignment(s.W, sigma);
	Word rhs = apply_assignment(inv(s.W), sigma);
	return trace_eq(lhs, rhs, s.theta);
}

namespace {

struct Tally {
	std::map<Sym, std::size_t> consts;
	std::size_t length = 0;  // lower bound on the length of the image
	bool free_vars = false;  // contains an untyped variable
	bool vars = false;
	std::set<Sym> types;
};

Tally tally(const State& s, const Word& w) {
	Tally t;
	for (Sym x : w) {
		if (is_const(x)) {
			++t.consts[x];
			++t.length;
			continue;
		}
		t.vars = true;
		if (!s.mu_of(x).is_one()) ++t.length;
		auto it = s.theta.find(x);
		if (it == s.theta.end()) t.free_vars = true;
		else t.types.insert(it->second);
	}
	return t;
}

// letter counts of a side without variables bound those of the other side
bool counts_fit(const Tally& l, const Tally& r) {
	if (r.vars) return true;
	if (l.length > r.length) return false;
	for (auto& [d, n] : l.consts) {
		auto it = r.consts.find(d);
		if (it == r.consts.end() || it->second < n) return false;
	}
	if (!l.free_vars) {
		for (auto& [d, n] : r.consts) {
			if (l.types.count(d)) continue;
			auto it = l.consts.find(d);
			if (it == l.consts.end() || it->second != n) return false;
		}
	}
	return true;
}

} // namespace

bool plausible(const State& s, const Context&) {
	auto segs = segments(s.W);
	const std::size_t k = segs.size();
	for (std::size_t i = 0; i < k; ++i) {
		const Word& L = segs[i];
		Word R = inv(segs[k - 1 - i]);
		if (s.mu_of(L) != s.mu_of(R)) return false;
		const Tally tl = tally(s, L), tr = tally(s, R);
		if (!counts_fit(tl, tr) || !counts_fit(tr, tl)) return false;
		if (!s.theta.empty()) continue;
		for (int dir = 0; dir < 2; ++dir) {
			Word l = L, r = R;
			if (dir) {
				std::reverse(l.begin(), l.end());
				std::reverse(r.begin(), r.end());
			}
			std::size_t j = 0;
			while (j < l.size() && j < r.size() && is_const(l[j]) && is_const(r[j])) {
				if (l[j] != r[j]) return false;
				++j;
			}
			const Word* rest = nullptr;
			if (j == l.size() && j < r.size()) rest = &r;
			if (j == r.size() && j < l.size()) rest = &l;
			if (rest)
				for (std::size_t t = j; t < rest->size(); ++t)
					if (is_const((*rest)[t]) || !s.mu_of((*rest)[t]).is_one()) return false;
		}
	}
	return true;
}

namespace {

State rename(const State& s, const std::map<Sym, Sym>& m) {
	auto f = [&](Sym x) {
		auto it = m.find(x);
		return it == m.end() ? x : it->second;
	};
	State r;
	r.W.reserve(s.W.size());
	for (Sym t : s.W) r.W.push_back(f(t));
	for (Sym b : s.B) r.B.push_back(f(b));
	std::sort(r.B.begin(), r.B.end());
	for (Sym x : s.X) r.X.push_back(f(x));
	std::sort(r.X.begin(), r.X.end());
	for (auto& [x, c] : s.theta) r.theta[f(x)] = f(c);
	for (auto& [x, v] : s.mu) r.mu[f(x)] = v;
	return r;
}

} // namespace

Canonical canonicalize(const State& s, const Context& ctx) {
	const Universe& uni = *ctx.uni;
	Canonical out;
	State cur = s;
	cur.W = normal_form(cur.W, cur.theta);
	std::map<Sym, Sym> total;
	auto is_fresh_const = [&](Sym t) { return is_const(t) && !uni.in_A(t); };
	auto is_fresh_var = [&](Sym t) { return is_var(t) && t >= ctx.first_fresh_var(); };
	for (int iter = 0; iter < 6; ++iter) {
		std::map<Sym, Sym> m;
		Sym nc = const_pair(uni.num_letters());
		Sym nv = ctx.first_fresh_var();
		auto visit = [&](Sym t) {
			if (is_fresh_const(t) && !m.count(t)) {
				m[t] = nc;
				m[inv(t)] = inv(nc);
				nc += 2;
			} else if (is_fresh_var(t) && !m.count(t)) {
				m[t] = nv;
				m[inv(t)] = inv(nv);
				nv += 2;
			}
		};
		for (Sym t : cur.W) visit(t);
		for (Sym b : cur.B) visit(pos_rep(b));
		for (Sym x : cur.X) visit(pos_rep(x));
		bool identity = std::all_of(m.begin(), m.end(), [](auto& p) { return p.first == p.second; });
		if (identity) break;
		State next = rename(cur, m);
		next.W = normal_form(next.W, next.theta);
		std::map<Sym, Sym> composed;
		for (Sym t : s.B)
			if (is_fresh_const(t)) {
				Sym mid = total.count(t) ? total[t] : t;
				composed[t] = m.count(mid) ? m[mid] : mid;
			}
		for (Sym t : s.X)
			if (is_fresh_var(t)) {
				Sym mid = total.count(t) ? total[t] : t;
				composed[t] = m.count(mid) ? m[mid] : mid;
			}
		total = std::move(composed);
		cur = std::move(next);
	}
	for (auto& [a, b] : total) {
		if (is_const(a)) out.cmap[a] = b;
		else out.vmap[a] = b;
	}
	out.state = std::move(cur);
	return out;
}

Sym next_const_id(const State& s, const Context& ctx) {
	Sym hi = const_pair(ctx.uni->num_letters());
	for (Sym b : s.B) hi = std::max(hi, pos_rep(b) + 2);
	return hi;
}

Sym next_var_id(const State& s, const Context& ctx) {
	Sym hi = ctx.first_fresh_var();
	for (Sym x : s.X) hi = std::max(hi, pos_rep(x) + 2);
	return hi;
}

std::string show_state(const State& s, const Context& ctx) {
	std::ostringstream os;
	os << ctx.show_compact(s.W);
	std::vector<std::string> parts;
	for (auto& [x, c] : s.theta)
		if (x == pos_rep(x)) parts.push_back(ctx.uni->name(x) + ":" + ctx.uni->name(c));
	if (!parts.empty()) {
		os << "  types{";
		for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
		os << "}";
	}
	return os.str();
}

} // namespace wordeq
