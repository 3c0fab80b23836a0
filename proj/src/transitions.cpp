#include "wordeq/transitions.hpp"

#include <algorithm>
#include <set>

namespace wordeq {

Word apply_endo(const Endo& h, Sym c) {
	auto it = h.find(c);
	return it == h.end() ? Word{c} : it->second;
}

Word apply_endo(const Endo& h, const Word& w) {
	Word out;
	out.reserve(w.size());
	for (Sym t : w) {
		auto it = h.find(t);
		if (it == h.end()) out.push_back(t);
		else out.insert(out.end(), it->second.begin(), it->second.end());
	}
	return out;
}

bool is_identity(const Endo& h) {
	return std::all_of(h.begin(), h.end(), [](auto& p) { return p.second == Word{p.first}; });
}

Endo close_under_inv(const Endo& h) {
	Endo r = h;
	for (auto& [c, w] : h)
		if (!r.count(inv(c))) r[inv(c)] = inv(w);
	return r;
}

Word apply_tau(const Tau& tau, const Word& w) {
	Word out;
	out.reserve(w.size());
	for (Sym t : w) {
		auto it = is_var(t) ? tau.find(t) : tau.end();
		if (it == tau.end()) out.push_back(t);
		else out.insert(out.end(), it->second.begin(), it->second.end());
	}
	return out;
}

const char* edge_kind_name(EdgeKind k) {
	switch (k) {
	case EdgeKind::Substitution: return "substitution";
	case EdgeKind::Compression: return "compression";
	case EdgeKind::Final: return "final";
	}
	return "?";
}

namespace {

void insert_sorted(std::vector<Sym>& v, Sym s) {
	auto it = std::lower_bound(v.begin(), v.end(), s);
	if (it == v.end() || *it != s) v.insert(it, s);
}

void erase_sorted(std::vector<Sym>& v, Sym s) {
	auto it = std::lower_bound(v.begin(), v.end(), s);
	if (it != v.end() && *it == s) v.erase(it);
}

void set_mu(State& s, Sym x, NF val) {
	s.mu[x] = val;
	s.mu[inv(x)] = nf_inv(val);
}

} // namespace

Step apply_substitution(const State& v, const SubstitutionSpec& spec) {
	const Sym x = spec.x;
	if (!v.has_var(x)) throw TransitionError("substitution target is not a variable of the state");
	Step st;
	st.kind = EdgeKind::Substitution;
	State d = v;
	Tau& tau = st.tau;
	auto ty = v.theta.find(x);
	switch (spec.kind) {
	case SubstitutionSpec::Erase:
		tau[x] = {};
		tau[inv(x)] = {};
		erase_sorted(d.X, x);
		erase_sorted(d.X, inv(x));
		d.mu.erase(x);
		d.mu.erase(inv(x));
		d.theta.erase(x);
		d.theta.erase(inv(x));
		break;
	case SubstitutionSpec::Pop: {
		if (spec.u.empty() || spec.u.size() > 2) throw TransitionError("popped word must have length 1 or 2");
		for (Sym c : spec.u) {
			if (!is_const(c) || c == kHash || !v.has_const(c)) throw TransitionError("popped letter not in B");
			if (ty != v.theta.end() && c != ty->second) throw TransitionError("typed variable pops a foreign letter");
		}
		if (spec.mu_rest.is_zero() || nf_mul(v.mu_of(spec.u), spec.mu_rest) != v.mu_of(x))
			throw TransitionError("residual constraint does not factor mu(X)");
		Word img = spec.u;
		img.push_back(x);
		tau[x] = img;
		tau[inv(x)] = inv(img);
		set_mu(d, x, spec.mu_rest);
		break;
	}
	case SubstitutionSpec::Split: {
		const Sym c = spec.c, y = spec.xprime;
		if (!is_const(c) || c == kHash || !v.has_const(c)) throw TransitionError("split letter not in B");
		if (!is_var(y) || v.has_var(y) || v.has_var(inv(y))) throw TransitionError("split variable not fresh");
		if (ty != v.theta.end()) throw TransitionError("split of a typed variable");
		NF mc = v.mu_of(c);
		if (spec.mu_prime != NF::one() && spec.mu_prime != mc) throw TransitionError("mu of split variable not a power");
		if (spec.mu_rest.is_zero() || nf_mul(nf_mul(mc, spec.mu_prime), spec.mu_rest) != v.mu_of(x))
			throw TransitionError("split constraints do not factor mu(X)");
		tau[x] = {c, y, x};
		tau[inv(x)] = inv(Word{c, y, x});
		insert_sorted(d.X, y);
		insert_sorted(d.X, inv(y));
		d.theta[y] = c;
		d.theta[inv(y)] = inv(c);
		set_mu(d, y, spec.mu_prime);
		set_mu(d, x, spec.mu_rest);
		break;
	}
	}
	d.W = apply_tau(tau, v.W);
	st.dst = std::move(d);
	return st;
}

Step compress(const State& v, const Word& w_new, const std::vector<Sym>& b_new, const TypeMap& theta_new,
              const std::map<Sym, NF>& mu_new, const Endo& h, const Context& ctx) {
	const Endo hc = close_under_inv(h);
	if (!trace_eq(apply_endo(hc, w_new), v.W, v.theta)) throw TransitionError("W is not the image of the new word");
	Step st;
	State& d = st.dst;
	d.W = w_new;
	d.B = b_new;
	std::sort(d.B.begin(), d.B.end());
	d.X = v.X;
	d.theta = theta_new;
	d.mu = mu_new;
	st.label = hc;
	st.kind = is_final(d, ctx) ? EdgeKind::Final : EdgeKind::Compression;
	return st;
}

Step compress_pair(const State& v, Sym a, Sym b, Sym c, const Context& ctx) {
	if (a == kHash || b == kHash || a == b || a == inv(b)) throw TransitionError("pair not compressible");
	Word w;
	w.reserve(v.W.size());
	const Word& W = v.W;
	for (std::size_t i = 0; i < W.size(); ++i) {
		if (i + 1 < W.size() && W[i] == a && W[i + 1] == b) {
			w.push_back(c);
			++i;
		} else if (i + 1 < W.size() && W[i] == inv(b) && W[i + 1] == inv(a)) {
			w.push_back(inv(c));
			++i;
		} else {
			w.push_back(W[i]);
		}
	}
	std::vector<Sym> B = v.B;
	B.push_back(c);
	B.push_back(inv(c));
	auto mu = v.mu;
	NF m = nf_mul(v.mu_of(a), v.mu_of(b));
	mu[c] = m;
	mu[inv(c)] = nf_inv(m);
	Step st = compress(v, w, B, v.theta, mu, Endo{{c, Word{a, b}}}, ctx);
	return st;
}

Step reduce_alphabet(const State& v, const std::vector<Sym>& keep, const Context& ctx) {
	const Universe& uni = *ctx.uni;
	std::set<Sym> k;
	for (Sym s : keep) {
		k.insert(s);
		k.insert(inv(s));
	}
	std::vector<Sym> B;
	auto mu = v.mu;
	TypeMap theta = v.theta;
	for (Sym b : v.B) {
		if (uni.in_A(b) || k.count(b)) {
			B.push_back(b);
			continue;
		}
		if (std::find(v.W.begin(), v.W.end(), b) != v.W.end())
			throw TransitionError("alphabet reduction removes a letter of W");
		mu.erase(b);
		theta.erase(b);
		for (auto it = theta.begin(); it != theta.end();) {
			if (it->second == b) {
				if (is_var(it->first)) throw TransitionError("alphabet reduction removes a variable type");
				it = theta.erase(it);
			} else {
				++it;
			}
		}
	}
	return compress(v, v.W, B, theta, mu, Endo{}, ctx);
}

namespace {

std::vector<Word> split_hash(const Word& w) {
	std::vector<Word> out;
	Word cur;
	for (std::size_t i = 1; i < w.size(); ++i) {
		if (w[i] == kHash) {
			out.push_back(cur);
			cur.clear();
		} else {
			cur.push_back(w[i]);
		}
	}
	return out;
}

} // namespace

Step final_compress(const State& v, const Context& ctx) {
	if (!v.X.empty() || !v.theta.empty()) throw TransitionError("final compression needs a variable-free state");
	if (is_final(v, ctx)) throw TransitionError("state is already final");
	const int m = ctx.m();
	auto segs = split_hash(v.W);
	const std::size_t k = segs.size();
	if (k < static_cast<std::size_t>(2 * m + 4) || (k - 2 * m) % 4 || v.W.front() != kHash || v.W.back() != kHash)
		throw TransitionError("W does not have the #-shape of a solved equation");
	for (std::size_t i = 0; i < k; ++i)
		if (segs[k - 1 - i] != inv(segs[i])) throw TransitionError("the two sides differ");

	Endo h;
	State d;
	d.B = ctx.uni->A();
	auto add_letter = [&](Sym c, const Word& img) {
		d.B.push_back(c);
		d.B.push_back(inv(c));
		NF val = v.mu_of(img);
		d.mu[c] = val;
		d.mu[inv(c)] = nf_inv(val);
		h[c] = img;
	};
	std::vector<Word> out(k);
	for (int i = 0; i < m; ++i) {
		Sym c = ctx.seed(i);
		add_letter(c, segs[i]);
		out[i] = {c};
		out[k - 1 - i] = {inv(c)};
	}
	// the middle holds U_1..U_s V_1..V_s and their mirrors
	const std::size_t mid_begin = static_cast<std::size_t>(m), mid_end = k / 2;
	Sym next = ctx.seed(m);
	bool reduced = true;
	for (std::size_t i = mid_begin; i < mid_end; ++i) reduced = reduced && !v.mu_of(segs[i]).is_zero();
	if (reduced) {
		for (std::size_t i = mid_begin; i < mid_end; ++i) {
			if (segs[i].empty()) continue;
			add_letter(next, segs[i]);
			out[i] = {next};
			next += 2;
		}
	} else {
		// tails that are not reduced stay as they are, with their fresh
		// letters moved above the seeds
		std::map<Sym, Sym> moved;
		auto mv = [&](const Word& w) {
			Word r;
			for (Sym t : w) {
				if (ctx.uni->in_A(t)) {
					r.push_back(t);
					continue;
				}
				Sym p = pos_rep(t);
				if (!moved.count(p)) {
					moved[p] = next;
					add_letter(next, Word{p});
					next += 2;
				}
				r.push_back(t == p ? moved[p] : inv(moved[p]));
			}
			return r;
		};
		for (std::size_t i = mid_begin; i < mid_end; ++i) out[i] = mv(segs[i]);
	}
	for (std::size_t i = mid_begin; i < mid_end; ++i) out[k - 1 - i] = inv(out[i]);
	d.W.push_back(kHash);
	for (auto& seg : out) {
		d.W.insert(d.W.end(), seg.begin(), seg.end());
		d.W.push_back(kHash);
	}
	std::sort(d.B.begin(), d.B.end());
	Step st;
	st.kind = EdgeKind::Final;
	st.dst = std::move(d);
	st.label = close_under_inv(h);
	if (!trace_eq(apply_endo(st.label, st.dst.W), v.W, v.theta))
		throw TransitionError("final compression label does not reproduce W");
	return st;
}

void rename_step_dst(Step& step, const Canonical& canon) {
	auto fc = [&](Sym t) {
		if (is_var(t)) {
			auto it = canon.vmap.find(t);
			return it == canon.vmap.end() ? t : it->second;
		}
		auto it = canon.cmap.find(t);
		return it == canon.cmap.end() ? t : it->second;
	};
	Endo label;
	for (auto& [raw, img] : canon.cmap) {
		Word w = apply_endo(step.label, raw);
		if (!(w.size() == 1 && w[0] == img)) label[img] = w;
	}
	for (auto& [c, w] : step.label)
		if (!canon.cmap.count(c) && !(w.size() == 1 && w[0] == c)) label[c] = w;
	step.label = std::move(label);

	std::set<Sym> mentioned;
	for (auto& [x, w] : step.tau)
		for (Sym t : w) mentioned.insert(t);
	Tau tau;
	for (auto& [x, w] : step.tau) {
		Word r;
		for (Sym t : w) r.push_back(fc(t));
		tau[x] = r;
	}
	for (auto& [raw, img] : canon.vmap)
		if (raw != img && !step.tau.count(raw) && !mentioned.count(raw)) tau[raw] = {img};
	step.tau = std::move(tau);
	step.dst = canon.state;
}

namespace {

bool fail(std::string* why, const std::string& msg) {
	if (why) *why = msg;
	return false;
}

// erase, u·x with 1 <= |u| <= 2, or c·x'·x with theta(x') = c
bool admissible(const Word& img, const State& dst) {
	if (img.empty()) return true;
	if (img.size() >= 2 && img.size() <= 3 && is_var(img.back()) &&
	    std::all_of(img.begin(), img.end() - 1, [](Sym t) { return is_const(t); }))
		return true;
	if (img.size() == 3 && is_const(img[0]) && is_var(img[1]) && is_var(img[2])) {
		auto ty = dst.theta.find(img[1]);
		return ty != dst.theta.end() && ty->second == img[0];
	}
	return false;
}

} // namespace

bool validate_edge(const State& src, const State& dst, const Step& step, const Context& ctx, std::string* why) {
	const Universe& uni = *ctx.uni;
	if (is_final(src, ctx)) return fail(why, "source is final");
	for (auto& [c, w] : step.label) {
		if (!is_const(c) || uni.in_A(c) || c == kHash) return fail(why, "label defined on a letter of A");
		if (!dst.has_const(c)) return fail(why, "label on a letter outside the target alphabet");
		for (Sym t : w)
			if (!is_const(t) || !src.has_const(t)) return fail(why, "label image leaves the source alphabet");
		if (apply_endo(step.label, inv(c)) != inv(w)) return fail(why, "label does not respect involution");
	}
	for (Sym c : dst.B) {
		if (uni.in_A(c)) continue;
		if (dst.mu_of(c) != src.mu_of(apply_endo(step.label, c)))
			return fail(why, "constraint not preserved at " + uni.name(c));
	}

	if (step.kind == EdgeKind::Substitution) {
		if (is_initial(dst, ctx)) return fail(why, "substitution into an initial state");
		if (dst.B.size() != src.B.size()) return fail(why, "substitution changes the alphabet");
		std::map<Sym, Sym> back; // dst letter -> src letter
		std::set<Sym> seen;
		for (Sym c : dst.B) {
			Word w = apply_endo(step.label, c);
			if (w.size() != 1) return fail(why, "substitution label is not a renaming");
			if (!seen.insert(w[0]).second) return fail(why, "substitution label not injective");
			back[c] = w[0];
		}
		for (auto& [x, c] : dst.theta)
			if (is_const(x)) {
				auto it = src.theta.find(back[x]);
				if (it == src.theta.end() || it->second != back[c]) return fail(why, "constant types changed");
			}
		std::map<Sym, Sym> fwd;
		for (auto& [d, s] : back) fwd[s] = d;
		int changed = 0;
		for (Sym x : src.X) {
			auto it = step.tau.find(x);
			Word img = it == step.tau.end() ? Word{x} : it->second;
			auto jt = step.tau.find(inv(x));
			Word iimg = jt == step.tau.end() ? Word{inv(x)} : jt->second;
			if (iimg != inv(img)) return fail(why, "tau does not respect involution");
			if (img.size() == 1 && is_var(img[0])) continue;
			if (x != pos_rep(x)) continue;
			++changed;
			if (!admissible(img, dst) && !admissible(iimg, dst))
				return fail(why, "tau(" + uni.name(x) + ") has an inadmissible shape");
		}
		if (changed > 1) return fail(why, "substitution changes more than one variable pair");
		Word w0 = src.W;
		for (Sym& t : w0)
			if (is_const(t)) {
				auto it = fwd.find(t);
				if (it == fwd.end()) return fail(why, "constant without image");
				t = it->second;
			}
		Word w = apply_tau(step.tau, w0);
		if (!trace_eq(w, dst.W, dst.theta)) return fail(why, "W' differs from tau(W)");
		return true;
	}

	if (src.X != dst.X) return fail(why, "compression changes the variables");
	for (auto& [x, c] : src.theta) {
		if (!is_var(x)) continue;
		auto it = dst.theta.find(x);
		if (it == dst.theta.end()) return fail(why, "compression drops a variable type");
		Word img = apply_endo(step.label, it->second);
		if (img.empty() || !std::all_of(img.begin(), img.end(), [&](Sym t) { return t == c; }))
			return fail(why, "compression breaks a variable type");
	}
	for (auto& [x, c] : dst.theta)
		if (is_var(x) && !src.theta.count(x)) return fail(why, "compression introduces a variable type");
	if (!trace_eq(apply_endo(step.label, dst.W), src.W, src.theta)) return fail(why, "W != h(W')");
	if (is_final(dst, ctx)) {
		std::size_t total = 0;
		for (Sym c : dst.B)
			if (!uni.in_A(c)) total += apply_endo(step.label, c).size();
		if (total > src.W.size()) return fail(why, "final label too large");
		if (is_identity(step.label) && dst.B == src.B) return fail(why, "final label is the identity");
		return true;
	}
	for (Sym c : dst.B) {
		std::size_t len = apply_endo(step.label, c).size();
		if (len < 1 || len > 2) return fail(why, "|h(c)| outside [1,2]");
	}
	if (!(weight(dst) < weight(src))) return fail(why, "weight does not decrease");
	return true;
}

bool check_forward(const State& src, const State& dst, const Step& step, const Assignment& sigma_src,
                   const Assignment& sigma_dst, const Endo& alpha) {
	Word lhs = apply_endo(alpha, apply_assignment(src.W, sigma_src));
	Word rhs = apply_endo(alpha, apply_endo(step.label, apply_assignment(dst.W, sigma_dst)));
	return lhs == rhs;
}

} // namespace wordeq
