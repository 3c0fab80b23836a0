#include "wordeq/search.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace wordeq {

std::vector<NF> residuals(NF whole, NF head, int num_letters) {
	std::vector<NF> out;
	for (NF v : nf_elements(num_letters))
		if (!v.is_zero() && nf_mul(head, v) == whole) out.push_back(v);
	return out;
}

namespace {

std::vector<Word> hash_segments(const Word& w) {
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

bool has_square(const Word& w) {
	for (std::size_t i = 1; i < w.size(); ++i)
		if (w[i] == w[i - 1] && is_const(w[i]) && w[i] != kHash) return true;
	return false;
}

// ab may become a letter: distinct constants whose product stays reduced
bool pairable(const State& s, Sym a, Sym b) {
	return is_const(a) && is_const(b) && a != kHash && b != kHash && a != inv(b) &&
	       !nf_mul(s.mu_of(a), s.mu_of(b)).is_zero();
}

bool has_pair(const State& s) {
	for (std::size_t i = 1; i < s.W.size(); ++i)
		if (s.W[i - 1] != s.W[i] && pairable(s, s.W[i - 1], s.W[i])) return true;
	return false;
}

std::set<Sym> letters_of(const Word& w) {
	std::set<Sym> r;
	for (Sym t : w)
		if (is_const(t) && t != kHash) r.insert(t);
	return r;
}

// symbols immediately left of each occurrence of x
std::set<Sym> left_neighbours(const Word& w, Sym x) {
	std::set<Sym> r;
	for (std::size_t i = 1; i < w.size(); ++i)
		if (w[i] == x) r.insert(w[i - 1]);
	return r;
}

Sym map_sym(const std::map<Sym, Sym>& m, Sym t) {
	auto it = m.find(t);
	return it == m.end() ? t : it->second;
}

std::map<Sym, NF> with_mu(std::map<Sym, NF> mu, Sym x, NF v) {
	mu[x] = v;
	mu[inv(x)] = nf_inv(v);
	return mu;
}

} // namespace

std::vector<std::map<Sym, NF>> initial_mus(const Context& ctx) {
	const int L = ctx.uni->num_letters();
	auto segs = hash_segments(ctx.winit);
	const std::size_t k = segs.size();
	const int m = ctx.m();
	std::vector<NF> values;
	for (NF v : nf_elements(L))
		if (!v.is_zero()) values.push_back(v);

	// a component pair can be checked once its last variable is assigned
	std::map<Sym, int> position;
	for (int j = 0; j < m; ++j) position[ctx.xinit[j]] = j;
	std::vector<std::vector<std::size_t>> ready(m);
	for (std::size_t i = 0; i < k; ++i) {
		int last = -1;
		for (const Word* w : {&segs[i], &segs[k - 1 - i]})
			for (Sym t : *w)
				if (is_var(t)) last = std::max(last, position.at(pos_rep(t)));
		if (last >= 0) ready[last].push_back(i);
	}
	std::vector<std::map<Sym, NF>> out;
	State probe;
	std::function<void(int)> rec = [&](int j) {
		if (j == m) {
			out.push_back(probe.mu);
			return;
		}
		Sym x = ctx.xinit[j];
		for (NF v : values) {
			probe.mu = with_mu(probe.mu, x, v);
			bool ok = true;
			for (std::size_t i : ready[j])
				if (probe.mu_of(segs[i]) != probe.mu_of(inv(segs[k - 1 - i]))) {
					ok = false;
					break;
				}
			if (ok) rec(j + 1);
		}
		probe.mu.erase(x);
		probe.mu.erase(inv(x));
	};
	rec(0);
	return out;
}

namespace {

// Position inside a macro: a raw state together with the renaming that
// takes it to the canonical state stored in the automaton.
struct Pos {
	std::size_t id = 0;
	std::map<Sym, Sym> m;
	State raw;
	// witness mode: the solution on raw and the steps of the current macro
	Assignment sigma;
	Endo alpha;
	std::vector<TraceStep> trail;
};

Sym type_of(const State& s, Sym x) {
	auto it = s.theta.find(x);
	if (it != s.theta.end()) return it->second;
	it = s.theta.find(inv(x));
	return it == s.theta.end() ? 0 : inv(it->second);
}

Word value(const Assignment& sigma, Sym x) {
	auto it = sigma.find(pos_rep(x));
	if (it == sigma.end()) return {};
	return x == pos_rep(x) ? it->second : inv(it->second);
}

void put(Assignment& sigma, Sym x, const Word& w) { sigma[pos_rep(x)] = x == pos_rep(x) ? w : inv(w); }

// sigma(W) letter by letter; `at` is the position in W, or npos inside a variable
struct Spot {
	Sym letter;
	std::size_t at;
};
constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::vector<Spot> concrete(const Word& W, const Assignment& sigma) {
	std::vector<Spot> out;
	for (std::size_t i = 0; i < W.size(); ++i) {
		if (!is_var(W[i])) {
			out.push_back({W[i], i});
			continue;
		}
		for (Sym t : value(sigma, W[i])) out.push_back({t, npos});
	}
	return out;
}

// maximal runs [begin, end) of one letter in a concrete word
std::vector<std::pair<std::size_t, std::size_t>> runs_of(const std::vector<Spot>& w) {
	std::vector<std::pair<std::size_t, std::size_t>> out;
	for (std::size_t i = 0; i < w.size();) {
		std::size_t j = i;
		while (j < w.size() && w[j].letter == w[i].letter) ++j;
		out.emplace_back(i, j);
		i = j;
	}
	return out;
}

Word replace_pair(const Word& w, Sym a, Sym b, Sym c) {
	Word out;
	for (std::size_t i = 0; i < w.size(); ++i) {
		if (i + 1 < w.size() && w[i] == a && w[i + 1] == b) {
			out.push_back(c);
			++i;
		} else if (i + 1 < w.size() && w[i] == inv(b) && w[i + 1] == inv(a)) {
			out.push_back(inv(c));
			++i;
		} else {
			out.push_back(w[i]);
		}
	}
	return out;
}

// every l inside w swallows one c of its block, likewise inv(l) and inv(c)
std::optional<Word> absorb_hidden(const Word& w, Sym c, Sym l) {
	Word r = w;
	std::vector<char> del(r.size(), 0);
	for (auto [d, m] : {std::pair{c, l}, std::pair{inv(c), inv(l)}})
		for (std::size_t i = 0; i < r.size(); ++i) {
			if (r[i] != m) continue;
			std::size_t b = i, e = i + 1;
			while (b > 0 && (r[b - 1] == d || r[b - 1] == m)) --b;
			while (e < r.size() && (r[e] == d || r[e] == m)) ++e;
			std::size_t j = b;
			while (j < e && (r[j] != d || del[j])) ++j;
			if (j == e) return std::nullopt;
			del[j] = 1;
		}
	Word out;
	for (std::size_t i = 0; i < r.size(); ++i)
		if (!del[i]) out.push_back(r[i]);
	return out;
}

std::optional<Word> halve_runs(const Word& w, Sym c) {
	Word out;
	for (std::size_t i = 0; i < w.size();) {
		if (w[i] != c && w[i] != inv(c)) {
			out.push_back(w[i++]);
			continue;
		}
		std::size_t j = i;
		while (j < w.size() && w[j] == w[i]) ++j;
		if ((j - i) % 2) return std::nullopt;
		out.insert(out.end(), (j - i) / 2, w[i]);
		i = j;
	}
	return out;
}

class Explorer {
public:
	Explorer(const Context& ctx, const SearchOptions& opt)
		: ctx_(ctx), opt_(opt), bd_(opt.bounds ? *opt.bounds : ctx.bounds), L_(ctx.uni->num_letters()) {}

	PartialNfa run() {
		State base = build_winit(ctx_);
		for (auto& mu : initial_mus(ctx_)) {
			State s = base;
			s.mu = mu;
			if (!plausible(s, ctx_)) continue;
			auto id = intern(canonicalize(s, ctx_).state, 0);
			if (!id) break;
			nfa_.initials.push_back(*id);
			schedule(*id);
		}
		while (!queue_.empty()) {
			std::size_t id = queue_.front();
			queue_.pop_front();
			expand(id);
		}
		std::sort(nfa_.initials.begin(), nfa_.initials.end());
		nfa_.initials.erase(std::unique(nfa_.initials.begin(), nfa_.initials.end()), nfa_.initials.end());
		return std::move(nfa_);
	}

	void trace(const Assignment& sigma, WitnessTrace& out) {
		wit_ = &out;
		State s = build_winit(ctx_);
		for (Sym x : ctx_.xinit) {
			auto it = sigma.find(x);
			if (it == sigma.end()) {
				out.error = "no value for " + ctx_.uni->name(x);
				return;
			}
			for (Sym t : it->second)
				if (!ctx_.uni->in_A(t)) {
					out.error = "the value of " + ctx_.uni->name(x) + " is not a word over the letters";
					return;
				}
			s.mu = with_mu(s.mu, x, s.mu_of(it->second));
		}
		if (!check_B_solution(s, sigma)) {
			out.error = "the assignment is not a solution";
			return;
		}
		out.initial = s;
		auto id = intern(s, 0);
		cursor_ = Pos{*id, {}, s, sigma, {}, {}};
		while (!is_final(cursor_.raw, ctx_)) {
			if (out.steps.size() > opt_.max_depth) {
				out.error = "step limit reached";
				return;
			}
			found_ = false;
			expand(cursor_.id);
			if (!found_ || next_.trail.empty()) {
				out.error = "no transition agrees with the solution at " + show_state(cursor_.raw, ctx_);
				return;
			}
			for (auto& st : next_.trail) out.steps.push_back(std::move(st));
			next_.trail.clear();
			cursor_ = next_;
		}
		for (int i = 0; i < ctx_.m(); ++i) {
			Word w{ctx_.seed(i)};
			for (auto it = out.steps.rbegin(); it != out.steps.rend(); ++it) w = apply_endo(it->label, w);
			out.solution.push_back(w);
		}
		out.ok = true;
		for (int i = 0; i < ctx_.m(); ++i) out.ok = out.ok && out.solution[i] == sigma.at(ctx_.xinit[i]);
		if (!out.ok) out.error = "the labels do not reproduce the solution";
		if (nfa_.violations) {
			out.ok = false;
			out.error = nfa_.violation_log.front();
		}
	}

private:
	const Context& ctx_;
	SearchOptions opt_;
	Bounds bd_;
	int L_;
	PartialNfa nfa_;
	std::unordered_map<std::string, std::size_t> index_;
	std::vector<std::size_t> depth_;
	std::vector<char> scheduled_;
	std::deque<std::size_t> queue_;
	std::set<std::string> edge_keys_;
	// witness mode
	WitnessTrace* wit_ = nullptr;
	std::string phase_;
	bool found_ = false;
	Pos cursor_;
	Pos next_;
	bool block_open_ = false;

	std::optional<std::size_t> intern(State s, std::size_t depth) {
		std::string key = s.key();
		auto it = index_.find(key);
		if (it != index_.end()) return it->second;
		if (nfa_.states.size() >= opt_.max_states) {
			nfa_.complete = false;
			return std::nullopt;
		}
		std::size_t id = nfa_.states.size();
		if (is_final(s, ctx_)) nfa_.finals.push_back(id);
		nfa_.states.push_back(std::move(s));
		depth_.push_back(depth);
		scheduled_.push_back(0);
		index_.emplace(std::move(key), id);
		return id;
	}

	void schedule(std::size_t id) {
		if (scheduled_[id]) return;
		if (depth_[id] > opt_.max_depth) {
			nfa_.complete = false;
			return;
		}
		scheduled_[id] = 1;
		queue_.push_back(id);
	}

	void violation(const std::string& what) {
		++nfa_.violations;
		if (nfa_.violation_log.size() < 50) nfa_.violation_log.push_back(what);
	}

	Pos start(std::size_t id) {
		Pos p;
		p.id = id;
		p.raw = nfa_.states[id];
		if (wit_) {
			p.sigma = cursor_.sigma;
			p.alpha = cursor_.alpha;
		}
		return p;
	}

	// end of a macro: queue the state, or in witness mode commit to it
	void finish(const Pos& p) {
		if (!wit_) return schedule(p.id);
		if (found_) return;
		found_ = true;
		next_ = p;
		next_.sigma.clear();
		for (auto& [x, w] : p.sigma) put(next_.sigma, map_sym(p.m, x), rename(p.m, w));
		next_.alpha.clear();
		for (auto& [c, w] : p.alpha) next_.alpha[map_sym(p.m, c)] = w;
		next_.m.clear();
		next_.raw = nfa_.states[p.id];
	}

	static Word rename(const std::map<Sym, Sym>& m, const Word& w) {
		Word r = w;
		for (Sym& t : r) t = map_sym(m, t);
		return r;
	}

	// The solution after a raw step, if the step is compatible with it.
	std::optional<Assignment> advance(const Pos& from, const Step& st) {
		const Assignment& sg = from.sigma;
		Assignment out;
		if (st.kind == EdgeKind::Final) return out;
		if (st.kind == EdgeKind::Substitution) {
			for (auto& [x, w] : sg) {
				auto it = st.tau.find(x);
				if (it == st.tau.end()) {
					out[x] = w;
					continue;
				}
				const Word& t = it->second;
				std::vector<std::size_t> vp;
				for (std::size_t i = 0; i < t.size(); ++i)
					if (is_var(t[i])) vp.push_back(i);
				if (vp.empty()) {
					if (w != t) return std::nullopt;
					continue;
				}
				// constants around the variables must match the ends of w
				const std::size_t head = vp.front(), tail = t.size() - vp.back() - 1;
				if (w.size() < head + tail || !std::equal(t.begin(), t.begin() + static_cast<long>(head), w.begin()) ||
				    !std::equal(t.end() - static_cast<long>(tail), t.end(), w.end() - static_cast<long>(tail)))
					return std::nullopt;
				Word mid(w.begin() + static_cast<long>(head), w.end() - static_cast<long>(tail));
				if (vp.size() == 1) {
					put(out, t[head], mid);
				} else if (vp.size() == 2 && vp[1] == head + 1) {
					// split: the new typed variable takes the whole c-block on its side
					const bool front = pos_rep(t[head + 1]) == x;
					const Sym xp = front ? t[head] : t[head + 1];
					const Sym c = type_of(st.dst, xp);
					std::size_t k = 0;
					if (front)
						while (k < mid.size() && mid[k] == c) ++k;
					else
						while (k < mid.size() && mid[mid.size() - 1 - k] == c) ++k;
					put(out, xp, Word(k, c));
					put(out, front ? t[head + 1] : t[head],
					    front ? Word(mid.begin() + static_cast<long>(k), mid.end()) : Word(mid.begin(), mid.end() - static_cast<long>(k)));
				} else {
					return std::nullopt;
				}
			}
			return out;
		}
		if (st.note == "block-rename") return rename_blocks(from.raw, st.dst.W, sg);
		if (st.note == "block-mark") return mark_hidden(from.raw, st.dst.W, sg);
		out = sg;
		for (auto& [k, img] : st.label) {
			if (k != pos_rep(k) || img.size() != 2) continue;
			if (img[0] == k && img[1] == k) {
				for (auto& [x, w] : out) {
					auto h = halve_runs(w, k);
					if (!h) return std::nullopt;
					w = *h;
				}
			} else if (img[1] == k) {
				for (auto& [x, w] : out) {
					auto a = absorb_hidden(w, img[0], k);
					if (!a) return std::nullopt;
					w = *a;
				}
			} else if (img[0] != k && img[1] != k) {
				for (auto& [x, w] : out) w = replace_pair(w, img[0], img[1], k);
			}
		}
		// letters leaving the alphabet are spelled out over A
		for (auto& [x, w] : out) {
			Word r;
			for (Sym t : w) {
				if (st.dst.has_const(t)) r.push_back(t);
				else for (Sym u : apply_endo(from.alpha, t)) r.push_back(u);
			}
			w = std::move(r);
		}
		return out;
	}

	// Every run of sigma(W) touching a renamed position is renamed as a
	// whole, and so is every hidden run whose length some visible run has.
	static std::optional<Assignment> rename_blocks(const State& src, const Word& w2, const Assignment& sg) {
		if (w2.size() != src.W.size()) return std::nullopt;
		auto cw = concrete(src.W, sg);
		const auto runs = runs_of(cw);
		std::map<Sym, Sym> cb;
		std::set<std::pair<Sym, std::size_t>> lam;
		for (auto [b, e] : runs) {
			bool seen = false;
			for (std::size_t i = b; i < e; ++i)
				if (cw[i].at != npos) {
					seen = true;
					if (w2[cw[i].at] != src.W[cw[i].at]) cb[cw[i].letter] = w2[cw[i].at];
				}
			if (seen && e - b >= 2) lam.insert({cw[b].letter, e - b});
		}
		for (auto [b, e] : runs) {
			const Sym l = cw[b].letter;
			auto it = cb.find(l);
			if (it == cb.end()) continue;
			bool touched = false, seen = false;
			for (std::size_t i = b; i < e; ++i)
				if (cw[i].at != npos) {
					seen = true;
					touched = touched || w2[cw[i].at] != src.W[cw[i].at];
				}
			if (touched || (!seen && lam.count({l, e - b})))
				for (std::size_t i = b; i < e; ++i) cw[i].letter = it->second;
		}
		return read_back(src.W, sg, cw);
	}

	// hidden blocks get the marker that visible blocks of their length got
	static std::optional<Assignment> mark_hidden(const State& src, const Word& w2, const Assignment& sg) {
		if (w2.size() != src.W.size()) return std::nullopt;
		auto cw = concrete(src.W, sg);
		const auto runs = runs_of(cw);
		std::map<std::pair<Sym, std::size_t>, Sym> marker;
		std::vector<std::pair<std::size_t, std::size_t>> hidden;
		for (auto [b, e] : runs) {
			bool seen = false;
			for (std::size_t i = b; i < e; ++i)
				if (cw[i].at != npos) {
					seen = true;
					if (w2[cw[i].at] != src.W[cw[i].at]) marker[{cw[b].letter, e - b}] = w2[cw[i].at];
				}
			if (!seen) hidden.emplace_back(b, e);
		}
		for (auto [b, e] : hidden) {
			const Sym l = cw[b].letter;
			auto it = marker.find({l, e - b});
			if (it != marker.end()) cw[l == pos_rep(l) ? b : e - 1].letter = it->second;
		}
		return read_back(src.W, sg, cw);
	}

	// the values of the variables inside a rewritten sigma(W)
	static std::optional<Assignment> read_back(const Word& W, const Assignment& sg, const std::vector<Spot>& cw) {
		Assignment out;
		std::size_t j = 0;
		for (Sym t : W) {
			if (!is_var(t)) {
				++j;
				continue;
			}
			const std::size_t len = value(sg, t).size();
			Word v;
			for (std::size_t i = 0; i < len; ++i) v.push_back(cw[j + i].letter);
			j += len;
			Word pv = t == pos_rep(t) ? v : inv(v);
			auto [it, fresh] = out.emplace(pos_rep(t), pv);
			if (!fresh && it->second != pv) return std::nullopt;
		}
		return out;
	}

	std::string describe(const Step& cs) const {
		std::vector<std::string> parts;
		for (auto& [x, w] : cs.tau)
			if (x == pos_rep(x)) parts.push_back(ctx_.uni->name(x) + " -> " + (w.empty() ? "1" : ctx_.show_compact(w)));
		if (cs.kind != EdgeKind::Substitution)
			for (auto& [c, w] : cs.label)
				if (c == pos_rep(c)) parts.push_back("h(" + ctx_.uni->name(c) + ") = " + (w.empty() ? "1" : ctx_.show_compact(w)));
		std::string s = cs.note;
		for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : ": ") + parts[i];
		return s;
	}

	// Adds the edge for a raw step taken at `from`. Returns the position of
	// the destination or nothing if the step is pruned.
	std::optional<Pos> take(const Pos& from, const Step& st) {
		if (wit_ && found_) return std::nullopt;
		if (st.dst.W.size() > bd_.hard_cap) return std::nullopt;
		Canonical canon = canonicalize(st.dst, ctx_);
		const State& dst = canon.state;
		if (!plausible(dst, ctx_)) return std::nullopt;

		Step cs;
		cs.kind = st.kind;
		cs.note = st.note;
		for (Sym c : st.dst.B) {
			if (ctx_.uni->in_A(c)) continue;
			Word img = apply_endo(st.label, c);
			for (Sym& t : img) t = map_sym(from.m, t);
			Sym key = map_sym(canon.cmap, c);
			if (!(img.size() == 1 && img[0] == key)) cs.label[key] = img;
		}
		for (Sym x : from.raw.X) {
			auto it = st.tau.find(x);
			Word img = it == st.tau.end() ? Word{x} : it->second;
			for (Sym& t : img) t = is_var(t) ? map_sym(canon.vmap, t) : map_sym(canon.cmap, t);
			Sym key = map_sym(from.m, x);
			if (!(img.size() == 1 && img[0] == key)) cs.tau[key] = img;
		}
		cs.dst = dst;

		const State& src = nfa_.states[from.id];
		if (opt_.check) {
			auto vs = validate_state(dst, ctx_);
			if (!vs.empty()) {
				violation(st.note + ": state violates condition " + std::to_string(vs[0].condition) + ": " + vs[0].detail);
				return std::nullopt;
			}
			std::string why;
			if (!validate_edge(src, dst, cs, ctx_, &why)) {
				violation(std::string(edge_kind_name(cs.kind)) + " edge rejected: " + why + " [" + show_state(src, ctx_) +
				          " -> " + show_state(dst, ctx_) + "]");
				return std::nullopt;
			}
			if (cs.kind == EdgeKind::Compression) ++nfa_.weight_checks;
		}
		std::optional<Assignment> sigma2;
		Endo alpha2;
		if (wit_) {
			sigma2 = advance(from, st);
			if (!sigma2 || !check_B_solution(st.dst, *sigma2)) return std::nullopt;
			if (!check_forward(from.raw, st.dst, st, from.sigma, *sigma2, from.alpha)) {
				violation(st.note + ": forward property fails");
				return std::nullopt;
			}
			for (Sym c : st.dst.B)
				if (!ctx_.uni->in_A(c)) alpha2[c] = apply_endo(from.alpha, apply_endo(st.label, c));
		}
		auto id = intern(dst, depth_[from.id] + 1);
		if (!id) return std::nullopt;

		std::ostringstream key;
		key << from.id << ':' << *id << ':' << static_cast<int>(cs.kind);
		for (auto& [c, w] : cs.label) {
			key << '|' << c << '=';
			for (Sym t : w) key << t << ',';
		}
		for (auto& [x, w] : cs.tau) {
			key << '|' << x << '>';
			for (Sym t : w) key << t << ',';
		}
		if (edge_keys_.insert(key.str()).second)
			nfa_.edges.push_back(NfaEdge{from.id, *id, cs.kind, cs.label, cs.tau, cs.note});

		Pos p;
		p.id = *id;
		p.raw = st.dst;
		for (auto& [a, b] : canon.cmap) p.m[a] = b;
		for (auto& [a, b] : canon.vmap) p.m[a] = b;
		if (wit_) {
			p.sigma = std::move(*sigma2);
			p.alpha = std::move(alpha2);
			p.trail = from.trail;
			TraceStep ts;
			ts.phase = phase_;
			ts.description = describe(cs);
			ts.kind = cs.kind;
			ts.label = cs.label;
			ts.tau = cs.tau;
			ts.state = dst;
			for (auto& [x, w] : p.sigma) put(ts.sigma, map_sym(p.m, x), rename(p.m, w));
			p.trail.push_back(std::move(ts));
		}
		return p;
	}

	std::optional<Pos> take_substitution(const Pos& from, const SubstitutionSpec& spec, const char* note) {
		Step st;
		try {
			st = apply_substitution(from.raw, spec);
		} catch (const TransitionError&) {
			return std::nullopt;
		}
		st.note = note;
		return take(from, st);
	}

	std::optional<Pos> erase(const Pos& from, Sym x) {
		SubstitutionSpec spec;
		spec.kind = SubstitutionSpec::Erase;
		spec.x = x;
		return take_substitution(from, spec, "erase");
	}

	std::optional<Pos> pop(const Pos& from, Sym x, const Word& u, NF rest) {
		SubstitutionSpec spec;
		spec.kind = SubstitutionSpec::Pop;
		spec.x = x;
		spec.u = u;
		spec.mu_rest = rest;
		return take_substitution(from, spec, "pop");
	}

	// pops u from x; an emptied variable is erased straight away
	template <class K>
	void pop_then(const Pos& from, Sym x, const Word& u, NF rest, K&& k) {
		auto p = pop(from, x, u, rest);
		if (!p) return;
		if (rest.is_one()) {
			auto q = erase(*p, x);
			if (q) k(*q);
		} else {
			k(*p);
		}
	}

	void expand(std::size_t id) {
		const State s = nfa_.states[id];
		if (is_final(s, ctx_)) return;
		Pos here = start(id);

		phase_ = "erase";
		for (Sym x : s.X)
			if (s.mu_of(x).is_one()) {
				if (auto p = erase(here, x)) finish(*p);
				return;
			}

		std::set<Sym> used = letters_of(s.W);
		for (auto& [x, c] : s.theta) {
			used.insert(c);
			if (is_const(x)) used.insert(x);
		}
		std::vector<Sym> keep;
		bool drop = false;
		for (Sym b : s.B) {
			if (ctx_.uni->in_A(b)) continue;
			if (used.count(b) || used.count(inv(b))) keep.push_back(b);
			else drop = true;
		}
		if (drop) {
			phase_ = "reduce";
			Step st = reduce_alphabet(s, keep, ctx_);
			st.note = "reduce";
			if (auto p = take(here, st)) finish(*p);
			return;
		}

		if (s.X.empty() && s.theta.empty()) {
			phase_ = "final";
			try {
				Step st = final_compress(s, ctx_);
				st.note = "final";
				if (auto p = take(here, st)) finish(*p);
			} catch (const TransitionError&) {
			}
			return;
		}
		if (!s.theta.empty()) {
			phase_ = "block";
			typed_moves(here);
			return;
		}
		// a witness follows block compression by pair compression
		const bool after_block = wit_ && block_open_;
		if (after_block) {
			wit_->blocks.back().squares_left = has_square(s.W);
			block_open_ = false;
		}
		if (after_block && has_pair(s)) {
			phase_ = "pair";
			pair_compress(here);
		} else if (s.W.size() <= bd_.small_bound) {
			phase_ = "preprocess";
			preprocess(here);
		} else if (has_square(s.W)) {
			phase_ = "block";
			block_compress(here);
		} else if (has_pair(s)) {
			phase_ = "pair";
			pair_compress(here);
		} else {
			phase_ = "preprocess";
			preprocess(here);
		}
		// popping is always possible for a witness when compression is not
		if (wit_ && !found_ && phase_ != "preprocess") {
			phase_ = "preprocess";
			preprocess(here);
		}
	}

	// Pops the first letter of every variable in turn.
	void preprocess(const Pos& from) {
		std::vector<Sym> order = from.raw.X;
		pre_step(from, order, 0);
	}

	void pre_step(const Pos& at, const std::vector<Sym>& order, std::size_t k) {
		while (k < order.size() && !at.raw.has_var(order[k])) ++k;
		if (k == order.size()) {
			finish(at);
			return;
		}
		const Sym y = order[k];
		const NF my = at.raw.mu_of(y);
		for (Sym b : at.raw.B) {
			if (b == kHash) continue;
			NF mb = at.raw.mu_of(b);
			if (mb.a != my.a) continue;
			for (NF rest : residuals(my, mb, L_)) pop_then(at, y, Word{b}, rest, [&](const Pos& p) { pre_step(p, order, k + 1); });
		}
	}

	struct Run {
		std::size_t begin, end;
		Sym letter;
		Sym left_var = 0, right_var = 0; // crossing variables, 0 if none
	};

	void block_compress(const Pos& from) {
		const State& s = from.raw;
		if (wit_) return witness_blocks(from);
		// variables whose every left neighbour is the same letter
		std::vector<std::pair<Sym, Sym>> eligible;
		if (opt_.split_blocks)
			for (Sym y : s.X) {
				auto ln = left_neighbours(s.W, y);
				if (ln.size() != 1) continue;
				Sym b = *ln.begin();
				if (!is_const(b) || b == kHash) continue;
				if (s.mu_of(b).a != s.mu_of(y).a) continue;
				eligible.emplace_back(y, b);
			}
		const std::size_t e = eligible.size();
		for (std::size_t mask = 0; mask < (std::size_t{1} << e); ++mask) {
			std::map<Sym, Sym> xb;
			for (std::size_t i = 0; i < e; ++i)
				if (mask >> i & 1) xb[eligible[i].first] = eligible[i].second;
			block_with(from, xb);
		}
	}

	// X_b is read off sigma: every eligible variable whose value starts with b
	void witness_blocks(const Pos& from) {
		const State& s = from.raw;
		BlockMilestone ms;
		auto cw = concrete(s.W, from.sigma);
		for (auto [b, e] : runs_of(cw)) {
			bool seen = false;
			for (std::size_t i = b; i < e; ++i) seen = seen || cw[i].at != npos;
			if (e - b >= 2 && seen && cw[b].letter != kHash) ms.lambda[cw[b].letter].insert(e - b);
		}
		std::map<Sym, Sym> xb;
		for (Sym y : s.X) {
			auto ln = left_neighbours(s.W, y);
			if (ln.size() != 1) continue;
			Sym b = *ln.begin();
			if (!is_const(b) || b == kHash || s.mu_of(b).a != s.mu_of(y).a) continue;
			Word v = value(from.sigma, y);
			if (v.empty() || v[0] != b) continue;
			xb[y] = b;
			ms.crossing[b].insert(y);
		}
		wit_->blocks.push_back(ms);
		block_open_ = true;
		block_with(from, xb);
	}

	void block_with(const Pos& from, const std::map<Sym, Sym>& xb) {
		const State& s = from.raw;
		const Word& W = s.W;
		std::vector<Run> runs;
		for (std::size_t i = 0; i < W.size();) {
			if (!is_const(W[i]) || W[i] == kHash) {
				++i;
				continue;
			}
			std::size_t j = i;
			while (j < W.size() && W[j] == W[i]) ++j;
			Run r{i, j, W[i]};
			Sym lv = i ? W[i - 1] : kHash;
			Sym rv = j < W.size() ? W[j] : kHash;
			if (is_var(lv)) {
				auto it = xb.find(inv(lv));
				if (it != xb.end() && it->second == inv(r.letter)) r.left_var = lv;
			}
			if (is_var(rv)) {
				auto it = xb.find(rv);
				if (it != xb.end() && it->second == r.letter) r.right_var = rv;
			}
			if (j - i >= 2 || r.left_var || r.right_var) runs.push_back(r);
			i = j;
		}
		if (runs.empty()) return;

		// c_b for every renamed letter b
		Sym next = next_const_id(s, ctx_);
		std::map<Sym, Sym> cb;
		for (const Run& r : runs) {
			Sym p = pos_rep(r.letter);
			if (cb.count(p)) continue;
			cb[p] = next;
			cb[inv(p)] = inv(next);
			next += 2;
		}
		Word w2 = W;
		for (const Run& r : runs)
			for (std::size_t i = r.begin; i < r.end; ++i) w2[i] = cb[r.letter];
		std::vector<Sym> B2 = s.B;
		auto mu2 = s.mu;
		Endo h;
		// one typed marker per c_b already here; mark_blocks hands it out
		TypeMap theta2 = s.theta;
		std::map<Sym, Sym> marker;
		for (auto& [b, c] : cb) {
			B2.push_back(c);
			mu2[c] = s.mu_of(b);
			h[c] = Word{b};
			if (c != pos_rep(c)) continue;
			marker[c] = next;
			marker[inv(c)] = inv(next);
			next += 2;
		}
		for (auto& [c, l] : marker) {
			Sym b = h[c][0];
			B2.push_back(l);
			mu2[l] = s.mu_of(b);
			theta2[l] = c;
			h[l] = Word{b};
		}
		Step st2;
		try {
			st2 = compress(s, w2, B2, theta2, mu2, h, ctx_);
		} catch (const TransitionError&) {
			return;
		}
		st2.note = "block-rename";
		auto p2 = take(from, st2);
		if (!p2) return;

		std::vector<Sym> split_order;
		for (auto& [y, b] : xb) split_order.push_back(y);
		split_step(*p2, cb, marker, xb, split_order, 0);
	}

	void split_step(const Pos& at, const std::map<Sym, Sym>& cb, const std::map<Sym, Sym>& marker,
	                const std::map<Sym, Sym>& xb, const std::vector<Sym>& order, std::size_t k) {
		if (k == order.size()) {
			mark_blocks(at, cb, marker);
			return;
		}
		const Sym y = order[k];
		if (!at.raw.has_var(y)) {
			split_step(at, cb, marker, xb, order, k + 1);
			return;
		}
		const Sym c = cb.at(xb.at(y));
		const NF mc = at.raw.mu_of(c);
		const NF my = at.raw.mu_of(y);
		const Sym fresh = next_var_id(at.raw, ctx_);
		for (NF mp : {NF::one(), mc}) {
			for (NF rest : residuals(my, nf_mul(mc, mp), L_)) {
				SubstitutionSpec spec;
				spec.kind = SubstitutionSpec::Split;
				spec.x = y;
				spec.c = c;
				spec.xprime = fresh;
				spec.mu_prime = mp;
				spec.mu_rest = rest;
				auto p = take_substitution(at, spec, "split");
				if (!p) continue;
				if (rest.is_one()) {
					if (auto q = erase(*p, y)) split_step(*q, cb, marker, xb, order, k + 1);
				} else {
					split_step(*p, cb, marker, xb, order, k + 1);
				}
			}
		}
	}

	// Marks the leftmost visible c_b of every block with a letter determined
	// by the block's shape: its visible length and the typed variables in it.
	void mark_blocks(const Pos& at, const std::map<Sym, Sym>& cb, const std::map<Sym, Sym>& marker) {
		const State& s = at.raw;
		using Shape = std::tuple<Sym, std::size_t, std::vector<Sym>>;
		struct Block {
			std::size_t first;
			Shape shape;
		};
		std::vector<Block> blocks;
		std::set<Sym> cs;
		for (auto& [b, c] : cb) cs.insert(c);
		for (Sym c : cs)
			for (const Seg& g : commuting_segments(s, c)) {
				if (!g.count) continue;
				std::vector<Sym> vars;
				// leftmost c for positive letters, rightmost for their partners,
				// so that marked blocks stay mirror images of each other
				std::size_t first = g.end;
				for (std::size_t j = g.begin; j < g.end; ++j) {
					if (s.W[j] != c) vars.push_back(s.W[j]);
					else if (first == g.end || c != pos_rep(c)) first = j;
				}
				std::sort(vars.begin(), vars.end());
				if (wit_) {
					// knowing sigma, blocks are told apart by their full length
					std::size_t len = g.count;
					for (Sym y : vars) len += value(at.sigma, y).size();
					vars.clear();
					blocks.push_back({first, Shape{c, len, vars}});
					continue;
				}
				blocks.push_back({first, Shape{c, g.count, vars}});
			}
		auto mirror = [](const Shape& g) {
			std::vector<Sym> vars;
			for (Sym x : std::get<2>(g)) vars.push_back(inv(x));
			std::sort(vars.begin(), vars.end());
			return Shape{inv(std::get<0>(g)), std::get<1>(g), vars};
		};
		std::vector<Shape> shapes;
		for (auto& bl : blocks) shapes.push_back(bl.shape);
		std::sort(shapes.begin(), shapes.end());
		std::map<Shape, Sym> letter;
		std::set<Sym> handed;
		Sym next = next_const_id(s, ctx_);
		for (const Shape& g : shapes) {
			if (letter.count(g)) continue;
			Sym c = std::get<0>(g);
			Sym l = next;
			if (marker.count(c) && !handed.count(c)) {
				l = marker.at(c);
				handed.insert(c);
				handed.insert(inv(c));
			} else {
				l = c == pos_rep(c) ? next : inv(next);
				next += 2;
			}
			letter[g] = l;
			letter[mirror(g)] = inv(l);
		}
		Word w = s.W;
		for (auto& bl : blocks) w[bl.first] = letter[bl.shape];

		std::vector<Sym> B = s.B;
		auto mu = s.mu;
		TypeMap theta = s.theta;
		Endo h;
		for (auto& [g, l] : letter) {
			Sym c = std::get<0>(g);
			if (!s.has_const(l)) B.push_back(l);
			mu[l] = s.mu_of(c);
			theta[l] = c;
			h[l] = Word{c};
		}
		Step st;
		try {
			st = compress(s, w, B, theta, mu, h, ctx_);
		} catch (const TransitionError&) {
			return;
		}
		st.note = "block-mark";
		if (auto p = take(at, st)) finish(*p);
	}

	// Factors of W made of c and symbols typed c.
	struct Seg {
		std::size_t begin, end;
		std::size_t count;
	};
	static std::vector<Seg> commuting_segments(const State& s, Sym c) {
		std::vector<Seg> out;
		const Word& W = s.W;
		auto in = [&](Sym t) {
			if (t == c) return true;
			auto it = s.theta.find(t);
			return it != s.theta.end() && it->second == c;
		};
		for (std::size_t i = 0; i < W.size();) {
			if (!in(W[i])) {
				++i;
				continue;
			}
			std::size_t j = i, cnt = 0;
			while (j < W.size() && in(W[j])) cnt += W[j++] == c;
			out.push_back({i, j, cnt});
			i = j;
		}
		return out;
	}

	static Sym type_letter(const State& s) {
		Sym c = 0;
		for (auto& [x, v] : s.theta)
			if (!c || pos_rep(v) < c) c = pos_rep(v);
		return c;
	}

	static std::vector<Sym> typed_vars(const State& s, Sym c) {
		std::vector<Sym> out;
		for (Sym x : s.X)
			if (is_var(x) && x > 0 && s.theta.count(x) && s.theta.at(x) == c) out.push_back(x);
		return out;
	}

	// One round of the exponent loop for the least type letter c: fix the
	// parity of typed variables, absorb odd blocks into their markers, pop
	// c^2 from what is left and halve.
	void typed_moves(const Pos& from) {
		const Sym c = type_letter(from.raw);
		parity_step(from, c, typed_vars(from.raw, c), 0);
	}

	void parity_step(const Pos& at, Sym c, const std::vector<Sym>& vars, std::size_t k) {
		if (k == vars.size()) return absorb_step(at, c);
		const Sym y = vars[k];
		if (!std::count(at.raw.X.begin(), at.raw.X.end(), y)) return parity_step(at, c, vars, k + 1);
		const NF my = at.raw.mu_of(y);
		if (my.is_one()) {
			if (auto p = erase(at, y)) parity_step(*p, c, vars, k + 1);
			return;
		}
		parity_step(at, c, vars, k + 1);
		for (NF rest : residuals(my, at.raw.mu_of(c), L_)) {
			if (rest != NF::one() && rest != at.raw.mu_of(c)) continue;
			pop_then(at, y, Word{c}, rest, [&](const Pos& q) { parity_step(q, c, vars, k + 1); });
		}
	}

	std::optional<Step> absorb(const State& s, Sym c, Sym l) {
		const Sym cbar = inv(c);
		Word w = s.W;
		std::vector<char> del(w.size(), 0);
		for (auto [d, ld] : {std::pair{c, l}, std::pair{cbar, inv(l)}})
			for (const Seg& g : commuting_segments(s, d)) {
				std::size_t need = 0;
				for (std::size_t j = g.begin; j < g.end; ++j) need += w[j] == ld;
				for (std::size_t j = g.begin; j < g.end && need; ++j)
					if (w[j] == d) {
						del[j] = 1;
						--need;
					}
				if (need) return std::nullopt;
			}
		Word nw;
		for (std::size_t j = 0; j < w.size(); ++j)
			if (!del[j]) nw.push_back(w[j]);
		std::vector<Sym> B = s.B;
		auto mu = s.mu;
		TypeMap theta = s.theta;
		drop_if_gone(nw, c, B, mu, theta);
		try {
			Step st = compress(s, nw, B, theta, mu, Endo{{l, Word{c, l}}}, ctx_);
			st.note = "absorb";
			return st;
		} catch (const TransitionError&) {
			return std::nullopt;
		}
	}

	// c leaves the alphabet together with its types once it is unused
	static bool drop_if_gone(const Word& w, Sym c, std::vector<Sym>& B, std::map<Sym, NF>& mu, TypeMap& theta) {
		const Sym cbar = inv(c);
		if (std::find(w.begin(), w.end(), c) != w.end() || std::find(w.begin(), w.end(), cbar) != w.end()) return false;
		for (auto& [x, t] : theta)
			if (is_var(x) && pos_rep(t) == c) return false;
		B.erase(std::remove_if(B.begin(), B.end(), [&](Sym b) { return b == c || b == cbar; }), B.end());
		mu.erase(c);
		mu.erase(cbar);
		for (auto it = theta.begin(); it != theta.end();)
			it = pos_rep(it->second) == c ? theta.erase(it) : std::next(it);
		return true;
	}

	// marker of a block whose exponent of c is odd
	std::optional<Sym> odd_marker(const State& s, Sym c) {
		for (Sym d : {c, inv(c)})
			for (const Seg& g : commuting_segments(s, d)) {
				if (g.count % 2 == 0) continue;
				Sym l = 0;
				for (std::size_t j = g.begin; j < g.end && !l; ++j)
					if (is_const(s.W[j]) && s.W[j] != d) l = s.W[j];
				if (l) return d == c ? l : inv(l);
			}
		return std::nullopt;
	}

	void absorb_step(const Pos& at, Sym c) {
		if (auto l = odd_marker(at.raw, c)) {
			if (auto st = absorb(at.raw, c, *l))
				if (auto p = take(at, *st)) {
					if (std::count(p->raw.B.begin(), p->raw.B.end(), c)) absorb_step(*p, c);
					else finish(*p);
				}
			return;
		}
		State s = at.raw;
		if (drop_if_gone(s.W, c, s.B, s.mu, s.theta)) {
			try {
				Step st = compress(at.raw, s.W, s.B, s.theta, s.mu, Endo{}, ctx_);
				st.note = "untype";
				if (auto p = take(at, st)) finish(*p);
			} catch (const TransitionError&) {
			}
			return;
		}
		square_step(at, c, typed_vars(at.raw, c), 0);
	}

	void square_step(const Pos& at, Sym c, const std::vector<Sym>& vars, std::size_t k) {
		if (k == vars.size()) return halve(at, c);
		const Sym y = vars[k];
		if (!std::count(at.raw.X.begin(), at.raw.X.end(), y)) return square_step(at, c, vars, k + 1);
		const NF mc = at.raw.mu_of(c);
		for (NF rest : residuals(at.raw.mu_of(y), nf_mul(mc, mc), L_)) {
			if (rest != NF::one() && rest != mc) continue;
			pop_then(at, y, Word{c, c}, rest, [&](const Pos& q) { square_step(q, c, vars, k + 1); });
		}
	}

	void halve(const Pos& at, Sym c) {
		const State& s = at.raw;
		const Sym cbar = inv(c);
		const NF mc = s.mu_of(c);
		if (nf_mul(mc, mc) != mc) return;
		std::vector<std::pair<Seg, Sym>> all;
		bool big = false;
		for (Sym d : {c, cbar})
			for (const Seg& g : commuting_segments(s, d)) {
				if (g.count % 2) return;
				big = big || g.count >= 2;
				all.push_back({g, d});
			}
		if (!big) return;
		std::sort(all.begin(), all.end(), [](auto& x, auto& y) { return x.first.begin < y.first.begin; });
		Word w;
		std::size_t i = 0;
		for (auto& [g, d] : all) {
			while (i < g.begin) w.push_back(s.W[i++]);
			w.insert(w.end(), g.count / 2, d);
			for (std::size_t j = g.begin; j < g.end; ++j)
				if (s.W[j] != d) w.push_back(s.W[j]);
			i = g.end;
		}
		while (i < s.W.size()) w.push_back(s.W[i++]);
		try {
			Step st = compress(s, w, s.B, s.theta, s.mu, Endo{{c, Word{c, c}}}, ctx_);
			st.note = "halve";
			if (auto p = take(at, st)) finish(*p);
		} catch (const TransitionError&) {
		}
	}

	void pair_compress(const Pos& from) {
		const State& s = from.raw;
		std::vector<Sym> reps;
		for (Sym b : letters_of(s.W)) reps.push_back(pos_rep(b));
		std::sort(reps.begin(), reps.end());
		reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
		const std::size_t k = reps.size();
		auto in_L = [&](std::size_t mask, Sym t) {
			std::size_t i = std::lower_bound(reps.begin(), reps.end(), pos_rep(t)) - reps.begin();
			bool pos_in_L = mask >> i & 1;
			return t == pos_rep(t) ? pos_in_L : !pos_in_L;
		};
		auto count = [&](std::size_t mask) {
			std::size_t n = 0;
			for (std::size_t i = 1; i < s.W.size(); ++i) {
				Sym a = s.W[i - 1], b = s.W[i];
				if (pairable(s, a, b) && in_L(mask, a) && !in_L(mask, b))
					++n;
			}
			return n;
		};
		auto as_set = [&](std::size_t mask) {
			std::vector<Sym> L;
			for (std::size_t i = 0; i < k; ++i) L.push_back((mask >> i & 1) ? reps[i] : inv(reps[i]));
			std::sort(L.begin(), L.end());
			return L;
		};
		if (wit_) {
			std::vector<std::pair<std::size_t, std::size_t>> order;
			for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask)
				if (std::size_t n = count(mask)) order.emplace_back(n, mask);
			std::stable_sort(order.begin(), order.end(), [](auto& x, auto& y) { return x.first > y.first; });
			PairMilestone ms;
			for (auto [n, mask] : order)
				if (n == order.front().first) ms.maximal_L.push_back(as_set(mask));
			for (Sym b : s.B)
				if (!ctx_.uni->in_A(b)) ms.alpha[b] = apply_endo(from.alpha, b);
			for (auto [n, mask] : order) {
				auto L = as_set(mask);
				uncross(from, std::set<Sym>(L.begin(), L.end()), s.X, 0);
				if (found_) {
					ms.chosen_L = L;
					break;
				}
			}
			wit_->pairs.push_back(ms);
			return;
		}
		std::vector<std::size_t> masks;
		std::size_t best = 0;
		for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
			std::size_t n = count(mask);
			if (opt_.all_partitions) {
				if (n) masks.push_back(mask);
				continue;
			}
			if (n > best) {
				best = n;
				masks = {mask};
			}
		}
		for (std::size_t mask : masks) {
			std::set<Sym> Lset;
			for (std::size_t i = 0; i < k; ++i) Lset.insert((mask >> i & 1) ? reps[i] : inv(reps[i]));
			std::vector<Sym> order = s.X;
			uncross(from, Lset, order, 0);
		}
	}

	static bool member_L(const std::set<Sym>& Lset, Sym t) { return Lset.count(t) > 0; }

	void uncross(const Pos& at, const std::set<Sym>& Lset, const std::vector<Sym>& order, std::size_t k) {
		while (k < order.size() && !at.raw.has_var(order[k])) ++k;
		if (k == order.size()) {
			compress_pairs(at, Lset);
			return;
		}
		const Sym y = order[k];
		const State& s = at.raw;
		const NF my = s.mu_of(y);
		bool needed = false;
		for (Sym t : left_neighbours(s.W, y))
			if (is_var(t) || member_L(Lset, t)) needed = true;
		bool stay = !needed;
		if (needed)
			for (Sym b : s.B) {
				if (b == kHash || s.mu_of(b).a != my.a) continue;
				// first letters in L, or outside the partition, never pair up
				if (member_L(Lset, b) || !member_L(Lset, inv(b))) {
					stay = true;
					continue;
				}
				for (NF rest : residuals(my, s.mu_of(b), L_))
					pop_then(at, y, Word{b}, rest, [&](const Pos& p) { uncross(p, Lset, order, k + 1); });
			}
		if (stay) uncross(at, Lset, order, k + 1);
	}

	void compress_pairs(const Pos& at, const std::set<Sym>& Lset) {
		const Word& W = at.raw.W;
		std::set<std::pair<Sym, Sym>> pairs;
		for (std::size_t i = 1; i < W.size(); ++i) {
			Sym a = W[i - 1], b = W[i];
			if (pairable(at.raw, a, b) && member_L(Lset, a) && !member_L(Lset, b) && Lset.count(inv(b)))
				pairs.insert({a, b});
		}
		Pos cur = at;
		std::set<std::pair<Sym, Sym>> done;
		for (auto [a, b] : pairs) {
			if (done.count({inv(b), inv(a)})) continue;
			done.insert({a, b});
			bool occurs = false;
			for (std::size_t i = 1; i < cur.raw.W.size() && !occurs; ++i)
				occurs = cur.raw.W[i - 1] == a && cur.raw.W[i] == b;
			if (!occurs) continue;
			Sym c = next_const_id(cur.raw, ctx_);
			Step st;
			try {
				st = compress_pair(cur.raw, a, b, c, ctx_);
			} catch (const TransitionError&) {
				return;
			}
			st.note = "pair";
			auto p = take(cur, st);
			if (!p) return;
			cur = *p;
		}
		finish(cur);
	}
};

} // namespace

PartialNfa explore(const Context& ctx, const SearchOptions& opt) {
	Explorer ex(ctx, opt);
	return ex.run();
}

Bounds witness_bounds(const Context& ctx) {
	Bounds b = ctx.bounds;
	b.small_bound = 2 * ctx.n + ctx.winit.size();
	return b;
}

WitnessTrace witness_trace(const Context& ctx, const Assignment& sigma, std::optional<Bounds> bounds) {
	SearchOptions opt;
	opt.bounds = bounds ? *bounds : witness_bounds(ctx);
	opt.max_states = std::numeric_limits<std::size_t>::max();
	opt.max_depth = 100000;
	WitnessTrace out;
	Explorer ex(ctx, opt);
	ex.trace(sigma, out);
	return out;
}

PartialNfa trim(const PartialNfa& nfa) {
	const std::size_t n = nfa.states.size();
	std::vector<std::vector<std::size_t>> out(n), in(n);
	for (std::size_t e = 0; e < nfa.edges.size(); ++e) {
		out[nfa.edges[e].src].push_back(nfa.edges[e].dst);
		in[nfa.edges[e].dst].push_back(nfa.edges[e].src);
	}
	auto reach = [&](const std::vector<std::size_t>& seeds, const std::vector<std::vector<std::size_t>>& adj) {
		std::vector<char> r(n, 0);
		std::vector<std::size_t> stack;
		for (std::size_t s : seeds)
			if (!r[s]) {
				r[s] = 1;
				stack.push_back(s);
			}
		while (!stack.empty()) {
			std::size_t v = stack.back();
			stack.pop_back();
			for (std::size_t w : adj[v])
				if (!r[w]) {
					r[w] = 1;
					stack.push_back(w);
				}
		}
		return r;
	};
	auto fwd = reach(nfa.initials, out);
	auto bwd = reach(nfa.finals, in);
	std::vector<std::size_t> remap(n, SIZE_MAX);
	PartialNfa t;
	t.complete = nfa.complete;
	t.violations = nfa.violations;
	t.violation_log = nfa.violation_log;
	t.weight_checks = nfa.weight_checks;
	for (std::size_t i = 0; i < n; ++i)
		if (fwd[i] && bwd[i]) {
			remap[i] = t.states.size();
			t.states.push_back(nfa.states[i]);
		}
	for (const NfaEdge& e : nfa.edges)
		if (remap[e.src] != SIZE_MAX && remap[e.dst] != SIZE_MAX) {
			NfaEdge f = e;
			f.src = remap[e.src];
			f.dst = remap[e.dst];
			t.edges.push_back(std::move(f));
		}
	for (std::size_t i : nfa.initials)
		if (remap[i] != SIZE_MAX) t.initials.push_back(remap[i]);
	for (std::size_t i : nfa.finals)
		if (remap[i] != SIZE_MAX) t.finals.push_back(remap[i]);
	return t;
}

bool has_cycle(const PartialNfa& nfa) {
	const std::size_t n = nfa.states.size();
	std::vector<std::vector<std::size_t>> out(n);
	for (const NfaEdge& e : nfa.edges) out[e.src].push_back(e.dst);
	std::vector<char> color(n, 0);
	for (std::size_t root = 0; root < n; ++root) {
		if (color[root]) continue;
		std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
		color[root] = 1;
		while (!stack.empty()) {
			auto& [v, i] = stack.back();
			if (i < out[v].size()) {
				std::size_t w = out[v][i++];
				if (color[w] == 1) return true;
				if (!color[w]) {
					color[w] = 1;
					stack.push_back({w, 0});
				}
			} else {
				color[v] = 2;
				stack.pop_back();
			}
		}
	}
	return false;
}

} // namespace wordeq
