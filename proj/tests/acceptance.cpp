// One line per acceptance criterion. Exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "wordeq/solve.hpp"

using namespace wordeq;

namespace {

// time limits, seconds
constexpr double kLimitFig2 = 1;
constexpr double kLimitTrace = 5;
constexpr double kLimitRandom = 600;
constexpr double kLimitFamily = 1800;
constexpr double kLimitGroup = 60;
constexpr double kLimitKernel = 60;
constexpr double kLimitNF = 1;
constexpr double kLimitClass = 60;

// search caps used by the suites
constexpr std::size_t kCapRandom = 10000;
constexpr std::size_t kCapFamily = 20000;
constexpr std::size_t kCapGroup = 20000;

// structural bookkeeping shared with criterion 6
struct Structure {
	std::size_t automata = 0, states = 0, edges = 0, weight_checks = 0, violations = 0;
	std::size_t group_encodings = 0, group_too_long = 0;
	std::vector<std::string> log;

	void add(const PartialNfa& nfa, const std::string& what) {
		++automata;
		states += nfa.states.size();
		edges += nfa.edges.size();
		weight_checks += nfa.weight_checks;
		violations += nfa.violations;
		for (auto& v : nfa.violation_log)
			if (log.size() < 5) log.push_back(what + ": " + v);
	}
	void add(const Solved& s, const std::string& what) {
		for (auto& b : s.branches) add(b.nfa, what);
	}
	void add_group(Universe& uni, const Equation& eq, const std::vector<Sym>& vars) {
		Universe copy = uni;
		GroupEncoding g = encode_group(copy, eq.first, eq.second, vars);
		++group_encodings;
		const auto& d = g.direct.encoded;
		if (d.first.size() + d.second.size() > 15 * (eq.first.size() + eq.second.size())) ++group_too_long;
	}
};
Structure structure;

struct Outcome {
	bool ok = true;
	std::string detail;
	void require(bool cond, const std::string& what) {
		if (!cond && ok) {
			ok = false;
			detail = what;
		}
	}
};

int failures = 0;

void report(int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
	auto t0 = std::chrono::steady_clock::now();
	Outcome o;
	try {
		o = body();
	} catch (const std::exception& e) {
		o.ok = false;
		o.detail = std::string("exception: ") + e.what();
	}
	double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	if (o.ok && secs > limit) {
		o.ok = false;
		o.detail = "took longer than " + std::to_string(limit) + " s";
	}
	if (!o.ok) ++failures;
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.2f s", secs);
	std::cout << (o.ok ? "PASS" : "FAIL") << " " << id << " " << name << " (" << buf << ")";
	if (!o.detail.empty()) std::cout << ": " << o.detail;
	std::cout << std::endl;
}

Problem problem(const std::string& text) { return parse_problem(text); }

std::string show_tuples(const Universe& u, const std::vector<Tuple>& ts) {
	std::string s = "{";
	for (std::size_t i = 0; i < ts.size(); ++i) {
		s += i ? ", " : "";
		for (std::size_t k = 0; k < ts[i].size(); ++k) s += (k ? "#" : "") + format_word(u, ts[i][k]);
	}
	return s + "}";
}

// 1 -------------------------------------------------------------------------

Outcome fig2() {
	Outcome o;
	Problem p = problem("letters: a b\nvars: X\naX = aaab\n");
	Solved s = solve(p);
	structure.add(s, "fig2");
	Listing l = enumerate(s, 8);
	o.require(s.status == Status::Sat && s.complete, "not SAT/complete");
	o.require(l.tuples.size() == 1 && format_word(p.uni, l.tuples[0][0]) == "aab",
	          "solutions " + show_tuples(p.uni, l.tuples));

	// look for the path in the exported automaton
	PartialNfa nfa = import_json(export_json(s));
	const Context& ctx = s.branches[0].ctx;
	const Word aab{p.uni.letter(0), p.uni.letter(0), p.uni.letter(1)};
	std::set<std::size_t> finals(nfa.finals.begin(), nfa.finals.end());
	bool found = false;
	std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t at, std::size_t visited) {
		if (found || visited > 6) return;
		for (const NfaEdge& e : nfa.edges) {
			if (e.src != at) continue;
			if (visited + 1 == 6 && finals.count(e.dst) && e.kind == EdgeKind::Final &&
			    apply_endo(e.label, ctx.seed(0)) == aab)
				found = true;
			walk(e.dst, visited + 1);
		}
	};
	for (auto i : nfa.initials) walk(i, 1);
	o.require(found, "no 6-state accepting path with final label c -> aab");
	return o;
}

// 2 -------------------------------------------------------------------------

Outcome block_pair_trace() {
	Outcome o;
	Problem p = problem("letters: a b\nvars: X Y Z P Q\nX a Y b a X P = b Y b b b Z Q\n");
	Assignment sigma = parse_assignment(p, "X=bbbbb,Y=bbbba,Z=bab,P=abbba,Q=abbbbbabbba");
	o.require(check_assignment(p, sigma).ok, "assignment is not a solution");
	Context ctx = monoid_context(p);
	WitnessTrace t = witness_trace(ctx, sigma);
	const Sym a = p.uni.letter(0), b = p.uni.letter(1);
	o.require(t.ok, "trace failed: " + t.error);
	for (auto& st : t.steps) o.require(st.forward_ok, "forward property fails at " + st.description);
	o.require(!t.blocks.empty(), "no block compression");
	if (!t.blocks.empty()) {
		const BlockMilestone& m = t.blocks.front();
		auto lam = [&](Sym c) { return m.lambda.count(c) ? m.lambda.at(c) : std::set<std::size_t>{}; };
		o.require(lam(a).empty(), "Lambda_a not empty");
		o.require(lam(b) == std::set<std::size_t>{4, 5}, "Lambda_b != {4,5}");
		auto xb = m.crossing.count(b) ? m.crossing.at(b) : std::set<Sym>{};
		o.require(xb == std::set<Sym>{p.vars[0], p.vars[1]}, "X_b != {X,Y}");
		o.require(!m.squares_left, "a b^2 survives block compression");
	}
	// the word right after the block phase
	for (std::size_t i = 0; i + 1 < t.steps.size(); ++i)
		if (t.steps[i].phase == "block" && t.steps[i + 1].phase != "block") {
			const Word& w = t.steps[i].state.W;
			for (std::size_t k = 1; k < w.size(); ++k)
				o.require(!((w[k] == b && w[k - 1] == b) || (w[k] == inv(b) && w[k - 1] == inv(b))),
				          "b^2 factor after block compression");
		}
	bool partition = false;
	for (const PairMilestone& m : t.pairs)
		for (const auto& L : m.maximal_L) {
			std::set<Sym> s(L.begin(), L.end());
			if (s.size() != 4 || !s.count(inv(a)) || !s.count(b)) continue;
			std::multiset<std::size_t> powers;
			for (Sym c : s) {
				if (p.uni.in_A(c)) continue;
				auto it = m.alpha.find(c);
				if (it == m.alpha.end()) continue;
				bool all_b = std::all_of(it->second.begin(), it->second.end(), [&](Sym x) { return x == b; });
				if (all_b) powers.insert(it->second.size());
			}
			partition = partition || powers == std::multiset<std::size_t>{4, 5};
		}
	o.require(partition, "no maximal partition {a^, b, d, e} with d = b^5, e = b^4");
	std::vector<Word> want;
	for (Sym x : ctx.xinit) want.push_back(sigma.at(x));
	o.require(t.solution == want, "recovered solution differs");
	return o;
}

// 3 -------------------------------------------------------------------------

Outcome random_soundness() {
	Outcome o;
	std::mt19937 rng(20240601);
	std::size_t equations = 0, tuples = 0, capped = 0;
	std::ostringstream note;
	while (equations < 220) {
		Universe u({"a", "b"});
		Sym X = u.add_var("X");
		Sym Y = u.add_var("Y");
		int nv = 1 + static_cast<int>(rng() % 2);
		std::vector<Sym> pool{u.letter(0), inv(u.letter(0)), u.letter(1), inv(u.letter(1)), X, inv(X)};
		if (nv == 2) {
			pool.push_back(Y);
			pool.push_back(inv(Y));
		}
		std::size_t len = 2 + rng() % 5; // |UV| in [2,6]
		Word w;
		for (std::size_t i = 0; i < len; ++i) w.push_back(pool[rng() % pool.size()]);
		if (std::none_of(w.begin(), w.end(), is_var)) continue;
		std::size_t cut = 1 + rng() % (len - 1);
		Problem p;
		p.uni = u;
		p.vars = nv == 2 ? std::vector<Sym>{X, Y} : std::vector<Sym>{X};
		p.equations = {{Word(w.begin(), w.begin() + static_cast<long>(cut)), Word(w.begin() + static_cast<long>(cut), w.end())}};
		SolveOptions opt;
		opt.max_states = kCapRandom;
		Solved s = solve(p, opt);
		structure.add(s, "random");
		++equations;
		capped += !s.complete;
		Listing l = enumerate(s, 3);
		for (const Tuple& t : l.tuples) {
			Assignment sigma;
			for (std::size_t i = 0; i < p.vars.size(); ++i) sigma[p.vars[i]] = t[i];
			++tuples;
			o.require(check_assignment(p, sigma).ok,
			          "non-solution " + show_tuples(p.uni, {t}) + " for " + p.uni.show(p.equations[0].first, "") + " = " +
			              p.uni.show(p.equations[0].second, ""));
		}
	}
	o.require(tuples > 0, "no tuples enumerated");
	note << equations << " equations, " << tuples << " tuples checked, " << capped << " capped";
	if (o.ok) o.detail = note.str();
	return o;
}

// 4 -------------------------------------------------------------------------

// Images of an equation under the symmetries that preserve solution sets up
// to a bijection: swapping the sides, reversing both sides, renaming
// a <-> b, inverting a letter, and swapping X with X^.
std::pair<Word, Word> family_rep(const Word& U, const Word& V, Sym a, Sym b, Sym X) {
	std::pair<Word, Word> best{U, V};
	for (int m = 0; m < 16; ++m) {
		std::map<Sym, Sym> f;
		Sym A = (m & 1) ? b : a, B = (m & 1) ? a : b;
		Sym fa = (m & 2) ? inv(A) : A, fb = (m & 4) ? inv(B) : B, fx = (m & 8) ? inv(X) : X;
		f = {{a, fa}, {inv(a), inv(fa)}, {b, fb}, {inv(b), inv(fb)}, {X, fx}, {inv(X), inv(fx)}};
		for (int rev = 0; rev < 2; ++rev)
			for (int sw = 0; sw < 2; ++sw) {
				Word u2, v2;
				for (Sym s : U) u2.push_back(f.at(s));
				for (Sym s : V) v2.push_back(f.at(s));
				if (rev) {
					std::reverse(u2.begin(), u2.end());
					std::reverse(v2.begin(), v2.end());
				}
				if (sw) std::swap(u2, v2);
				best = std::min(best, std::make_pair(u2, v2));
			}
	}
	return best;
}

Outcome family() {
	Outcome o;
	Universe u({"a", "b"});
	Sym X = u.add_var("X");
	Sym a = u.letter(0), b = u.letter(1);
	const std::vector<Sym> syms{a, inv(a), b, inv(b), X, inv(X)};
	std::set<std::pair<Word, Word>> seen;
	std::size_t total = 0, complete = 0, agree = 0;
	for (std::size_t len = 1; len <= 5; ++len) {
		std::size_t count = 1;
		for (std::size_t i = 0; i < len; ++i) count *= syms.size();
		for (std::size_t code = 0; code < count; ++code) {
			Word w;
			for (std::size_t c = code, i = 0; i < len; ++i, c /= syms.size()) w.push_back(syms[c % syms.size()]);
			if (std::none_of(w.begin(), w.end(), is_var)) continue;
			for (std::size_t cut = 0; cut <= len; ++cut) {
				Word U(w.begin(), w.begin() + static_cast<long>(cut)), V(w.begin() + static_cast<long>(cut), w.end());
				if (!seen.insert(family_rep(U, V, a, b, X)).second) continue;
				++total;
				Context ctx = make_context(u, U, V, {X});
				SearchOptions opt;
				opt.max_states = kCapFamily;
				PartialNfa nfa = explore(ctx, opt);
				structure.add(nfa, "family");
				if (!nfa.complete) continue;
				++complete;
				EnumLimits lim;
				lim.max_len = 3;
				Enumeration e = enumerate_solutions(trim(nfa), ctx, lim);
				OracleQuery q;
				q.equations = {{U, V}};
				q.vars = {X};
				q.max_len = 3;
				auto want = brute_solutions(u, q);
				if (e.tuples == want && !e.truncated) ++agree;
				else
					o.require(false, u.show(U, "") + " = " + u.show(V, "") + ": automaton " + show_tuples(u, e.tuples) +
					                     ", oracle " + show_tuples(u, want));
			}
		}
	}
	if (o.ok)
		o.detail = std::to_string(total) + " classes, " + std::to_string(complete) + " complete, " +
		           std::to_string(agree) + " agree";
	return o;
}

// 5 -------------------------------------------------------------------------

Outcome group() {
	Outcome o;
	SolveOptions opt;
	opt.max_states = kCapGroup;
	{
		Problem p = problem("mode: group\nletters: a b\nvars: X\nXa = aX\n");
		structure.add_group(p.uni, p.equations[0], p.vars);
		Solved s = solve(p, opt);
		structure.add(s, "group Xa=aX");
		o.require(s.cls.kind == SolutionClass::Infinite, std::string("class ") + class_name(s.cls.kind));
		Listing l = enumerate(s, 2);
		OracleQuery q;
		q.equations = p.equations;
		q.vars = p.vars;
		q.mode = Mode::Group;
		q.max_len = 2;
		auto want = brute_solutions(p.uni, q);
		o.require(want.size() == 5, "oracle gives " + show_tuples(p.uni, want));
		o.require(l.tuples == want, "automaton " + show_tuples(p.uni, l.tuples) + ", oracle " + show_tuples(p.uni, want));
	}
	{
		Problem p = problem("mode: group\nletters: a b\nvars: X\naX = aaab\n");
		structure.add_group(p.uni, p.equations[0], p.vars);
		Solved s = solve(p, opt);
		structure.add(s, "group aX=aaab");
		Listing l = enumerate(s, 5);
		o.require(l.tuples.size() == 1 && format_word(p.uni, l.tuples[0][0]) == "aab",
		          "solutions " + show_tuples(p.uni, l.tuples));
	}
	// encodings of some longer group equations, for the size bound
	std::mt19937 rng(5);
	for (int i = 0; i < 40; ++i) {
		Universe u({"a", "b"});
		Sym X = u.add_var("X"), Y = u.add_var("Y");
		std::vector<Sym> pool{u.letter(0), inv(u.letter(0)), u.letter(1), inv(u.letter(1)), X, inv(X), Y, inv(Y)};
		Word U, V;
		for (std::size_t k = 0, n = 1 + rng() % 6; k < n; ++k) U.push_back(pool[rng() % pool.size()]);
		for (std::size_t k = 0, n = 1 + rng() % 6; k < n; ++k) V.push_back(pool[rng() % pool.size()]);
		structure.add_group(u, {U, V}, {X, Y});
	}
	return o;
}

// 6 -------------------------------------------------------------------------

Outcome structural() {
	Outcome o;
	o.require(structure.violations == 0, std::to_string(structure.violations) + " violations" +
	                                         (structure.log.empty() ? "" : ", first: " + structure.log.front()));
	o.require(structure.group_too_long == 0, std::to_string(structure.group_too_long) + " group encodings exceed 15|UV|");
	o.require(structure.states > 0 && structure.weight_checks > 0, "nothing was checked");
	if (o.ok)
		o.detail = std::to_string(structure.automata) + " automata, " + std::to_string(structure.states) + " states, " +
		           std::to_string(structure.edges) + " edges, " + std::to_string(structure.weight_checks) +
		           " compression edges, " + std::to_string(structure.group_encodings) + " group encodings";
	return o;
}

// 7 -------------------------------------------------------------------------

// commutation class by breadth-first search over swaps of adjacent
// commuting letters
std::set<Word> commutation_class(const Word& w, const TypeMap& th) {
	std::set<Word> cls{w};
	std::vector<Word> todo{w};
	while (!todo.empty()) {
		Word cur = todo.back();
		todo.pop_back();
		for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
			Sym x = cur[i], y = cur[i + 1];
			bool swaps = x != y && ((th.count(x) && th.at(x) == y) || (th.count(y) && th.at(y) == x));
			if (!swaps) continue;
			Word nxt = cur;
			std::swap(nxt[i], nxt[i + 1]);
			if (cls.insert(nxt).second) todo.push_back(nxt);
		}
	}
	return cls;
}

std::set<Word> factor_classes(const Word& w, std::size_t len, const TypeMap& th) {
	std::set<Word> out;
	for (const Word& v : commutation_class(w, th))
		for (std::size_t i = 0; i + len <= v.size(); ++i) out.insert(*commutation_class(Word(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i + len)), th).begin());
	return out;
}

Word nth_word(std::size_t code, std::size_t len, const Word& alpha) {
	Word w;
	for (std::size_t i = 0; i < len; ++i, code /= alpha.size()) w.push_back(alpha[code % alpha.size()]);
	return w;
}

Outcome kernel() {
	Outcome o;
	struct Config {
		Word alpha;
		TypeMap theta;
	};
	// constants 1..3, typed symbols 4 and 5
	const std::vector<Config> configs{
	    {{1, 2, 3}, {{3, 1}}},
	    {{1, 2, 4, 5}, {{4, 1}, {5, 1}}},
	    {{1, 2, 3, 4, 5}, {{4, 1}, {5, 2}}},
	    {{1, 2, 3, 4, 5}, {{4, 1}, {5, 1}}},
	    {{1, 2, 3, 4, 5}, {}},
	};
	std::size_t words = 0, factors = 0;
	std::mt19937 rng(11);
	for (const Config& cfg : configs) {
		const std::size_t k = cfg.alpha.size();
		std::size_t count = 1;
		for (std::size_t len = 0; len <= 8; ++len, count *= k)
			for (std::size_t code = 0; code < count; ++code) {
				Word w = nth_word(code, len, cfg.alpha);
				auto cls = commutation_class(w, cfg.theta);
				++words;
				Word nf = normal_form(w, cfg.theta);
				if (nf != *cls.begin()) {
					o.require(false, "normal form is not the least class member");
					return o;
				}
				Word other = w;
				std::next_permutation(other.begin(), other.end());
				if (trace_eq(w, other, cfg.theta) != (cls.count(other) > 0) || !trace_eq(w, *cls.rbegin(), cfg.theta)) {
					o.require(false, "trace_eq disagrees with the commutation class");
					return o;
				}
				// exhaustive factors for short words, sampled for long ones
				if (len > 5 && rng() % 64) continue;
				for (std::size_t fl = 0; fl <= std::min<std::size_t>(len, 3); ++fl) {
					auto have = factor_classes(w, fl, cfg.theta);
					std::size_t fc = 1;
					for (std::size_t i = 0; i < fl; ++i) fc *= k;
					for (std::size_t f = 0; f < fc; ++f) {
						Word u = nth_word(f, fl, cfg.alpha);
						++factors;
						bool want = have.count(*commutation_class(u, cfg.theta).begin()) > 0;
						if (is_factor(u, w, cfg.theta) != want) {
							o.require(false, "is_factor disagrees");
							return o;
						}
					}
				}
			}
	}
	o.detail = std::to_string(words) + " words, " + std::to_string(factors) + " factor queries";
	return o;
}

// 8 -------------------------------------------------------------------------

Outcome nf_algebra() {
	Outcome o;
	auto all = nf_elements(2);
	o.require(all.size() == 18, "N_F has " + std::to_string(all.size()) + " elements");
	for (NF x : all) {
		o.require(nf_mul(NF::one(), x) == x && nf_mul(x, NF::one()) == x, "1 is not neutral");
		o.require(nf_mul(NF::zero(), x).is_zero() && nf_mul(x, NF::zero()).is_zero(), "0 is not absorbing");
		o.require(nf_inv(nf_inv(x)) == x, "involution is not an involution");
		for (NF y : all) {
			o.require(nf_inv(nf_mul(x, y)) == nf_mul(nf_inv(y), nf_inv(x)), "involution is not an antihomomorphism");
			for (NF z : all) o.require(nf_mul(nf_mul(x, y), z) == nf_mul(x, nf_mul(y, z)), "not associative");
		}
	}
	// mu0 on words: 0 exactly on non-reduced words, else first and last letter
	Universe u({"a", "b"});
	for (auto len = 1u; len <= 4; ++len) {
		std::size_t count = 1;
		for (std::size_t i = 0; i < len; ++i) count *= 4;
		for (std::size_t code = 0; code < count; ++code) {
			Word w = nth_word(code, len, {1, 2, 3, 4});
			NF v = mu0_word(w);
			o.require(v.is_zero() != is_reduced(w), "mu0 misses reducedness");
			if (!v.is_zero()) o.require(v == NF::pair(w.front(), w.back()), "mu0 misses the end letters");
		}
	}
	return o;
}

// 9 -------------------------------------------------------------------------

Outcome classification() {
	Outcome o;
	auto kind = [&](const std::string& text, bool* cycle) {
		Problem p = problem(text);
		Solved s = solve(p);
		structure.add(s, "class");
		o.require(s.complete, "search capped on " + text);
		if (cycle) *cycle = !s.branches.empty() && has_cycle(s.branches[0].trimmed);
		return s.cls.kind;
	};
	bool cycle = false;
	o.require(kind("letters: a b\nvars: X\na = b\n", nullptr) == SolutionClass::Empty, "a=b is not Empty");
	o.require(kind("letters: a b\nvars: X\naX = aaab\n", nullptr) == SolutionClass::Finite, "aX=aaab is not Finite");
	o.require(kind("letters: a b\nvars: X\naX = Xa\n", &cycle) == SolutionClass::Infinite, "aX=Xa is not Infinite");
	o.require(cycle, "no cycle for aX=Xa");
	return o;
}

} // namespace

int main(int argc, char** argv) {
	std::set<int> only;
	for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
	auto run = [&](int id, const char* name, double limit, Outcome (*f)()) {
		if (only.empty() || only.count(id)) report(id, name, limit, f);
	};
	run(1, "single-solution golden path", kLimitFig2, fig2);
	run(2, "block and pair golden trace", kLimitTrace, block_pair_trace);
	run(3, "soundness on random equations", kLimitRandom, random_soundness);
	run(4, "oracle equivalence on the |UV| <= 5 family", kLimitFamily, family);
	run(5, "group pipeline", kLimitGroup, group);
	run(6, "structural bounds", 1, structural);
	run(7, "trace monoid kernel", kLimitKernel, kernel);
	run(8, "N_F algebra", kLimitNF, nf_algebra);
	run(9, "emptiness and finiteness", kLimitClass, classification);
	return failures;
}
