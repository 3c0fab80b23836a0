#include "wordeq/edtol.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wordeq {

using nlohmann::json;

Word compose_apply(const std::vector<Endo>& labels, const Word& w) {
	Word cur = w;
	for (auto it = labels.rbegin(); it != labels.rend(); ++it) cur = apply_endo(*it, cur);
	return cur;
}

bool tuple_less(const Tuple& x, const Tuple& y) {
	std::size_t lx = 0, ly = 0;
	for (auto& w : x) lx += w.size();
	for (auto& w : y) ly += w.size();
	if (lx != ly) return lx < ly;
	for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
		if (x[i].size() != y[i].size()) return x[i].size() < y[i].size();
		if (x[i] != y[i]) return x[i] < y[i];
	}
	return x.size() < y.size();
}

Enumeration enumerate_solutions(const PartialNfa& nfa, const Context& ctx, const EnumLimits& lim) {
	Enumeration out;
	const std::size_t n = nfa.states.size();
	std::vector<std::vector<std::size_t>> in(n);
	for (std::size_t i = 0; i < nfa.edges.size(); ++i) in[nfa.edges[i].dst].push_back(i);
	std::vector<char> initial(n, 0);
	for (auto i : nfa.initials) initial[i] = 1;

	Tuple seeds;
	for (int i = 0; i < ctx.m(); ++i) seeds.push_back(Word{ctx.seed(i)});

	std::set<std::pair<std::size_t, Tuple>> seen;
	std::set<Tuple> found;
	std::vector<std::pair<std::size_t, Tuple>> stack;
	for (auto f : nfa.finals)
		if (seen.insert({f, seeds}).second) stack.push_back({f, seeds});

	std::size_t steps = 0;
	while (!stack.empty()) {
		if (++steps > lim.max_steps) {
			out.truncated = true;
			break;
		}
		auto [s, t] = std::move(stack.back());
		stack.pop_back();
		if (initial[s]) {
			bool ok = true;
			for (auto& w : t)
				for (Sym c : w) ok = ok && c != kHash && ctx.uni->in_A(c);
			for (auto& w : t) ok = ok && is_reduced(w);
			if (ok) found.insert(t);
		}
		for (auto ei : in[s]) {
			const NfaEdge& e = nfa.edges[ei];
			Tuple nt;
			nt.reserve(t.size());
			bool fits = true;
			for (std::size_t i = 0; i < t.size(); ++i) {
				nt.push_back(apply_endo(e.label, t[i]));
				if (nt.back().size() > (i < lim.max_len_each.size() ? lim.max_len_each[i] : lim.max_len)) {
					fits = false;
					break;
				}
			}
			if (!fits) continue;
			if (seen.insert({e.src, nt}).second) stack.push_back({e.src, std::move(nt)});
		}
	}
	out.tuples.assign(found.begin(), found.end());
	std::sort(out.tuples.begin(), out.tuples.end(), tuple_less);
	return out;
}

const char* class_name(SolutionClass c) {
	switch (c) {
	case SolutionClass::Empty: return "Empty";
	case SolutionClass::Finite: return "Finite";
	case SolutionClass::Infinite: return "Infinite";
	}
	return "?";
}

Classification classify(const PartialNfa& trimmed) {
	Classification c;
	c.exact = trimmed.complete;
	if (trimmed.states.empty()) c.kind = SolutionClass::Empty;
	else if (has_cycle(trimmed)) c.kind = SolutionClass::Infinite;
	else c.kind = SolutionClass::Finite;
	return c;
}

namespace {

std::string digest(const std::string& bytes) {
	std::uint64_t h = 1469598103934665603ull;
	for (unsigned char ch : bytes) {
		h ^= ch;
		h *= 1099511628211ull;
	}
	std::ostringstream os;
	os << std::hex << std::setw(16) << std::setfill('0') << h;
	return os.str();
}

json nf_json(NF v) { return json::array({static_cast<int>(v.tag), v.a, v.b}); }

NF nf_from(const json& j) {
	NF v;
	v.tag = static_cast<NF::Tag>(j.at(0).get<int>());
	v.a = j.at(1).get<Sym>();
	v.b = j.at(2).get<Sym>();
	return v;
}

json map_json(const std::map<Sym, Word>& m) {
	json o = json::array();
	for (auto& [k, w] : m) o.push_back(json::array({k, w}));
	return o;
}

std::map<Sym, Word> map_from(const json& j) {
	std::map<Sym, Word> m;
	for (auto& p : j) m[p.at(0).get<Sym>()] = p.at(1).get<Word>();
	return m;
}

std::string dot_escape(const std::string& s) {
	std::string r;
	for (char ch : s) {
		if (ch == '"' || ch == '\\') r += '\\';
		r += ch;
	}
	return r;
}

} // namespace

std::string edge_summary(const NfaEdge& e, const Context& ctx) {
	std::vector<std::string> parts;
	if (e.kind == EdgeKind::Substitution) {
		for (auto& [x, w] : e.tau)
			if (x == pos_rep(x)) parts.push_back(ctx.uni->name(x) + "->" + (w.empty() ? "1" : ctx.show_compact(w)));
	}
	for (auto& [c, w] : e.label) {
		if (c != pos_rep(c)) continue;
		if (e.kind == EdgeKind::Substitution && w.size() == 1) continue;
		parts.push_back(ctx.uni->name(c) + "->" + (w.empty() ? "1" : ctx.show_compact(w)));
	}
	std::string s = parts.empty() ? (e.note.empty() ? "id" : e.note) : "";
	for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
	return s;
}

std::string export_json(const PartialNfa& nfa, const Context& ctx) {
	json j;
	j["format"] = "wordeq-edtol";
	j["version"] = 1;
	j["letters"] = ctx.uni->letters();
	json vars = json::array();
	for (Sym x : ctx.xinit) vars.push_back(ctx.uni->name(x));
	j["variables"] = vars;
	json seeds = json::array();
	for (int i = 0; i < ctx.m(); ++i) seeds.push_back(ctx.seed(i));
	j["seeds"] = seeds;
	j["complete"] = nfa.complete;

	json states = json::array();
	for (std::size_t i = 0; i < nfa.states.size(); ++i) {
		const State& s = nfa.states[i];
		json st;
		st["id"] = i;
		st["key"] = digest(s.key());
		st["display"] = show_state(s, ctx);
		st["W"] = s.W;
		st["B"] = s.B;
		st["X"] = s.X;
		json th = json::array();
		for (auto& [x, c] : s.theta) th.push_back(json::array({x, c}));
		st["theta"] = th;
		json mu = json::array();
		for (auto& [x, v] : s.mu) mu.push_back(json::array({x, nf_json(v)}));
		st["mu"] = mu;
		states.push_back(st);
	}
	j["states"] = states;

	json edges = json::array();
	for (const NfaEdge& e : nfa.edges) {
		json ed;
		ed["src"] = e.src;
		ed["dst"] = e.dst;
		ed["kind"] = edge_kind_name(e.kind);
		ed["note"] = e.note;
		ed["label"] = map_json(e.label);
		ed["tau"] = map_json(e.tau);
		ed["summary"] = edge_summary(e, ctx);
		edges.push_back(ed);
	}
	j["edges"] = edges;
	j["initials"] = nfa.initials;
	j["finals"] = nfa.finals;
	return j.dump(1) + "\n";
}

PartialNfa import_json(const std::string& text) {
	json j = json::parse(text);
	if (j.value("format", "") != "wordeq-edtol") throw std::runtime_error("not a wordeq automaton");
	PartialNfa nfa;
	nfa.complete = j.at("complete").get<bool>();
	for (auto& st : j.at("states")) {
		State s;
		s.W = st.at("W").get<Word>();
		s.B = st.at("B").get<std::vector<Sym>>();
		s.X = st.at("X").get<std::vector<Sym>>();
		for (auto& p : st.at("theta")) s.theta[p.at(0).get<Sym>()] = p.at(1).get<Sym>();
		for (auto& p : st.at("mu")) s.mu[p.at(0).get<Sym>()] = nf_from(p.at(1));
		nfa.states.push_back(std::move(s));
	}
	static const std::map<std::string, EdgeKind> kinds = {{edge_kind_name(EdgeKind::Substitution), EdgeKind::Substitution},
	                                                      {edge_kind_name(EdgeKind::Compression), EdgeKind::Compression},
	                                                      {edge_kind_name(EdgeKind::Final), EdgeKind::Final}};
	for (auto& ed : j.at("edges")) {
		NfaEdge e;
		e.src = ed.at("src").get<std::size_t>();
		e.dst = ed.at("dst").get<std::size_t>();
		if (e.src >= nfa.states.size() || e.dst >= nfa.states.size()) throw std::runtime_error("edge endpoint out of range");
		e.kind = kinds.at(ed.at("kind").get<std::string>());
		e.note = ed.at("note").get<std::string>();
		e.label = map_from(ed.at("label"));
		e.tau = map_from(ed.at("tau"));
		nfa.edges.push_back(std::move(e));
	}
	nfa.initials = j.at("initials").get<std::vector<std::size_t>>();
	nfa.finals = j.at("finals").get<std::vector<std::size_t>>();
	return nfa;
}

std::string export_dot(const PartialNfa& nfa, const Context& ctx) {
	std::ostringstream os;
	std::set<std::size_t> init(nfa.initials.begin(), nfa.initials.end());
	std::set<std::size_t> fin(nfa.finals.begin(), nfa.finals.end());
	os << "digraph edtol {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
	for (std::size_t i = 0; i < nfa.states.size(); ++i) {
		os << "  s" << i << " [label=\"" << dot_escape(ctx.show_compact(nfa.states[i].W)) << "\"";
		if (fin.count(i)) os << ", peripheries=2";
		if (init.count(i)) os << ", style=bold";
		os << "];\n";
	}
	for (const NfaEdge& e : nfa.edges)
		os << "  s" << e.src << " -> s" << e.dst << " [label=\"" << dot_escape(edge_summary(e, ctx)) << "\"];\n";
	os << "}\n";
	return os.str();
}

} // namespace wordeq
