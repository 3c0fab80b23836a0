#include "wordeq/solve.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace wordeq {

const char* status_name(Status s) {
	switch (s) {
	case Status::Sat: return "SAT";
	case Status::Unsat: return "UNSAT";
	case Status::Unknown: return "UNKNOWN";
	}
	return "?";
}

namespace {

Branch run(const Universe& uni, const Equation& eq, const std::vector<Sym>& vars, const SolveOptions& opt) {
	Branch b{make_context(uni, eq.first, eq.second, vars), {}, {}};
	SearchOptions so;
	so.max_states = opt.max_states;
	so.max_depth = opt.max_depth;
	so.check = opt.check;
	b.nfa = explore(b.ctx, so);
	b.trimmed = trim(b.nfa);
	return b;
}

} // namespace

Context monoid_context(const Problem& p) {
	if (p.mode != Mode::Monoid) throw EquationError("expected a monoid problem");
	Equation eq = encode_system(p.equations);
	return make_context(p.uni, eq.first, eq.second, p.vars);
}

Solved solve(Problem& p, const SolveOptions& opt) {
	Solved s;
	s.mode = p.mode;
	s.originals = p.vars.size();
	if (p.mode == Mode::Monoid) {
		s.branches.push_back(run(p.uni, encode_system(p.equations), p.vars, opt));
	} else {
		GroupEncoding enc = encode_group(p.uni, p.equations.front().first, p.equations.front().second, p.vars);
		for (const MonoidSystem& m : enc.branches) s.branches.push_back(run(p.uni, m.encoded, m.vars, opt));
	}

	bool any = false, infinite = false;
	for (const Branch& b : s.branches) {
		s.complete = s.complete && b.nfa.complete;
		s.states += b.nfa.states.size();
		s.edges += b.nfa.edges.size();
		s.violations += b.nfa.violations;
		if (!b.trimmed.states.empty()) {
			any = true;
			infinite = infinite || has_cycle(b.trimmed);
		}
	}
	s.status = any ? Status::Sat : s.complete ? Status::Unsat : Status::Unknown;
	s.cls.exact = s.complete || infinite; // a cycle on a trimmed path is never a cap artifact
	s.cls.kind = !any ? SolutionClass::Empty : infinite ? SolutionClass::Infinite : SolutionClass::Finite;
	return s;
}

Listing enumerate(const Solved& s, std::size_t max_len, std::size_t max_steps) {
	Listing out;
	std::set<Tuple> seen;
	for (const Branch& b : s.branches) {
		EnumLimits lim;
		lim.max_steps = max_steps;
		lim.max_len_each.assign(s.originals, max_len);
		// auxiliary variables of a group branch are bounded by the sides they stand for
		std::size_t uv = b.ctx.U.size() + b.ctx.V.size();
		lim.max_len = s.mode == Mode::Group ? max_len * uv + uv : max_len;
		Enumeration e = enumerate_solutions(b.trimmed, b.ctx, lim);
		out.truncated = out.truncated || e.truncated;
		for (Tuple& t : e.tuples) seen.insert(Tuple(t.begin(), t.begin() + static_cast<long>(s.originals)));
	}
	out.tuples.assign(seen.begin(), seen.end());
	std::sort(out.tuples.begin(), out.tuples.end(), tuple_less);
	return out;
}

CheckResult check_assignment(const Problem& p, const Assignment& sigma) {
	CheckResult r;
	for (const Equation& eq : p.equations) {
		Word l = apply_assignment(eq.first, sigma), rt = apply_assignment(eq.second, sigma);
		if (p.mode == Mode::Group) {
			l = free_reduce(l);
			rt = free_reduce(rt);
		}
		r.ok = r.ok && l == rt;
		r.evaluated.emplace_back(std::move(l), std::move(rt));
	}
	return r;
}

std::string export_json(const Solved& s) {
	if (s.branches.size() == 1) return export_json(s.branches.front().trimmed, s.branches.front().ctx);
	nlohmann::json j;
	j["format"] = "wordeq-edtol-union";
	j["version"] = 1;
	nlohmann::json parts = nlohmann::json::array();
	for (const Branch& b : s.branches) parts.push_back(nlohmann::json::parse(export_json(b.trimmed, b.ctx)));
	j["branches"] = parts;
	return j.dump(1) + "\n";
}

std::string export_dot(const Solved& s) {
	std::string out;
	for (const Branch& b : s.branches) out += export_dot(b.trimmed, b.ctx);
	return out;
}

} // namespace wordeq
