#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wordeq/solve.hpp"

namespace py = pybind11;
using namespace wordeq;

namespace {

std::vector<std::string> words(const Universe& uni, const Tuple& t) {
	std::vector<std::string> out;
	for (const Word& w : t) out.push_back(uni.show(w, ""));
	return out;
}

SolveOptions options(std::size_t max_states, std::size_t max_depth) {
	SolveOptions opt;
	opt.max_states = max_states;
	opt.max_depth = max_depth;
	return opt;
}

py::dict solve_py(const std::string& text, std::size_t max_states, std::size_t max_depth) {
	Problem p = parse_problem(text);
	Solved s = solve(p, options(max_states, max_depth));
	py::dict d;
	d["status"] = status_name(s.status);
	d["classification"] = class_name(s.cls.kind);
	d["exact"] = s.cls.exact;
	d["complete"] = s.complete;
	d["branches"] = s.branches.size();
	d["states"] = s.states;
	d["edges"] = s.edges;
	d["violations"] = s.violations;
	return d;
}

std::vector<std::vector<std::string>> enumerate_py(const std::string& text, std::size_t max_len, std::size_t max_states) {
	Problem p = parse_problem(text);
	Solved s = solve(p, options(max_states, 100000));
	std::vector<std::vector<std::string>> out;
	for (const Tuple& t : enumerate(s, max_len).tuples) out.push_back(words(p.uni, t));
	return out;
}

std::vector<std::vector<std::string>> oracle_py(const std::string& text, std::size_t max_len) {
	Problem p = parse_problem(text);
	OracleQuery q;
	q.equations = p.equations;
	q.vars = p.vars;
	q.mode = p.mode;
	q.max_len = max_len;
	std::vector<std::vector<std::string>> out;
	for (const Tuple& t : brute_solutions(p.uni, q)) out.push_back(words(p.uni, t));
	return out;
}

py::tuple check_py(const std::string& text, const std::string& assign) {
	Problem p = parse_problem(text);
	CheckResult r = check_assignment(p, parse_assignment(p, assign));
	py::list sides;
	for (auto& [l, rt] : r.evaluated) sides.append(py::make_tuple(format_word(p.uni, l), format_word(p.uni, rt)));
	return py::make_tuple(r.ok, sides);
}

py::dict trace_py(const std::string& text, const std::string& assign) {
	Problem p = parse_problem(text);
	Context ctx = monoid_context(p);
	WitnessTrace t = witness_trace(ctx, parse_assignment(p, assign));
	py::list steps;
	for (const TraceStep& st : t.steps) {
		py::dict d;
		d["phase"] = st.phase;
		d["kind"] = edge_kind_name(st.kind);
		d["description"] = st.description;
		d["W"] = show_state(st.state, ctx);
		d["forward_ok"] = st.forward_ok;
		steps.append(d);
	}
	py::list blocks;
	for (const BlockMilestone& m : t.blocks) {
		py::dict d, lam, cross;
		for (auto& [b, ls] : m.lambda) lam[py::str(p.uni.name(b))] = std::vector<std::size_t>(ls.begin(), ls.end());
		for (auto& [b, xs] : m.crossing) {
			std::vector<std::string> names;
			for (Sym x : xs) names.push_back(p.uni.name(x));
			cross[py::str(p.uni.name(b))] = names;
		}
		d["lambda"] = lam;
		d["crossing"] = cross;
		d["squares_left"] = m.squares_left;
		blocks.append(d);
	}
	py::dict d;
	d["ok"] = t.ok;
	d["error"] = t.error;
	d["steps"] = steps;
	d["blocks"] = blocks;
	std::vector<std::string> sol;
	for (const Word& w : t.solution) sol.push_back(p.uni.show(w, ""));
	d["solution"] = sol;
	return d;
}

std::string export_py(const std::string& text, std::size_t max_states) {
	Problem p = parse_problem(text);
	return export_json(solve(p, options(max_states, 100000)));
}

} // namespace

PYBIND11_MODULE(_wordeq, m) {
	m.doc() = "word equations over free monoids with involution and free groups";
	py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

	m.def("solve", &solve_py, py::arg("text"), py::arg("max_states") = 200000, py::arg("max_depth") = 100000,
	      "Status, classification and automaton size for an equation file.");
	m.def("enumerate", &enumerate_py, py::arg("text"), py::arg("max_len") = 3, py::arg("max_states") = 200000,
	      "Solution tuples with every component of length <= max_len.");
	m.def("oracle", &oracle_py, py::arg("text"), py::arg("max_len") = 3, "Brute-force solutions.");
	m.def("check", &check_py, py::arg("text"), py::arg("assign"), "(ok, [(lhs, rhs), ...]) for an assignment.");
	m.def("trace", &trace_py, py::arg("text"), py::arg("assign"), "Witness path of a solution.");
	m.def("export_json", &export_py, py::arg("text"), py::arg("max_states") = 200000, "Trimmed automaton as JSON.");
}
