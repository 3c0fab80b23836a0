#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wordeq/solve.hpp"

using namespace wordeq;

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitParse = 3;
constexpr int kExitError = 4;

std::string read_input(const std::string& path) {
	if (path == "-") {
		std::ostringstream ss;
		ss << std::cin.rdbuf();
		return ss.str();
	}
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot write " + path);
	out << text;
}

std::string tuple_line(const Universe& uni, const Tuple& t) {
	std::string s;
	for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "#" : "") + uni.show(t[i], "");
	return s;
}

int exit_for(Status s) {
	switch (s) {
	case Status::Sat: return kExitSat;
	case Status::Unsat: return kExitUnsat;
	case Status::Unknown: return kExitUnknown;
	}
	return kExitError;
}

std::string letter_set(const Universe& uni, const std::vector<Sym>& xs) {
	std::string s = "{";
	for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + uni.name(xs[i]);
	return s + "}";
}

int cmd_solve(const std::string& file, const SolveOptions& opt, const std::string& json_out, const std::string& dot_out) {
	Problem p = parse_problem(read_input(file));
	Solved s = solve(p, opt);
	std::size_t tstates = 0, tedges = 0;
	for (auto& b : s.branches) {
		tstates += b.trimmed.states.size();
		tedges += b.trimmed.edges.size();
	}
	std::cout << status_name(s.status) << "\n";
	std::cout << "class: " << class_name(s.cls.kind) << (s.cls.exact ? "" : " (lower bound)") << "\n";
	std::cout << "status: " << (s.complete ? "complete" : "capped") << "\n";
	std::cout << "branches: " << s.branches.size() << "\n";
	std::cout << "states: " << s.states << " (trimmed " << tstates << ")\n";
	std::cout << "edges: " << s.edges << " (trimmed " << tedges << ")\n";
	if (s.violations) std::cout << "violations: " << s.violations << "\n";
	if (!json_out.empty()) write_file(json_out, export_json(s));
	if (!dot_out.empty()) write_file(dot_out, export_dot(s));
	return s.violations ? kExitError : exit_for(s.status);
}

int cmd_enumerate(const std::string& file, const SolveOptions& opt, std::size_t max_len, std::size_t max_paths) {
	Problem p = parse_problem(read_input(file));
	Solved s = solve(p, opt);
	Listing l = enumerate(s, max_len);
	std::size_t shown = 0;
	for (const Tuple& t : l.tuples) {
		if (max_paths && shown == max_paths) break;
		std::cout << tuple_line(p.uni, t) << "\n";
		++shown;
	}
	if (l.truncated) std::cerr << "warning: enumeration stopped at its step limit\n";
	if (s.status == Status::Unknown) std::cerr << "warning: search capped, listing may be incomplete\n";
	return exit_for(s.status);
}

int cmd_check(const std::string& file, const std::string& assign) {
	Problem p = parse_problem(read_input(file));
	Assignment sigma = parse_assignment(p, assign);
	CheckResult r = check_assignment(p, sigma);
	std::cout << (r.ok ? "OK" : "FAIL") << "\n";
	for (auto& [l, rt] : r.evaluated)
		std::cout << "  " << format_word(p.uni, l) << (l == rt ? " = " : " != ") << format_word(p.uni, rt) << "\n";
	return r.ok ? 0 : 1;
}

int cmd_trace(const std::string& file, const std::string& assign) {
	Problem p = parse_problem(read_input(file));
	if (p.mode != Mode::Monoid) throw std::runtime_error("trace works on monoid problems");
	Assignment sigma = parse_assignment(p, assign);
	Context ctx = monoid_context(p);
	WitnessTrace t = witness_trace(ctx, sigma);
	const Universe& uni = p.uni;
	std::cout << "initial: " << show_state(t.initial, ctx) << "\n";
	std::size_t block = 0, pair = 0;
	std::string last_phase;
	for (std::size_t i = 0; i < t.steps.size(); ++i) {
		const TraceStep& st = t.steps[i];
		// milestones are reported where their phase ends
		if (last_phase == "block" && st.phase != "block" && block < t.blocks.size()) {
			const BlockMilestone& m = t.blocks[block++];
			std::cout << "  block compression:\n";
			for (auto& [b, ls] : m.lambda) {
				std::cout << "    Lambda_" << uni.name(b) << " = {";
				std::size_t k = 0;
				for (auto l : ls) std::cout << (k++ ? "," : "") << l;
				std::cout << "}\n";
			}
			for (auto& [b, xs] : m.crossing) std::cout << "    X_" << uni.name(b) << " = " << letter_set(uni, {xs.begin(), xs.end()}) << "\n";
			std::cout << "    squares left: " << (m.squares_left ? "yes" : "no") << "\n";
		}
		if (last_phase == "pair" && st.phase != "pair" && pair < t.pairs.size()) {
			const PairMilestone& m = t.pairs[pair++];
			std::cout << "  pair compression:\n";
			for (auto& L : m.maximal_L) std::cout << "    maximal L = " << letter_set(uni, L) << "\n";
			std::cout << "    chosen L = " << letter_set(uni, m.chosen_L) << "\n";
			for (auto& [c, w] : m.alpha)
				if (c == pos_rep(c)) std::cout << "    alpha(" << uni.name(c) << ") = " << format_word(uni, w) << "\n";
		}
		last_phase = st.phase;
		std::cout << i + 1 << ". [" << st.phase << "] " << edge_kind_name(st.kind) << " " << st.description
		          << (st.forward_ok ? "  forward ok" : "  FORWARD FAILED") << "\n";
		std::cout << "   W = " << show_state(st.state, ctx) << "\n";
	}
	if (!t.ok) {
		std::cout << "FAIL: " << (t.error.empty() ? "trace did not reproduce the solution" : t.error) << "\n";
		return 1;
	}
	std::cout << "recovered:";
	for (std::size_t i = 0; i < t.solution.size(); ++i)
		std::cout << " " << uni.name(ctx.xinit[i]) << "=" << format_word(uni, t.solution[i]);
	std::cout << "\nOK\n";
	return 0;
}

int cmd_oracle(const std::string& file, std::size_t max_len, std::size_t budget) {
	Problem p = parse_problem(read_input(file));
	OracleQuery q;
	q.equations = p.equations;
	q.vars = p.vars;
	q.mode = p.mode;
	q.max_len = max_len;
	q.budget = budget;
	auto sols = brute_solutions(p.uni, q);
	for (const Tuple& t : sols) std::cout << tuple_line(p.uni, t) << "\n";
	return sols.empty() ? kExitUnsat : kExitSat;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"wordeq: word equations to EDT0L descriptions"};
	app.require_subcommand(1);

	std::string file, json_out, dot_out, assign;
	SolveOptions opt;
	std::size_t max_len = 3, max_paths = 0, budget = 50000000;

	auto add_search = [&](CLI::App* c) {
		c->add_option("file", file, "equation file, - for stdin")->required();
		c->add_option("--max-states", opt.max_states, "state cap per automaton");
		c->add_option("--max-depth", opt.max_depth, "depth cap of the search");
	};

	auto* solve_cmd = app.add_subcommand("solve", "build the automaton and classify the solution set");
	add_search(solve_cmd);
	solve_cmd->add_option("--emit-edtol", json_out, "write the trimmed automaton as JSON");
	solve_cmd->add_option("--emit-dot", dot_out, "write the trimmed automaton as Graphviz");

	auto* enum_cmd = app.add_subcommand("enumerate", "list solutions, one #-separated tuple per line");
	add_search(enum_cmd);
	enum_cmd->add_option("--max-len", max_len, "length bound per variable")->capture_default_str();
	enum_cmd->add_option("--max-paths", max_paths, "print at most this many tuples");

	auto* check_cmd = app.add_subcommand("check", "evaluate an assignment");
	check_cmd->add_option("file", file, "equation file, - for stdin")->required();
	check_cmd->add_option("--assign", assign, "e.g. X=ab,Y=b^a")->required();

	auto* trace_cmd = app.add_subcommand("trace", "follow a solution through the automaton");
	trace_cmd->add_option("file", file, "equation file, - for stdin")->required();
	trace_cmd->add_option("--assign", assign, "e.g. X=ab,Y=b^a")->required();

	auto* oracle_cmd = app.add_subcommand("oracle", "brute-force solutions up to a length bound");
	oracle_cmd->add_option("file", file, "equation file, - for stdin")->required();
	oracle_cmd->add_option("--max-len", max_len, "length bound per variable")->capture_default_str();
	oracle_cmd->add_option("--budget", budget, "assignments tried before giving up")->capture_default_str();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int rc = app.exit(e);
		return rc == 0 ? 0 : kExitError;
	}

	try {
		if (*solve_cmd) return cmd_solve(file, opt, json_out, dot_out);
		if (*enum_cmd) return cmd_enumerate(file, opt, max_len, max_paths);
		if (*check_cmd) return cmd_check(file, assign);
		if (*trace_cmd) return cmd_trace(file, assign);
		if (*oracle_cmd) return cmd_oracle(file, max_len, budget);
	} catch (const ParseError& e) {
		std::cerr << "parse error: " << e.what() << "\n";
		return kExitParse;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitError;
	}
	return kExitError;
}
