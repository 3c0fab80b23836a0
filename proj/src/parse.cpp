#include "wordeq/parse.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace wordeq {

ParseError::ParseError(int l, int c, const std::string& what)
	: std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what), line(l), column(c) {}

namespace {

bool ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) != 0; }
bool ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_'; }

std::string strip_comment(const std::string& line) {
	auto p = line.find("//");
	return p == std::string::npos ? line : line.substr(0, p);
}

// names declared after a key, with their columns
std::vector<std::pair<std::string, int>> names_in(const std::string& s, std::size_t from, int line) {
	std::vector<std::pair<std::string, int>> out;
	std::size_t i = from;
	while (i < s.size()) {
		if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') {
			++i;
			continue;
		}
		const int col = static_cast<int>(i) + 1;
		if (s[i] == '#') throw ParseError(line, col, "# is reserved");
		if (!ident_start(s[i])) throw ParseError(line, col, std::string("unexpected '") + s[i] + "'");
		std::size_t j = i;
		while (j < s.size() && ident_char(s[j])) ++j;
		out.emplace_back(s.substr(i, j - i), col);
		i = j;
	}
	return out;
}

} // namespace

Word parse_word(const Universe& uni, const std::string& text, bool allow_vars, int line, int column) {
	Word w;
	std::size_t i = 0;
	bool one = false;
	while (i < text.size()) {
		const char ch = text[i];
		const int col = column + static_cast<int>(i);
		if (std::isspace(static_cast<unsigned char>(ch))) {
			++i;
			continue;
		}
		if (ch == '#') throw ParseError(line, col, "# is reserved");
		if (ch == '1' && (i + 1 == text.size() || !ident_char(text[i + 1]))) {
			one = true;
			++i;
			continue;
		}
		// longest declared name starting here
		std::size_t best = 0;
		Sym sym = 0;
		for (int k = 0; k < uni.num_letters(); ++k) {
			const std::string& n = uni.letters()[static_cast<std::size_t>(k)];
			if (n.size() > best && text.compare(i, n.size(), n) == 0) {
				best = n.size();
				sym = uni.letter(k);
			}
		}
		if (allow_vars)
			for (int k = 0; k < uni.num_named_vars(); ++k) {
				std::string n = uni.name(var_pair(k));
				if (n.size() > best && text.compare(i, n.size(), n) == 0) {
					best = n.size();
					sym = var_pair(k);
				}
			}
		if (!best) {
			std::size_t j = i;
			while (j < text.size() && ident_char(text[j])) ++j;
			std::string tok = j > i ? text.substr(i, j - i) : text.substr(i, 1);
			throw ParseError(line, col, "unknown symbol '" + tok + "'");
		}
		i += best;
		if (i < text.size() && text[i] == '^') {
			sym = inv(sym);
			++i;
		}
		w.push_back(sym);
	}
	if (one && !w.empty()) throw ParseError(line, column, "1 stands for the empty word and cannot be combined");
	return w;
}

Problem parse_problem(const std::string& text) {
	Problem p;
	std::vector<std::string> letters;
	std::vector<std::pair<std::string, int>> vars;
	int vars_line = 0;
	bool have_letters = false, have_vars = false, universe_ready = false;
	std::set<std::string> seen;

	auto build = [&](int line) {
		if (universe_ready) return;
		if (!have_letters) throw ParseError(line, 1, "letters must be declared before the equations");
		p.uni = Universe(letters);
		for (auto& [n, col] : vars) {
			if (p.uni.find_letter(n) >= 0) throw ParseError(vars_line, col, "'" + n + "' is already a letter");
			p.vars.push_back(p.uni.add_var(n));
		}
		universe_ready = true;
	};

	std::istringstream in(text);
	std::string raw;
	int line = 0;
	while (std::getline(in, raw)) {
		++line;
		std::string s = strip_comment(raw);
		std::size_t b = s.find_first_not_of(" \t\r");
		if (b == std::string::npos) continue;
		std::size_t colon = s.find(':');
		std::string key;
		if (colon != std::string::npos) {
			key = s.substr(b, colon - b);
			while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
		}
		if (key == "mode") {
			auto ns = names_in(s, colon + 1, line);
			if (ns.size() != 1 || (ns[0].first != "monoid" && ns[0].first != "group"))
				throw ParseError(line, static_cast<int>(colon) + 2, "mode is monoid or group");
			p.mode = ns[0].first == "group" ? Mode::Group : Mode::Monoid;
		} else if (key == "letters" || key == "vars") {
			if (universe_ready) throw ParseError(line, static_cast<int>(b) + 1, key + " must come before the equations");
			bool& flag = key == "letters" ? have_letters : have_vars;
			if (flag) throw ParseError(line, static_cast<int>(b) + 1, key + " declared twice");
			flag = true;
			for (auto& [n, col] : names_in(s, colon + 1, line)) {
				if (!seen.insert(n).second) throw ParseError(line, col, "'" + n + "' declared twice");
				if (key == "letters") letters.push_back(n);
				else vars.emplace_back(n, col);
			}
			if (key == "vars") vars_line = line;
		} else if (!key.empty() && s.find('=') > colon) {
			throw ParseError(line, static_cast<int>(b) + 1, "unknown key '" + key + "'");
		} else {
			build(line);
			std::size_t eq = s.find('=');
			if (eq == std::string::npos) throw ParseError(line, static_cast<int>(b) + 1, "expected an equation 'U = V'");
			if (s.find('=', eq + 1) != std::string::npos)
				throw ParseError(line, static_cast<int>(s.find('=', eq + 1)) + 1, "more than one '='");
			Word U = parse_word(p.uni, s.substr(0, eq), true, line, 1);
			Word V = parse_word(p.uni, s.substr(eq + 1), true, line, static_cast<int>(eq) + 2);
			p.equations.emplace_back(U, V);
		}
	}
	build(line + 1);
	if (p.equations.empty()) throw ParseError(line + 1, 1, "no equation given");
	if (p.mode == Mode::Group && p.equations.size() != 1)
		throw ParseError(line + 1, 1, "group mode takes a single equation");
	return p;
}

Assignment parse_assignment(const Problem& p, const std::string& text) {
	Assignment sigma;
	std::size_t i = 0;
	while (i <= text.size()) {
		std::size_t j = text.find(',', i);
		if (j == std::string::npos) j = text.size();
		std::string item = text.substr(i, j - i);
		const int col = static_cast<int>(i) + 1;
		std::size_t eq = item.find('=');
		if (eq == std::string::npos) throw ParseError(1, col, "expected NAME=word");
		std::string name = item.substr(0, eq);
		name.erase(0, name.find_first_not_of(' '));
		name.erase(name.find_last_not_of(' ') + 1);
		int k = p.uni.find_var(name);
		if (k < 0) throw ParseError(1, col, "unknown variable '" + name + "'");
		Word w = parse_word(p.uni, item.substr(eq + 1), false, 1, col + static_cast<int>(eq) + 1);
		if (!is_reduced(w)) throw ParseError(1, col, "the value of " + name + " is not reduced");
		if (!sigma.emplace(var_pair(k), w).second) throw ParseError(1, col, name + " assigned twice");
		i = j + 1;
	}
	for (Sym x : p.vars)
		if (!sigma.count(x)) throw ParseError(1, 1, "no value for " + p.uni.name(x));
	return sigma;
}

std::string format_word(const Universe& uni, const Word& w) { return w.empty() ? "1" : uni.show(w, ""); }

} // namespace wordeq
