#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wordeq/equation.hpp"

namespace wordeq {

// Endomorphism of C*: identity on every constant not listed.
using Endo = std::map<Sym, Word>;

Word apply_endo(const Endo& h, const Word& w);
Word apply_endo(const Endo& h, Sym c);
bool is_identity(const Endo& h);
// extends h to the involution partners of its listed letters
Endo close_under_inv(const Endo& h);

// Variable substitution: every listed variable is mapped to a word over
// constants and variables; unlisted variables stay.
using Tau = std::map<Sym, Word>;
Word apply_tau(const Tau& tau, const Word& w);

struct SubstitutionSpec {
	enum Kind { Erase, Pop, Split };
	Kind kind = Erase;
	Sym x = 0;          // target variable
	Word u;             // Pop: popped prefix, 1 <= |u| <= 2
	Sym c = 0;          // Split: the type letter
	Sym xprime = 0;     // Split: fresh variable
	NF mu_rest = NF::one();   // new mu(x) after Pop/Split
	NF mu_prime = NF::one();  // Split: mu(xprime)
};

enum class EdgeKind { Substitution, Compression, Final };
const char* edge_kind_name(EdgeKind k);

// One transition V -> V'. label maps letters of V' to words over V; tau
// maps the variables of V to words over V' (substitutions only).
struct Step {
	EdgeKind kind = EdgeKind::Substitution;
	State dst;
	Endo label;
	Tau tau;
	std::string note;
};

class TransitionError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

Step apply_substitution(const State& v, const SubstitutionSpec& spec);

// Compression with the explicit target word: checks W = h(W') and the
// structural conditions, throws TransitionError otherwise.
Step compress(const State& v, const Word& w_new, const std::vector<Sym>& b_new, const TypeMap& theta_new,
              const std::map<Sym, NF>& mu_new, const Endo& h, const Context& ctx);

// Replaces all factors ab by c and inv(b)inv(a) by inv(c).
Step compress_pair(const State& v, Sym a, Sym b, Sym c, const Context& ctx);

// Removes letters of B \ A not in keep; identity label.
Step reduce_alphabet(const State& v, const std::vector<Sym>& keep, const Context& ctx);

Step final_compress(const State& v, const Context& ctx);

bool validate_edge(const State& src, const State& dst, const Step& step, const Context& ctx, std::string* why = nullptr);

// alpha maps letters of src to words over A; identity on A.
bool check_forward(const State& src, const State& dst, const Step& step, const Assignment& sigma_src,
                   const Assignment& sigma_dst, const Endo& alpha);

// Rewrites a step after the destination was renamed canonically.
void rename_step_dst(Step& step, const Canonical& canon);

} // namespace wordeq
