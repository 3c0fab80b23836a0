#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wordeq {

// Symbols are dense integers. Constants: # is 0, then involution pairs
// (1,2), (3,4), ...; the first |A+| pairs are the input letters. Variables
// live in a disjoint range starting at kVarBase, paired as (base+2i, base+2i+1).
using Sym = std::int32_t;
using Word = std::vector<Sym>;

inline constexpr Sym kHash = 0;
inline constexpr Sym kVarBase = 1 << 24;

inline constexpr bool is_var(Sym s) { return s >= kVarBase; }
inline constexpr bool is_const(Sym s) { return s < kVarBase; }

inline constexpr Sym inv(Sym s) {
	if (s == kHash) return s;
	if (is_var(s)) return kVarBase + ((s - kVarBase) ^ 1);
	return ((s - 1) ^ 1) + 1;
}

// the representative of {s, inv(s)} with the smaller index
inline constexpr Sym pos_rep(Sym s) { return s <= inv(s) ? s : inv(s); }

inline constexpr Sym const_pair(int i) { return 2 * i + 1; }
inline constexpr Sym var_pair(int i) { return kVarBase + 2 * i; }
inline constexpr int const_pair_index(Sym s) { return (s - 1) / 2; }
inline constexpr int var_pair_index(Sym s) { return (s - kVarBase) / 2; }

Word inv(const Word& w);

// Element of N_F = {0,1} u (A± x A±).
struct NF {
	enum Tag : std::uint8_t { Zero = 0, One = 1, Pair = 2 };
	Tag tag = One;
	Sym a = 0;
	Sym b = 0;

	static NF zero() { return {Zero, 0, 0}; }
	static NF one() { return {One, 0, 0}; }
	static NF pair(Sym x, Sym y) { return {Pair, x, y}; }

	bool is_zero() const { return tag == Zero; }
	bool is_one() const { return tag == One; }
	bool is_pair() const { return tag == Pair; }

	auto operator<=>(const NF&) const = default;
	bool operator==(const NF&) const = default;
};

NF nf_mul(NF u, NF v);
NF nf_inv(NF u);
NF mu0(Sym a);
NF mu0_word(const Word& w);
bool is_reduced(const Word& w);

// every element of N_F over the given positive letters, in a fixed order
std::vector<NF> nf_elements(int num_letters);

class Universe {
public:
	Universe() = default;
	explicit Universe(std::vector<std::string> letters);

	int num_letters() const { return static_cast<int>(letters_.size()); }
	// |A| = |A±| + 1
	int alphabet_size() const { return 2 * num_letters() + 1; }
	bool in_A(Sym s) const { return is_const(s) && s <= 2 * num_letters(); }
	std::vector<Sym> A() const;
	std::vector<Sym> A_pm() const;

	Sym letter(int i) const { return const_pair(i); }
	int find_letter(const std::string& name) const;
	const std::vector<std::string>& letters() const { return letters_; }

	// registers a named variable pair and returns its positive member
	Sym add_var(const std::string& name);
	int find_var(const std::string& name) const;
	int num_named_vars() const { return static_cast<int>(var_names_.size()); }

	std::string name(Sym s) const;
	std::string show(const Word& w, const char* sep = " ") const;

	// pool capacities: |C| = kappa * n, |Omega| = 6n
	void set_pools(std::size_t n, std::size_t kappa);
	std::size_t input_size() const { return n_; }
	std::size_t const_capacity() const { return const_cap_; }
	std::size_t var_capacity() const { return var_cap_; }

private:
	std::vector<std::string> letters_;
	std::vector<std::string> var_names_;
	std::size_t n_ = 0;
	std::size_t const_cap_ = 0;
	std::size_t var_cap_ = 0;
};

class PoolExhausted : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Deterministic allocator handing out involution pairs above a watermark.
class FreshAllocator {
public:
	FreshAllocator(const Universe& u, Sym next_const, Sym next_var);
	// returns positive members; the partner is inv()
	std::vector<Sym> letters(std::size_t count);
	std::vector<Sym> variables(std::size_t count);
	Sym next_const() const { return next_const_; }
	Sym next_var() const { return next_var_; }

private:
	const Universe* u_;
	Sym next_const_;
	Sym next_var_;
};

} // namespace wordeq
