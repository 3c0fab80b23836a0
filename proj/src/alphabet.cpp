#include "wordeq/alphabet.hpp"

#include <algorithm>

namespace wordeq {

Word inv(const Word& w) {
	Word r(w.rbegin(), w.rend());
	for (auto& s : r) s = inv(s);
	return r;
}

NF nf_mul(NF u, NF v) {
	if (u.is_zero() || v.is_zero()) return NF::zero();
	if (u.is_one()) return v;
	if (v.is_one()) return u;
	if (u.b == inv(v.a)) return NF::zero();
	return NF::pair(u.a, v.b);
}

NF nf_inv(NF u) {
	if (!u.is_pair()) return u;
	return NF::pair(inv(u.b), inv(u.a));
}

NF mu0(Sym a) {
	if (a == kHash) return NF::zero();
	return NF::pair(a, a);
}

NF mu0_word(const Word& w) {
	NF r = NF::one();
	for (Sym s : w) r = nf_mul(r, mu0(s));
	return r;
}

bool is_reduced(const Word& w) {
	for (std::size_t i = 1; i < w.size(); ++i)
		if (w[i] == inv(w[i - 1]) && w[i] != kHash) return false;
	return true;
}

std::vector<NF> nf_elements(int num_letters) {
	std::vector<NF> out{NF::zero(), NF::one()};
	for (Sym x = 1; x <= 2 * num_letters; ++x)
		for (Sym y = 1; y <= 2 * num_letters; ++y) out.push_back(NF::pair(x, y));
	return out;
}

Universe::Universe(std::vector<std::string> letters) : letters_(std::move(letters)) {}

std::vector<Sym> Universe::A() const {
	std::vector<Sym> r{kHash};
	for (Sym s = 1; s <= 2 * num_letters(); ++s) r.push_back(s);
	return r;
}

std::vector<Sym> Universe::A_pm() const {
	std::vector<Sym> r;
	for (Sym s = 1; s <= 2 * num_letters(); ++s) r.push_back(s);
	return r;
}

int Universe::find_letter(const std::string& name) const {
	auto it = std::find(letters_.begin(), letters_.end(), name);
	return it == letters_.end() ? -1 : static_cast<int>(it - letters_.begin());
}

Sym Universe::add_var(const std::string& name) {
	var_names_.push_back(name);
	return var_pair(static_cast<int>(var_names_.size()) - 1);
}

int Universe::find_var(const std::string& name) const {
	auto it = std::find(var_names_.begin(), var_names_.end(), name);
	return it == var_names_.end() ? -1 : static_cast<int>(it - var_names_.begin());
}

std::string Universe::name(Sym s) const {
	if (s == kHash) return "#";
	bool neg = s != pos_rep(s);
	std::string base;
	if (is_var(s)) {
		int i = var_pair_index(s);
		base = i < num_named_vars() ? var_names_[i] : "Z" + std::to_string(i - num_named_vars() + 1);
	} else {
		int i = const_pair_index(s);
		base = i < num_letters() ? letters_[i] : "c" + std::to_string(i - num_letters() + 1);
	}
	return neg ? base + "^" : base;
}

std::string Universe::show(const Word& w, const char* sep) const {
	std::string out;
	for (std::size_t i = 0; i < w.size(); ++i) {
		if (i) out += sep;
		out += name(w[i]);
	}
	return out;
}

void Universe::set_pools(std::size_t n, std::size_t kappa) {
	n_ = n;
	const_cap_ = kappa * n;
	var_cap_ = 6 * n;
}

FreshAllocator::FreshAllocator(const Universe& u, Sym next_const, Sym next_var)
	: u_(&u), next_const_(next_const), next_var_(next_var) {
	if (next_const_ % 2 == 0) ++next_const_;
	if ((next_var_ - kVarBase) % 2) ++next_var_;
}

std::vector<Sym> FreshAllocator::letters(std::size_t count) {
	std::vector<Sym> r;
	for (std::size_t i = 0; i < count; ++i) {
		if (u_->const_capacity() && static_cast<std::size_t>(next_const_ + 1) >= u_->const_capacity())
			throw PoolExhausted("constant pool exhausted");
		r.push_back(next_const_);
		next_const_ += 2;
	}
	return r;
}

std::vector<Sym> FreshAllocator::variables(std::size_t count) {
	std::vector<Sym> r;
	for (std::size_t i = 0; i < count; ++i) {
		if (u_->var_capacity() && static_cast<std::size_t>(next_var_ - kVarBase + 1) >= u_->var_capacity())
			throw PoolExhausted("variable pool exhausted");
		r.push_back(next_var_);
		next_var_ += 2;
	}
	return r;
}

} // namespace wordeq
