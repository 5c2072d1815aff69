#include "gtbound/bell_poly.hpp"

#include "gtbound/error.hpp"

#include <functional>
#include <sstream>

namespace gtbound {

namespace {

void check_nk(unsigned n, unsigned k, unsigned max_n) {
  if (k == 0 || k > n) {
    throw DomainError("partition arguments require 1 <= k <= n (got n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
  if (n > max_n) {
    throw DomainError("n=" + std::to_string(n) + " exceeds the enumeration cap " +
                      std::to_string(max_n));
  }
}

}  // namespace

void SymbolicPolynomial::check_arity(const Exponents& e) const {
  if (e.size() != arity_) throw DomainError("exponent vector arity mismatch");
}

void SymbolicPolynomial::add_term(const Exponents& e, const Rational& c) {
  check_arity(e);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational SymbolicPolynomial::coefficient(const Exponents& e) const {
  check_arity(e);
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational SymbolicPolynomial::evaluate(std::span<const Rational> x) const {
  if (x.size() != arity_) throw DomainError("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < arity_; ++i) {
      for (unsigned p = 0; p < e[i]; ++p) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

SymbolicPolynomial SymbolicPolynomial::shifted(std::size_t shift, std::size_t new_arity) const {
  if (arity_ + shift > new_arity) throw DomainError("shifted arity too small");
  SymbolicPolynomial out(new_arity);
  for (const auto& [e, c] : terms_) {
    Exponents f(new_arity, 0);
    for (std::size_t i = 0; i < arity_; ++i) f[i + shift] = e[i];
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

SymbolicPolynomial& SymbolicPolynomial::operator+=(const SymbolicPolynomial& rhs) {
  if (rhs.arity_ != arity_) throw DomainError("polynomial arity mismatch");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

SymbolicPolynomial& SymbolicPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

SymbolicPolynomial& SymbolicPolynomial::multiply_monomial(std::size_t var, unsigned power) {
  if (var == 0 || var > arity_) throw DomainError("variable index out of range");
  std::map<Exponents, Rational> moved;
  for (auto& [e, c] : terms_) {
    Exponents f = e;
    f[var - 1] += power;
    moved.emplace(std::move(f), std::move(c));
  }
  terms_ = std::move(moved);
  return *this;
}

std::string SymbolicPolynomial::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;

    bool constant = true;
    for (unsigned p : e) constant = constant && p == 0;
    bool wrote = false;
    if (mag != 1 || constant) {
      out << gtbound::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << "*";
      out << var << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
      wrote = true;
    }
  }
  return out.str();
}

std::vector<MultiIndex> partitions(unsigned n, unsigned k, unsigned max_n) {
  check_nk(n, k, max_n);
  const unsigned len = n + 1 - k;
  std::vector<MultiIndex> out;
  std::vector<unsigned> nu(len, 0);

  // Assign nu_1, nu_2, ... in turn, largest multiplicity first, so output is
  // in descending lexicographic order. `parts`/`sum` are what remains.
  std::function<void(unsigned, unsigned, unsigned)> descend = [&](unsigned part, unsigned parts,
                                                                  unsigned sum) {
    if (parts == 0) {
      if (sum == 0) out.push_back(MultiIndex{nu});
      return;
    }
    if (part > len) return;
    unsigned most = std::min(parts, sum / part);
    for (unsigned c = most + 1; c-- > 0;) {
      unsigned r = parts - c;
      unsigned s = sum - c * part;
      // remaining r parts must each lie in [part+1, len]
      if (r * (part + 1) > s && r > 0) continue;
      if (s > r * len) continue;
      nu[part - 1] = c;
      descend(part + 1, r, s);
      nu[part - 1] = 0;
    }
  };
  descend(1, k, n);
  return out;
}

Rational multinomial_weight(const MultiIndex& m) {
  unsigned k = 0;
  Rational w = 1;
  for (unsigned v : m.nu) {
    k += v;
    w /= factorial(v);
  }
  return w * factorial(k);
}

Rational bell_ordinary(unsigned n, unsigned k, std::span<const Rational> x, unsigned max_n) {
  check_nk(n, k, max_n);
  if (x.size() != n + 1 - k) {
    throw DomainError("bell_ordinary expects " + std::to_string(n + 1 - k) + " arguments, got " +
                      std::to_string(x.size()));
  }
  Rational sum = 0;
  for (const auto& m : partitions(n, k, max_n)) {
    Rational term = multinomial_weight(m);
    for (std::size_t i = 0; i < m.nu.size(); ++i) {
      for (unsigned p = 0; p < m.nu[i]; ++p) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

SymbolicPolynomial bell_symbolic(unsigned n, unsigned k, unsigned max_n) {
  check_nk(n, k, max_n);
  SymbolicPolynomial poly(n + 1 - k);
  for (const auto& m : partitions(n, k, max_n)) poly.add_term(m.nu, multinomial_weight(m));
  return poly;
}

}  // namespace gtbound
