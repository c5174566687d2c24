#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilb/rings.hpp"

// Truncated multivariate formal power series, exact coefficients, truncation by
// total degree. A series knows its variable set (drawn from {x, y, u, a}, kept in
// that canonical order) and a cap N: coefficients of total degree <= N are exact,
// everything above is unknown and never stored. Arithmetic propagates caps so that
// a stored coefficient is always trustworthy: sums and products carry the min of the
// operand caps, a derivative drops the cap by one, multiplying by a bare variable
// raises it by one.

namespace hilb {

inline int var_rank(char v) {
  switch (v) {
    case 'x': return 0;
    case 'y': return 1;
    case 'u': return 2;
    case 'a': return 3;
    default: throw std::invalid_argument(std::string("series: unknown variable '") + v + "'");
  }
}

template <typename R>
class Series {
 public:
  using Key = std::vector<int>;

  struct GradedLex {
    bool operator()(const Key& p, const Key& q) const {
      int dp = std::accumulate(p.begin(), p.end(), 0);
      int dq = std::accumulate(q.begin(), q.end(), 0);
      if (dp != dq) return dp < dq;
      return p < q;
    }
  };
  using Map = std::map<Key, R, GradedLex>;

  Series(std::vector<char> vars, int cap) : vars_(std::move(vars)), cap_(cap) {
    if (cap_ < 0) throw std::invalid_argument("series: negative cap");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      var_rank(vars_[i]);
      if (i > 0 && var_rank(vars_[i - 1]) >= var_rank(vars_[i]))
        throw std::invalid_argument("series: variables must be distinct and in canonical order");
    }
  }

  static Series constant(std::vector<char> vars, int cap, const R& c) {
    Series s(std::move(vars), cap);
    s.add_term(Key(s.vars_.size(), 0), c);
    return s;
  }
  static Series one(std::vector<char> vars, int cap) {
    return constant(std::move(vars), cap, ring_one<R>());
  }
  static Series variable(std::vector<char> vars, int cap, char v) {
    Series s(std::move(vars), cap);
    Key k(s.vars_.size(), 0);
    k[s.index_of(v)] = 1;
    s.add_term(std::move(k), ring_one<R>());
    return s;
  }

  const std::vector<char>& vars() const { return vars_; }
  int cap() const { return cap_; }
  const Map& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  int index_of(char v) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == v) return static_cast<int>(i);
    throw std::invalid_argument(std::string("series: variable '") + v + "' not present");
  }

  // Exact coefficient of a monomial; asking beyond the cap is an error, not a zero.
  R coeff(const Key& key) const {
    if (key.size() != vars_.size()) throw std::invalid_argument("series: exponent arity mismatch");
    for (int e : key)
      if (e < 0) throw std::invalid_argument("series: negative exponent");
    if (total(key) > cap_) throw std::out_of_range("series: coefficient beyond truncation cap");
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? R{} : it->second;
  }
  // univariate / bivariate conveniences
  R coeff1(int k) const { return coeff(Key{k}); }
  R coeff2(int k, int l) const { return coeff(Key{k, l}); }

  R constant_term() const { return coeffs_.empty() ? R{} : coeff(Key(vars_.size(), 0)); }

  void set_coeff(const Key& key, const R& c) {
    if (key.size() != vars_.size()) throw std::invalid_argument("series: exponent arity mismatch");
    if (total(key) > cap_) throw std::out_of_range("series: coefficient beyond truncation cap");
    if (ring_is_zero(c))
      coeffs_.erase(key);
    else
      coeffs_[key] = c;
  }

  // Add c * monomial(key), silently dropping anything beyond the cap.
  void add_term(Key key, const R& c) {
    if (ring_is_zero(c) || total(key) > cap_) return;
    auto it = coeffs_.find(key);
    if (it == coeffs_.end()) {
      coeffs_.emplace(std::move(key), c);
    } else {
      it->second = it->second + c;
      if (ring_is_zero(it->second)) coeffs_.erase(it);
    }
  }

  friend Series operator+(const Series& s, const Series& t) {
    Series r = s.shrunk_to(std::min(s.cap_, t.cap_), t);
    for (const auto& [k, c] : t.coeffs_) r.add_term(k, c);
    return r;
  }
  friend Series operator-(const Series& s, const Series& t) {
    Series r = s.shrunk_to(std::min(s.cap_, t.cap_), t);
    for (const auto& [k, c] : t.coeffs_) r.add_term(k, -c);
    return r;
  }
  friend Series operator-(const Series& s) {
    Series r(s.vars_, s.cap_);
    for (const auto& [k, c] : s.coeffs_) r.coeffs_.emplace(k, -c);
    return r;
  }
  friend Series operator*(const Series& s, const Series& t) {
    s.require_same_vars(t);
    Series r(s.vars_, std::min(s.cap_, t.cap_));
    for (const auto& [ks, cs] : s.coeffs_) {
      int ds = total(ks);
      if (ds > r.cap_) break;  // graded order: the rest is no smaller
      for (const auto& [kt, ct] : t.coeffs_) {
        if (ds + total(kt) > r.cap_) break;
        Key k(ks.size());
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = ks[i] + kt[i];
        r.add_term(std::move(k), cs * ct);
      }
    }
    return r;
  }
  friend Series operator*(const Series& s, const R& c) {
    Series r(s.vars_, s.cap_);
    for (const auto& [k, v] : s.coeffs_) r.add_term(k, v * c);
    return r;
  }
  friend Series operator*(const R& c, const Series& s) { return s * c; }

  friend bool operator==(const Series& s, const Series& t) {
    return s.vars_ == t.vars_ && s.cap_ == t.cap_ && s.coeffs_ == t.coeffs_;
  }
  friend bool operator!=(const Series& s, const Series& t) { return !(s == t); }

  static int total(const Key& k) { return std::accumulate(k.begin(), k.end(), 0); }

 private:
  Series shrunk_to(int cap, const Series& other) const {
    require_same_vars(other);
    Series r(vars_, cap);
    for (const auto& [k, c] : coeffs_) r.add_term(k, c);
    return r;
  }
  void require_same_vars(const Series& other) const {
    if (vars_ != other.vars_)
      throw std::invalid_argument("series: operands live in different variable sets");
  }

  std::vector<char> vars_;
  int cap_;
  Map coeffs_;
};

template <typename R>
Series<R> scale(const Series<R>& s, const Rat& q) {
  return s * ring_cast<R>(q);
}

template <typename R>
Series<R> div_int(const Series<R>& s, long long n) {
  Series<R> r(s.vars(), s.cap());
  for (const auto& [k, c] : s.terms()) r.add_term(k, ring_div_int(c, n));
  return r;
}

// Drop knowledge: lower the cap and forget higher terms.
template <typename R>
Series<R> truncated(const Series<R>& s, int cap) {
  if (cap > s.cap()) throw std::invalid_argument("truncated: cap may only decrease");
  Series<R> r(s.vars(), cap);
  for (const auto& [k, c] : s.terms()) {
    if (Series<R>::total(k) > cap) break;
    r.add_term(k, c);
  }
  return r;
}

// Assert knowledge: the caller vouches that s is exact to the new cap (e.g. s is a
// polynomial identity, not a truncation). Use sparingly.
template <typename R>
Series<R> with_cap(const Series<R>& s, int cap) {
  Series<R> r(s.vars(), cap);
  for (const auto& [k, c] : s.terms()) r.add_term(k, c);
  return r;
}

// Reinterpret in a superset variable set.
template <typename R>
Series<R> embed(const Series<R>& s, const std::vector<char>& vars) {
  std::vector<int> pos(s.vars().size());
  for (std::size_t i = 0; i < s.vars().size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), s.vars()[i]);
    if (it == vars.end()) throw std::invalid_argument("embed: target lacks a source variable");
    pos[i] = static_cast<int>(it - vars.begin());
  }
  Series<R> r(vars, s.cap());
  for (const auto& [k, c] : s.terms()) {
    typename Series<R>::Key key(vars.size(), 0);
    for (std::size_t i = 0; i < k.size(); ++i) key[pos[i]] = k[i];
    r.add_term(std::move(key), c);
  }
  return r;
}

template <typename R>
Series<R> derivative(const Series<R>& s, char v) {
  int vi = s.index_of(v);
  Series<R> r(s.vars(), s.cap() > 0 ? s.cap() - 1 : 0);
  for (const auto& [k, c] : s.terms()) {
    if (k[vi] == 0) continue;
    typename Series<R>::Key key = k;
    int e = key[vi]--;
    r.add_term(std::move(key), c * ring_cast<R>(Rat(e)));
  }
  return r;
}

template <typename R>
Series<R> set_var_zero(const Series<R>& s, char v) {
  int vi = s.index_of(v);
  Series<R> r(s.vars(), s.cap());
  for (const auto& [k, c] : s.terms())
    if (k[vi] == 0) r.add_term(k, c);
  return r;
}

template <typename R>
Series<R> negate_var(const Series<R>& s, char v) {
  int vi = s.index_of(v);
  Series<R> r(s.vars(), s.cap());
  for (const auto& [k, c] : s.terms()) r.add_term(k, (k[vi] % 2 == 0) ? c : -c);
  return r;
}

// Divide by one variable. Every stored term must be divisible; the cap drops by
// one since the old cap says nothing about the new top degree.
template <typename R>
Series<R> shift_down(const Series<R>& s, char v) {
  int vi = s.index_of(v);
  Series<R> r(s.vars(), s.cap() > 0 ? s.cap() - 1 : 0);
  for (const auto& [k, c] : s.terms()) {
    if (k[vi] == 0) throw std::domain_error("shift_down: series not divisible by variable");
    typename Series<R>::Key key = k;
    --key[vi];
    r.add_term(std::move(key), c);
  }
  return r;
}

template <typename R>
Series<R> mul_by_var(const Series<R>& s, char v) {
  int vi = s.index_of(v);
  Series<R> r(s.vars(), s.cap() + 1);
  for (const auto& [k, c] : s.terms()) {
    typename Series<R>::Key key = k;
    ++key[vi];
    r.add_term(std::move(key), c);
  }
  return r;
}

namespace detail {
inline std::vector<char> merge_vars(const std::vector<char>& a, const std::vector<char>& b) {
  std::vector<char> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end(), [](char p, char q) { return var_rank(p) < var_rank(q); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}
}  // namespace detail

// Substitute t (zero constant term) for the variable v. The result lives in the
// union of the remaining variables of s and the variables of t, with cap
// min(s.cap, t.cap): errors of t enter at degree >= t.cap + 1 because t has
// positive valuation, and unknown terms of s enter at degree >= s.cap + 1.
template <typename R>
Series<R> substitute(const Series<R>& s, char v, const Series<R>& t) {
  int vi = s.index_of(v);
  if (!ring_is_zero(t.constant_term()))
    throw std::domain_error("substitute: replacement needs zero constant term");

  std::vector<char> rest;
  for (char c : s.vars())
    if (c != v) rest.push_back(c);
  std::vector<char> rvars = detail::merge_vars(rest, t.vars());
  int rcap = std::min(s.cap(), t.cap());

  std::vector<int> pos(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    auto it = std::find(rvars.begin(), rvars.end(), rest[i]);
    pos[i] = static_cast<int>(it - rvars.begin());
  }

  Series<R> t_emb = truncated(embed(t, rvars), rcap);
  std::vector<Series<R>> pw;
  pw.push_back(Series<R>::one(rvars, rcap));

  Series<R> result(rvars, rcap);
  for (const auto& [k, c] : s.terms()) {
    int e = k[vi];
    int rest_deg = Series<R>::total(k) - e;
    if (rest_deg + e > rcap) continue;  // t has valuation >= 1
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * t_emb);
    typename Series<R>::Key shift(rvars.size(), 0);
    for (std::size_t i = 0, j = 0; i < k.size(); ++i) {
      if (static_cast<int>(i) == vi) continue;
      shift[pos[j++]] = k[i];
    }
    for (const auto& [pk, pc] : pw[e].terms()) {
      typename Series<R>::Key key = pk;
      for (std::size_t i = 0; i < key.size(); ++i) key[i] += shift[i];
      result.add_term(std::move(key), pc * c);
    }
  }
  return result;
}

// Multiplicative inverse; the constant term must be a unit.
template <typename R>
Series<R> reciprocal(const Series<R>& s) {
  R c0 = s.constant_term();
  if (!ring_is_unit(c0)) throw std::domain_error("reciprocal: constant term is not a unit");
  R i0 = ring_invert(c0);
  Series<R> t = Series<R>::one(s.vars(), s.cap()) - s * i0;  // valuation >= 1
  Series<R> acc = Series<R>::one(s.vars(), s.cap());
  Series<R> p = acc;
  for (int k = 1; k <= s.cap(); ++k) {
    p = p * t;
    if (p.is_zero()) break;
    acc = acc + p;
  }
  return acc * i0;
}

// exp of a series with zero constant term.
template <typename R>
Series<R> exp_series(const Series<R>& s) {
  if (!ring_is_zero(s.constant_term()))
    throw std::domain_error("exp_series: argument needs zero constant term");
  Series<R> acc = Series<R>::one(s.vars(), s.cap());
  Series<R> term = acc;
  for (int k = 1; k <= s.cap(); ++k) {
    term = div_int(term * s, k);
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return acc;
}

// log of a series with constant term exactly one.
template <typename R>
Series<R> log_series(const Series<R>& s) {
  if (!(s.constant_term() == ring_one<R>()))
    throw std::domain_error("log_series: argument needs constant term one");
  Series<R> t = s - Series<R>::one(s.vars(), s.cap());
  Series<R> acc(s.vars(), s.cap());
  Series<R> p = Series<R>::one(s.vars(), s.cap());
  for (int k = 1; k <= s.cap(); ++k) {
    p = p * t;
    if (p.is_zero()) break;
    acc = acc + scale(div_int(p, k), Rat(k % 2 == 1 ? 1 : -1));
  }
  return acc;
}

// Compositional inverse of a univariate series with zero constant term and unit
// linear coefficient. Fixed-point iteration g <- x * u(g) with u = x / s glued
// from s; each pass is exact one degree further, so cap passes suffice.
template <typename R>
Series<R> compose_inverse(const Series<R>& s) {
  if (s.vars().size() != 1) throw std::invalid_argument("compose_inverse: univariate only");
  if (s.cap() < 1) throw std::invalid_argument("compose_inverse: cap too small");
  char v = s.vars()[0];
  if (!ring_is_zero(s.constant_term()))
    throw std::domain_error("compose_inverse: constant term must vanish");
  if (!ring_is_unit(s.coeff1(1)))
    throw std::domain_error("compose_inverse: linear coefficient must be a unit");
  Series<R> u = reciprocal(shift_down(s, v));  // cap - 1
  Series<R> g = Series<R>::variable(s.vars(), s.cap(), v);
  for (int pass = 0; pass < s.cap(); ++pass) {
    Series<R> next = mul_by_var(substitute(u, v, g), v);
    if (next == g) break;
    g = std::move(next);
  }
  return g;
}

// (g(x) - g(y)) / (x - y) for univariate g, written out in two named variables.
// Exact: x^k - y^k = (x - y) * sum_{i+j=k-1} x^i y^j.
template <typename R>
Series<R> divided_difference(const Series<R>& g, char vx = 'x', char vy = 'y') {
  if (g.vars().size() != 1) throw std::invalid_argument("divided_difference: univariate only");
  if (var_rank(vx) >= var_rank(vy))
    throw std::invalid_argument("divided_difference: output variables out of order");
  std::vector<char> rvars = {vx, vy};
  Series<R> r(rvars, g.cap() > 0 ? g.cap() - 1 : 0);
  for (const auto& [k, c] : g.terms()) {
    int e = k[0];
    if (e == 0) continue;
    for (int i = 0; i < e; ++i) r.add_term({i, e - 1 - i}, c);
  }
  return r;
}

template <typename R, typename F>
auto transform_coeffs(const Series<R>& s, F f) -> Series<decltype(f(std::declval<R>()))> {
  using R2 = decltype(f(std::declval<R>()));
  Series<R2> r(s.vars(), s.cap());
  for (const auto& [k, c] : s.terms()) r.add_term(k, f(c));
  return r;
}

template <typename R>
Series<R> series_cast(const Series<Rat>& s) {
  return transform_coeffs(s, [](const Rat& q) { return ring_cast<R>(q); });
}

inline std::string monomial_str(const std::vector<char>& vars, const std::vector<int>& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (key[i] > 1) out += "^" + std::to_string(key[i]);
  }
  return out;
}

template <typename R>
std::string to_string(const Series<R>& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : s.terms()) {
    std::string cs = ring_str(c);
    if (cs.find_first_of("+-", 1) != std::string::npos) cs = "(" + cs + ")";
    std::string mono = monomial_str(s.vars(), k);
    if (!out.empty()) out += " + ";
    out += mono.empty() ? cs : (cs == "1" ? mono : cs + "*" + mono);
  }
  return out;
}

}  // namespace hilb
