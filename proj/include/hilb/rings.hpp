#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hilb/rational.hpp"

// Coefficient rings for the series engine. Three are supported:
//   Rat    exact rationals,
//   Dual   Q[eps]/(eps^2), used to differentiate a genus along a family,
//   PolyY  Q[y]/(y^{d+1}), truncated polynomials for parameter-carrying genera.
// The free functions ring_* below form the concept the series layer compiles
// against; an element is a unit iff its rational constant part is nonzero, and
// division by a nonzero integer is always defined.

namespace hilb {

struct Dual {
  Rat a;  // constant part
  Rat b;  // eps part

  Dual() = default;
  Dual(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
  explicit Dual(const Rat& a_) : a(a_) {}

  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }
};

inline Dual dual_eps() { return Dual(Rat(0), Rat(1)); }

// Q[y]/(y^{d+1}). Every element remembers the truncation degree of the ring it
// lives in; elements originating from plain rationals are bound-agnostic and
// combine with anything. Mixing two distinct finite bounds is a cross-ring error.
class PolyY {
 public:
  static constexpr int unbounded = std::numeric_limits<int>::max();

  PolyY() : bound_(unbounded) {}
  explicit PolyY(const Rat& c) : bound_(unbounded) {
    if (c != 0) c_.push_back(c);
  }
  PolyY(std::vector<Rat> coeffs, int bound) : c_(std::move(coeffs)), bound_(bound) {
    if (bound_ < 0) throw std::invalid_argument("PolyY: negative bound");
    normalize();
  }

  static PolyY y(int bound) { return PolyY({Rat(0), Rat(1)}, bound); }

  int bound() const { return bound_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  Rat coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rat(0);
  }
  const std::vector<Rat>& coeffs() const { return c_; }

  friend PolyY operator+(const PolyY& p, const PolyY& q) {
    int b = combine(p.bound_, q.bound_);
    std::vector<Rat> c(std::max(p.c_.size(), q.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff((int)i) + q.coeff((int)i);
    return PolyY(std::move(c), b);
  }
  friend PolyY operator-(const PolyY& p, const PolyY& q) {
    int b = combine(p.bound_, q.bound_);
    std::vector<Rat> c(std::max(p.c_.size(), q.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff((int)i) - q.coeff((int)i);
    return PolyY(std::move(c), b);
  }
  friend PolyY operator-(const PolyY& p) {
    std::vector<Rat> c = p.c_;
    for (auto& x : c) x = -x;
    return PolyY(std::move(c), p.bound_);
  }
  friend PolyY operator*(const PolyY& p, const PolyY& q) {
    int b = combine(p.bound_, q.bound_);
    if (p.c_.empty() || q.c_.empty()) return PolyY(std::vector<Rat>{}, b);
    int dmax = (int)p.c_.size() + (int)q.c_.size() - 2;
    if (b != unbounded) dmax = std::min(dmax, b);
    std::vector<Rat> c(dmax + 1, Rat(0));
    for (int i = 0; i < (int)p.c_.size(); ++i) {
      if (p.c_[i] == 0) continue;
      for (int j = 0; j < (int)q.c_.size() && i + j <= dmax; ++j) c[i + j] += p.c_[i] * q.c_[j];
    }
    return PolyY(std::move(c), b);
  }
  friend bool operator==(const PolyY& p, const PolyY& q) { return p.c_ == q.c_; }
  friend bool operator!=(const PolyY& p, const PolyY& q) { return !(p == q); }

 private:
  static int combine(int a, int b) {
    if (a == unbounded) return b;
    if (b == unbounded) return a;
    if (a != b)
      throw std::invalid_argument("PolyY: mixing elements of distinct truncation bounds");
    return a;
  }
  void normalize() {
    if (bound_ != unbounded && (int)c_.size() > bound_ + 1) c_.resize(bound_ + 1);
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
  int bound_;
};

// ---- ring concept -----------------------------------------------------------

inline bool ring_is_zero(const Rat& r) { return r == 0; }
inline bool ring_is_zero(const Dual& r) { return r.a == 0 && r.b == 0; }
inline bool ring_is_zero(const PolyY& r) { return r.coeffs().empty(); }

inline Rat ring_rational_part(const Rat& r) { return r; }
inline Rat ring_rational_part(const Dual& r) { return r.a; }
inline Rat ring_rational_part(const PolyY& r) { return r.coeff(0); }

template <typename R>
bool ring_is_unit(const R& r) {
  return ring_rational_part(r) != 0;
}

inline Rat ring_invert(const Rat& r) {
  if (r == 0) throw std::domain_error("ring_invert: not a unit");
  return Rat(1) / r;
}
inline Dual ring_invert(const Dual& r) {
  if (r.a == 0) throw std::domain_error("ring_invert: not a unit");
  Rat ia = Rat(1) / r.a;
  return {ia, -r.b * ia * ia};
}
inline PolyY ring_invert(const PolyY& r) {
  Rat c0 = r.coeff(0);
  if (c0 == 0) throw std::domain_error("ring_invert: not a unit");
  if (r.degree() <= 0) return PolyY({Rat(1) / c0}, r.bound());
  if (r.bound() == PolyY::unbounded)
    throw std::domain_error("ring_invert: nonconstant polynomial without truncation bound");
  // power series inversion mod y^{bound+1}
  int d = r.bound();
  std::vector<Rat> inv(d + 1, Rat(0));
  inv[0] = Rat(1) / c0;
  for (int k = 1; k <= d; ++k) {
    Rat s = 0;
    for (int j = 1; j <= k; ++j) s += r.coeff(j) * inv[k - j];
    inv[k] = -s / c0;
  }
  return PolyY(std::move(inv), d);
}

inline Rat ring_div_int(const Rat& r, long long n) {
  if (n == 0) throw std::domain_error("ring_div_int: division by zero");
  return r / n;
}
inline Dual ring_div_int(const Dual& r, long long n) {
  if (n == 0) throw std::domain_error("ring_div_int: division by zero");
  return {r.a / n, r.b / n};
}
inline PolyY ring_div_int(const PolyY& r, long long n) {
  if (n == 0) throw std::domain_error("ring_div_int: division by zero");
  std::vector<Rat> c = r.coeffs();
  for (auto& x : c) x /= n;
  return PolyY(std::move(c), r.bound());
}

template <typename R>
R ring_cast(const Rat& q);
template <>
inline Rat ring_cast<Rat>(const Rat& q) {
  return q;
}
template <>
inline Dual ring_cast<Dual>(const Rat& q) {
  return Dual(q);
}
template <>
inline PolyY ring_cast<PolyY>(const Rat& q) {
  return PolyY(q);
}

template <typename R>
R ring_one() {
  return ring_cast<R>(Rat(1));
}

// Canonical text form. Composite values print without spaces, e.g. "1-2*eps",
// "3/4+y^2"; parse_ring accepts exactly this shape.
inline std::string ring_str(const Rat& r) { return rat_str(r); }

namespace detail {
inline void append_term(std::string& out, const Rat& c, const std::string& sym, int pow) {
  if (c == 0) return;
  std::string mag;
  Rat ac = c < 0 ? Rat(-c) : c;
  if (pow == 0) {
    mag = rat_str(ac);
  } else {
    std::string var = pow == 1 ? sym : sym + "^" + std::to_string(pow);
    mag = (ac == 1) ? var : rat_str(ac) + "*" + var;
  }
  if (out.empty())
    out = (c < 0 ? "-" : "") + mag;
  else
    out += (c < 0 ? "-" : "+") + mag;
}
}  // namespace detail

inline std::string ring_str(const Dual& r) {
  std::string out;
  detail::append_term(out, r.a, "eps", 0);
  detail::append_term(out, r.b, "eps", 1);
  return out.empty() ? "0" : out;
}
inline std::string ring_str(const PolyY& r) {
  std::string out;
  for (int k = 0; k <= r.degree(); ++k) detail::append_term(out, r.coeff(k), "y", k);
  return out.empty() ? "0" : out;
}

// Parse "a+b*eps" / "c0+c1*y+c2*y^2" style strings. PolyY values get the given
// bound; monomial powers beyond it are rejected rather than silently dropped.
namespace detail {
struct RingTerm {
  Rat coeff;
  int pow = 0;  // of eps or y
};

inline std::vector<RingTerm> parse_ring_terms(const std::string& s, const std::string& sym) {
  std::vector<RingTerm> terms;
  std::size_t i = 0;
  if (s.empty()) throw std::invalid_argument("parse_ring: empty value");
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
      if (i == s.size()) throw std::invalid_argument("parse_ring: dangling sign in '" + s + "'");
    } else if (!terms.empty()) {
      throw std::invalid_argument("parse_ring: missing operator in '" + s + "'");
    }
    // coefficient (optional if the term is the bare symbol)
    RingTerm t;
    t.coeff = Rat(sign);
    std::size_t start = i;
    while (i < s.size() && ((s[i] >= '0' && s[i] <= '9') || s[i] == '/')) ++i;
    if (i > start) t.coeff *= parse_rat(s.substr(start, i - start));
    bool had_num = i > start;
    if (i < s.size() && s[i] == '*') {
      if (!had_num) throw std::invalid_argument("parse_ring: stray '*' in '" + s + "'");
      ++i;
    }
    if (i + sym.size() <= s.size() && s.compare(i, sym.size(), sym) == 0) {
      i += sym.size();
      t.pow = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == start) throw std::invalid_argument("parse_ring: bad power in '" + s + "'");
        t.pow = std::stoi(s.substr(start, i - start));
      }
    } else if (!had_num) {
      throw std::invalid_argument("parse_ring: bad term in '" + s + "'");
    }
    terms.push_back(std::move(t));
  }
  return terms;
}
}  // namespace detail

template <typename R>
R parse_ring(const std::string& s, int poly_bound = PolyY::unbounded);

template <>
inline Rat parse_ring<Rat>(const std::string& s, int) {
  return parse_rat(s);
}
template <>
inline Dual parse_ring<Dual>(const std::string& s, int) {
  Dual d;
  for (const auto& t : detail::parse_ring_terms(s, "eps")) {
    if (t.pow == 0)
      d.a += t.coeff;
    else if (t.pow == 1)
      d.b += t.coeff;
    // eps^2 = 0
  }
  return d;
}
template <>
inline PolyY parse_ring<PolyY>(const std::string& s, int poly_bound) {
  auto terms = detail::parse_ring_terms(s, "y");
  int deg = 0;
  for (const auto& t : terms) deg = std::max(deg, t.pow);
  if (poly_bound != PolyY::unbounded && deg > poly_bound)
    throw std::invalid_argument("parse_ring: power of y exceeds ring bound in '" + s + "'");
  std::vector<Rat> c(deg + 1, Rat(0));
  for (const auto& t : terms) c[t.pow] += t.coeff;
  return PolyY(std::move(c), poly_bound);
}

}  // namespace hilb
