#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hilb/partitions.hpp"
#include "hilb/series.hpp"

// Homogeneous symmetric functions of one fixed degree over Q, in the monomial or
// power-sum basis, plus the alpha-deformed machinery on top: the inner product
// <p_lambda, p_mu> = delta * z_lambda * alpha^len(lambda) and the Jack basis it
// induces, normalized to be monic in the dominant monomial ("P" normalization).
// Everything here is small: degrees stay in the low teens, so the transition
// matrices are computed exactly and memoized per degree.

namespace hilb {

inline constexpr int kDefaultDegreeLimit = 12;

enum class Basis { monomial, power_sum };

struct SymFunc {
  int degree = 0;
  Basis basis = Basis::monomial;
  std::map<Partition, Rat> coeffs;  // zero-pruned

  static SymFunc monomial(const Partition& lam) {
    return {lam.size(), Basis::monomial, {{lam, Rat(1)}}};
  }
  static SymFunc power(const Partition& lam) {
    return {lam.size(), Basis::power_sum, {{lam, Rat(1)}}};
  }

  friend bool operator==(const SymFunc& f, const SymFunc& g) {
    return f.degree == g.degree && f.basis == g.basis && f.coeffs == g.coeffs;
  }
};

namespace detail {

// coefficient map of p_r * m_mu in the monomial basis: for each distinct part
// value w of mu (or a fresh part, w = 0), bump one w to w + r; the coefficient
// is the multiplicity of w + r in the result.
inline std::map<Partition, Rat> p_times_m(int r, const Partition& mu) {
  std::map<Partition, Rat> out;
  std::vector<int> values{0};
  for (int i = 0; i < mu.length(); ++i)
    if (i == 0 || mu.part(i) != mu.part(i - 1)) values.push_back(mu.part(i));
  for (int w : values) {
    std::vector<int> parts = mu.parts();
    if (w > 0) parts.erase(std::find(parts.begin(), parts.end(), w));
    parts.push_back(w + r);
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    Partition nu(std::move(parts));
    int mult = 0;
    for (int i = 0; i < nu.length(); ++i)
      if (nu.part(i) == w + r) ++mult;
    out[nu] += Rat(mult);
  }
  return out;
}

inline std::map<Partition, Rat> expand_p_in_m(const Partition& lam) {
  std::map<Partition, Rat> acc{{Partition(), Rat(1)}};
  for (int i = 0; i < lam.length(); ++i) {
    std::map<Partition, Rat> next;
    for (const auto& [mu, c] : acc)
      for (const auto& [nu, d] : p_times_m(lam.part(i), mu)) next[nu] += c * d;
    acc = std::move(next);
  }
  for (auto it = acc.begin(); it != acc.end();)
    it = it->second == 0 ? acc.erase(it) : std::next(it);
  return acc;
}

inline std::vector<std::vector<Rat>> invert_matrix(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("invert_matrix: singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rat f = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] -= f * m[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

struct TransitionTables {
  std::vector<Partition> order;  // enumerate_partitions(n)
  std::map<Partition, int> index;
  std::vector<std::vector<Rat>> p2m;  // row lam: p_lam in the m basis
  std::vector<std::vector<Rat>> m2p;  // row lam: m_lam in the p basis
  std::vector<Rat> z;                 // z_factor per index
  std::vector<int> len;               // partition length per index
};

inline const TransitionTables& transitions(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TransitionTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto t = std::make_unique<TransitionTables>();
    t->order = enumerate_partitions(n);
    const std::size_t sz = t->order.size();
    for (std::size_t i = 0; i < sz; ++i) t->index[t->order[i]] = static_cast<int>(i);
    t->p2m.assign(sz, std::vector<Rat>(sz, Rat(0)));
    for (std::size_t i = 0; i < sz; ++i)
      for (const auto& [mu2, c] : expand_p_in_m(t->order[i])) t->p2m[i][t->index.at(mu2)] = c;
    t->m2p = invert_matrix(t->p2m);
    t->z.reserve(sz);
    t->len.reserve(sz);
    for (const auto& lam : t->order) {
      t->z.push_back(z_factor(lam));
      t->len.push_back(lam.length());
    }
    slot = std::move(t);
  }
  return *slot;
}

inline void check_degree(int n, int max_degree) {
  if (n < 0) throw std::invalid_argument("symfunc: negative degree");
  if (n > max_degree) throw std::invalid_argument("symfunc: degree above maximum");
}

inline std::vector<Rat> to_coords(const SymFunc& f, Basis basis) {
  const auto& t = transitions(f.degree);
  std::vector<Rat> v(t.order.size(), Rat(0));
  for (const auto& [lam, c] : f.coeffs) {
    auto it = t.index.find(lam);
    if (it == t.index.end()) throw std::invalid_argument("symfunc: inhomogeneous coefficient map");
    v[it->second] = c;
  }
  if (f.basis == basis) return v;
  const auto& m = f.basis == Basis::power_sum ? t.p2m : t.m2p;
  std::vector<Rat> w(v.size(), Rat(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) w[j] += v[i] * m[i][j];
  }
  return w;
}

inline SymFunc from_coords(int degree, Basis basis, const std::vector<Rat>& v) {
  const auto& t = transitions(degree);
  SymFunc f{degree, basis, {}};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) f.coeffs[t.order[i]] = v[i];
  return f;
}

}  // namespace detail

inline SymFunc to_power_basis(const SymFunc& f, int max_degree = kDefaultDegreeLimit) {
  detail::check_degree(f.degree, max_degree);
  return detail::from_coords(f.degree, Basis::power_sum,
                             detail::to_coords(f, Basis::power_sum));
}

inline SymFunc to_monomial_basis(const SymFunc& f, int max_degree = kDefaultDegreeLimit) {
  detail::check_degree(f.degree, max_degree);
  return detail::from_coords(f.degree, Basis::monomial, detail::to_coords(f, Basis::monomial));
}

// <f, g> under <p_lambda, p_mu> = delta_{lambda,mu} z_lambda alpha^len(lambda).
inline Rat jack_inner(const SymFunc& f, const SymFunc& g, const Rat& alpha,
                      int max_degree = kDefaultDegreeLimit) {
  detail::check_degree(f.degree, max_degree);
  if (f.degree != g.degree) return Rat(0);
  const auto& t = detail::transitions(f.degree);
  auto u = detail::to_coords(f, Basis::power_sum);
  auto v = detail::to_coords(g, Basis::power_sum);
  Rat s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0 && v[i] != 0) s += u[i] * v[i] * t.z[i] * rat_pow(alpha, t.len[i]);
  return s;
}

// Gram-Schmidt construction of the Jack basis of one degree, processed along a
// linear extension of dominance (least dominant first). Monic in m_lambda by
// construction. A custom extension order may be supplied; the result provably
// does not depend on it, which the tests exercise.
class JackBasis {
 public:
  JackBasis(const Rat& alpha, int n, int max_degree = kDefaultDegreeLimit)
      : JackBasis(alpha, n, default_order(n), max_degree) {}

  JackBasis(const Rat& alpha, int n, std::vector<Partition> order,
            int max_degree = kDefaultDegreeLimit)
      : alpha_(alpha), degree_(n) {
    detail::check_degree(n, max_degree);
    if (alpha == 0) throw std::invalid_argument("jack: alpha must be nonzero");
    validate_order(n, order);
    const auto& t = detail::transitions(n);
    const std::size_t sz = t.order.size();

    std::vector<Rat> diag(sz);
    for (std::size_t i = 0; i < sz; ++i) diag[i] = t.z[i] * rat_pow(alpha, t.len[i]);
    auto inner = [&](const std::vector<Rat>& u, const std::vector<Rat>& v) {
      Rat s = 0;
      for (std::size_t i = 0; i < sz; ++i)
        if (u[i] != 0 && v[i] != 0) s += u[i] * v[i] * diag[i];
      return s;
    };

    std::vector<std::vector<Rat>> basis;  // p-coordinates, in processing order
    std::vector<Rat> norms;
    for (const Partition& lam : order) {
      std::vector<Rat> v = t.m2p[t.index.at(lam)];
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Rat c = inner(v, basis[j]) / norms[j];
        if (c == 0) continue;
        for (std::size_t i = 0; i < sz; ++i) v[i] -= c * basis[j][i];
      }
      Rat nrm = inner(v, v);
      if (nrm == 0) throw std::domain_error("jack: zero norm during orthogonalization");
      polys_[lam] = detail::from_coords(n, Basis::monomial,
                                        mat_apply(t.p2m, v));
      norms_[lam] = nrm;
      basis.push_back(std::move(v));
      norms.push_back(std::move(nrm));
    }
  }

  const Rat& alpha() const { return alpha_; }
  int degree() const { return degree_; }
  const SymFunc& poly(const Partition& lam) const {
    auto it = polys_.find(lam);
    if (it == polys_.end()) throw std::invalid_argument("jack: partition of the wrong degree");
    return it->second;
  }
  const Rat& norm(const Partition& lam) const { return norms_.at(lam); }

  // ascending dominance-compatible order: reverse of enumerate_partitions
  static std::vector<Partition> default_order(int n) {
    auto order = enumerate_partitions(n);
    std::reverse(order.begin(), order.end());
    return order;
  }

 private:
  static std::vector<Rat> mat_apply(const std::vector<std::vector<Rat>>& rows,
                                    const std::vector<Rat>& v) {
    std::vector<Rat> w(v.size(), Rat(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) w[j] += v[i] * rows[i][j];
    }
    return w;
  }

  static void validate_order(int n, const std::vector<Partition>& order) {
    const auto& t = detail::transitions(n);
    if (order.size() != t.order.size())
      throw std::invalid_argument("jack: order is not a permutation of the partitions");
    for (const auto& lam : order)
      if (!t.index.count(lam))
        throw std::invalid_argument("jack: order contains a foreign partition");
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j)
        if (dominance_leq(order[j], order[i]) && order[i] != order[j])
          throw std::invalid_argument("jack: order does not extend dominance");
  }

  Rat alpha_;
  int degree_;
  std::map<Partition, SymFunc> polys_;
  std::map<Partition, Rat> norms_;
};

inline SymFunc jack_polynomial(const Partition& lam, const Rat& alpha,
                               int max_degree = kDefaultDegreeLimit) {
  return JackBasis(alpha, lam.size(), max_degree).poly(lam);
}

// Evaluate at (x, y, 0, 0, ...): monomial symmetric functions of length > 2 die.
// The result is an exact homogeneous polynomial, returned with cap = degree.
inline Series<Rat> specialize_two_vars(const SymFunc& f) {
  SymFunc m = f.basis == Basis::monomial ? f : to_monomial_basis(f, f.degree);
  Series<Rat> s({'x', 'y'}, f.degree);
  for (const auto& [lam, c] : m.coeffs) {
    if (lam.length() > 2) continue;
    if (lam.length() == 0) {
      s.add_term({0, 0}, c);
    } else if (lam.length() == 1) {
      s.add_term({lam.part(0), 0}, c);
      s.add_term({0, lam.part(0)}, c);
    } else if (lam.part(0) == lam.part(1)) {
      s.add_term({lam.part(0), lam.part(1)}, c);
    } else {
      s.add_term({lam.part(0), lam.part(1)}, c);
      s.add_term({lam.part(1), lam.part(0)}, c);
    }
  }
  return s;
}

// Two-variable Schur polynomial s_{(a,b)}(x,y) = (xy)^b * sum_{i+j=a-b} x^i y^j.
inline Series<Rat> schur_two_vars(int a, int b) {
  if (a < b || b < 0) throw std::invalid_argument("schur_two_vars: need a >= b >= 0");
  Series<Rat> s({'x', 'y'}, a + b);
  for (int i = 0; i <= a - b; ++i) s.add_term({b + i, a - i}, Rat(1));
  return s;
}

}  // namespace hilb
