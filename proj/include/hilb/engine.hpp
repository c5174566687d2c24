#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilb/fock.hpp"
#include "hilb/series.hpp"

// The closed-formula engine. A multiplicative class is determined by a unit
// series f = 1 + f_1 x + ... over the coefficient ring; from f we build
//
//   F_even = f(x) f(-x),   G = x / F_even,   g = inverse of G,
//   H = x / f(-x),         h = inverse of H,
//
// and read off three coefficient families:
//
//   tangent:       sum k a_k x^k = g
//                  sum b_k x^k   = (1/2) log( f(-g)^2 / g' )
//                  sum a_{k,l} x^k y^l = (1/2) log( f(D) f(-D) / Dd )
//                  with D = g(x) - g(y) and Dd = D / (x - y),
//   tautological:  the same shapes built from h (see tautological_coefficients),
//   Chern character: the explicit elementary tables (2 sinh, -(1+x) sinh, a
//                  binomial double series) that arise from the dual-number class
//                  1 + eps (e^x - 1) plus the rank term.
//
// The states on the Fock side are exp(linear combination of generators) cut at
// one weight; see tangent_state_* and friends.

namespace hilb {

template <typename R>
struct ClassSpec {
  std::string name;
  std::function<Series<R>(int)> f;  // f truncated at the given cap
};

inline ClassSpec<Rat> trivial_class() {
  return {"trivial", [](int cap) { return Series<Rat>::one({'x'}, cap); }};
}

inline ClassSpec<Rat> chern_class() {
  return {"chern", [](int cap) {
            Series<Rat> f = Series<Rat>::one({'x'}, cap);
            if (cap >= 1) f.add_term({1}, Rat(1));
            return f;
          }};
}

inline ClassSpec<Rat> todd_class() {
  return {"todd", [](int cap) {
            // (1 - e^{-x})/x, then invert
            Series<Rat> d({'x'}, cap);
            for (int k = 0; k <= cap; ++k)
              d.add_term({k}, Rat(k % 2 == 0 ? 1 : -1) / factorial(k + 1));
            return reciprocal(d);
          }};
}

inline ClassSpec<Rat> a_hat_class() {
  return {"a_hat", [](int cap) {
            // sinh(x/2)/(x/2), then invert
            Series<Rat> d({'x'}, cap);
            for (int m = 0; 2 * m <= cap; ++m)
              d.add_term({2 * m}, Rat(1) / (rat_pow(Rat(4), m) * factorial(2 * m + 1)));
            return reciprocal(d);
          }};
}

inline ClassSpec<Rat> l_genus_class() {
  return {"l_genus", [](int cap) {
            Series<Rat> sinh_over_x({'x'}, cap), cosh({'x'}, cap);
            for (int m = 0; 2 * m <= cap; ++m) {
              sinh_over_x.add_term({2 * m}, Rat(1) / factorial(2 * m + 1));
              cosh.add_term({2 * m}, Rat(1) / factorial(2 * m));
            }
            return cosh * reciprocal(sinh_over_x);
          }};
}

// 1 + eps (e^x - 1): the eps part of anything multiplicative in this class is
// additive, which turns the tangent tables into Chern character tables.
inline ClassSpec<Dual> ch_dual_class() {
  return {"ch_dual", [](int cap) {
            Series<Dual> f({'x'}, cap);
            f.add_term({0}, Dual(Rat(1)));
            for (int k = 1; k <= cap; ++k) f.add_term({k}, Dual(Rat(0), Rat(1) / factorial(k)));
            return f;
          }};
}

// f = 1 + coeffs[0] x + coeffs[1] x^2 + ...; the finite list is the whole class.
template <typename R>
ClassSpec<R> series_class(std::string name, std::vector<R> coeffs) {
  return {std::move(name), [coeffs = std::move(coeffs)](int cap) {
            Series<R> f = Series<R>::one({'x'}, cap);
            for (std::size_t i = 0; i < coeffs.size(); ++i)
              if (static_cast<int>(i) + 1 <= cap) f.add_term({static_cast<int>(i) + 1}, coeffs[i]);
            return f;
          }};
}

template <typename R>
struct InversionData {
  Series<R> f, F_even, G, g, H, h;  // all exact to the requested order
};

template <typename R>
InversionData<R> build_inversion(const ClassSpec<R>& spec, int order) {
  Series<R> f = spec.f(order);
  if (f.vars() != std::vector<char>{'x'})
    throw std::invalid_argument("class series must be univariate in x");
  if (!(f.constant_term() == ring_one<R>()))
    throw std::invalid_argument("class series must have constant term one");
  Series<R> fm = negate_var(f, 'x');
  Series<R> F_even = f * fm;
  // x / F is exact one degree past F; bring it back to the requested order
  Series<R> G = truncated(mul_by_var(reciprocal(F_even), 'x'), order);
  Series<R> H = truncated(mul_by_var(reciprocal(fm), 'x'), order);
  Series<R> g = compose_inverse(G);
  Series<R> h = compose_inverse(H);
  return {std::move(f), std::move(F_even), std::move(G), std::move(g), std::move(H),
          std::move(h)};
}

enum class TableKind { tangent, tautological, chern_character };

// a, b, c are 1-based (index 0 unused); akl is the full symmetric matrix with
// akl[k][l] defined for k, l >= 1, k + l <= order.
template <typename R>
struct CoefficientTables {
  TableKind kind{};
  int order = 0;
  std::vector<R> a, b;
  std::vector<std::vector<R>> akl;
  std::vector<R> c;  // tautological only

  static CoefficientTables sized(TableKind kind, int order) {
    CoefficientTables t;
    t.kind = kind;
    t.order = order;
    t.a.assign(order + 1, R{});
    t.b.assign(order + 1, R{});
    t.akl.assign(order + 1, std::vector<R>(order + 1, R{}));
    if (kind == TableKind::tautological) t.c.assign(order + 1, R{});
    return t;
  }
};

namespace detail {

// both bivariate log arguments share this shape: p(x) p(y) / q with constant
// term one; returns (1/2) log
template <typename R>
Series<R> half_log(const Series<R>& arg) {
  return scale(log_series(arg), Rat(1, 2));
}

}  // namespace detail

template <typename R>
CoefficientTables<R> tangent_coefficients(const ClassSpec<R>& spec, int order) {
  if (order < 1) throw std::invalid_argument("tangent_coefficients: order must be positive");
  InversionData<R> inv = build_inversion(spec, order + 1);
  auto t = CoefficientTables<R>::sized(TableKind::tangent, order);

  for (int k = 1; k <= order; ++k) t.a[k] = ring_div_int(inv.g.coeff1(k), k);

  Series<R> f_of_mg = substitute(inv.f, 'x', -inv.g);            // cap order + 1
  Series<R> gp = derivative(inv.g, 'x');                         // cap order
  Series<R> bs = detail::half_log(f_of_mg * f_of_mg * reciprocal(gp));
  for (int k = 1; k <= order; ++k) t.b[k] = bs.coeff1(k);

  const std::vector<char> XY{'x', 'y'};
  Series<R> gx = embed(inv.g, XY);
  Series<R> gy = embed(substitute(inv.g, 'x', Series<R>::variable({'y'}, order + 1, 'y')), XY);
  Series<R> delta = gx - gy;
  Series<R> dd = divided_difference(inv.g);  // delta / (x - y), cap order
  Series<R> arg = substitute(inv.f, 'x', delta) * substitute(inv.f, 'x', -delta) *
                  reciprocal(dd);
  Series<R> as = detail::half_log(arg);
  for (int k = 1; k < order; ++k)
    for (int l = 1; k + l <= order; ++l) t.akl[k][l] = as.coeff2(k, l);
  return t;
}

template <typename R>
CoefficientTables<R> tautological_coefficients(const ClassSpec<R>& spec, int order) {
  if (order < 1)
    throw std::invalid_argument("tautological_coefficients: order must be positive");
  InversionData<R> inv = build_inversion(spec, order + 1);
  auto t = CoefficientTables<R>::sized(TableKind::tautological, order);

  for (int k = 1; k <= order; ++k) t.a[k] = ring_div_int(inv.h.coeff1(k), k);

  Series<R> hx = shift_down(inv.h, 'x');  // h/x, constant term one, cap order
  Series<R> hp = derivative(inv.h, 'x');
  Series<R> bs = detail::half_log(hx * hx * reciprocal(hp));
  for (int k = 1; k <= order; ++k) t.b[k] = bs.coeff1(k);

  Series<R> cs = -log_series(hx);  // log(x / h)
  for (int k = 1; k <= order; ++k) t.c[k] = cs.coeff1(k);

  const std::vector<char> XY{'x', 'y'};
  Series<R> hxx = embed(hx, XY);
  Series<R> hxy = embed(substitute(hx, 'x', Series<R>::variable({'y'}, order, 'y')), XY);
  Series<R> dd = divided_difference(inv.h);
  Series<R> as = detail::half_log(hxx * hxy * reciprocal(dd));
  for (int k = 1; k < order; ++k)
    for (int l = 1; k + l <= order; ++l) t.akl[k][l] = as.coeff2(k, l);
  return t;
}

// Elementary closed tables for the Chern character of the tangent bundle:
//   a-series 2 sinh x  (the 2x of the rank and 2 x^{2m+1}/(2m+1)! beyond),
//   b-series -(1+x) sinh x,
//   a_{k,l} = ((-1)^k binom(k+l, k) - 1) / (k+l)!  for k + l even, else 0.
inline CoefficientTables<Rat> chern_character_tables(int order) {
  if (order < 1)
    throw std::invalid_argument("chern_character_tables: order must be positive");
  auto t = CoefficientTables<Rat>::sized(TableKind::chern_character, order);
  for (int k = 1; k <= order; k += 2) t.a[k] = Rat(2) / factorial(k);
  for (int k = 1; k <= order; ++k) t.b[k] = -Rat(1) / factorial(k % 2 == 1 ? k : k - 1);
  for (int k = 1; k < order; ++k)
    for (int l = 1; k + l <= order; ++l)
      if ((k + l) % 2 == 0)
        t.akl[k][l] = ((k % 2 == 0 ? 1 : -1) * binomial(k + l, k) - 1) / factorial(k + l);
  return t;
}

// Linear part sum_k a_k q_k(1) + b_k q_k(K) (+ c_k q_k(F)) plus the diagonal
// terms: the ordered double sum collapses onto canonical k <= l generators.
template <typename R>
FormalState<R> linear_formal_state(const CoefficientTables<R>& t, int n) {
  if (n > t.order) throw std::invalid_argument("linear_formal_state: order too low");
  FormalState<R> L;
  for (int k = 1; k <= n; ++k) {
    L.add_term({{FormalCls::one, k}}, t.a[k]);
    L.add_term({{FormalCls::canon, k}}, t.b[k]);
    if (!t.c.empty()) L.add_term({{FormalCls::line, k}}, t.c[k]);
  }
  for (int k = 1; k <= n; ++k)
    for (int l = k; k + l <= n; ++l) {
      R coeff = t.akl[k][l];
      if (k < l) coeff = coeff + t.akl[l][k];
      L.add_term({{FormalCls::diag, k, l}}, coeff);
    }
  return L;
}

template <typename R>
FormalState<R> class_state_abstract(const CoefficientTables<R>& t, int n) {
  if (n == 0) return FormalState<R>::vacuum();
  return weight_component(exp_state(linear_formal_state(t, n), n), n);
}

template <typename R>
FormalState<R> tangent_state_abstract(const ClassSpec<R>& spec, int n) {
  return class_state_abstract(tangent_coefficients(spec, std::max(n, 1)), n);
}

template <typename R>
FockState<R> tangent_state(const ClassSpec<R>& spec, const SurfaceModel& model, int n) {
  if (n == 0) return FockState<R>::vacuum();
  auto t = tangent_coefficients(spec, n);
  FockState<R> L = specialize(linear_formal_state(t, n), model);
  return weight_component(exp_state(L, n), n);
}

template <typename R>
FormalState<R> tautological_state_abstract(const ClassSpec<R>& spec, int n) {
  return class_state_abstract(tautological_coefficients(spec, std::max(n, 1)), n);
}

template <typename R>
FockState<R> tautological_state(const ClassSpec<R>& spec, const SurfaceModel& model,
                                const CohClass<R>& line_class, int n) {
  if (n == 0) return FockState<R>::vacuum();
  auto t = tautological_coefficients(spec, n);
  FockState<R> L = specialize(linear_formal_state(t, n), model, line_class);
  return weight_component(exp_state(L, n), n);
}

// ch(tangent) on the Fock side: (linear tables) * exp(q_1(1)), one weight.
inline FormalState<Rat> chern_character_state_abstract(int n) {
  if (n == 0) return {};  // rank 0, empty sum
  FormalState<Rat> pre = linear_formal_state(chern_character_tables(n), n);
  FormalState<Rat> e = exp_state(FormalState<Rat>::generator({FormalCls::one, 1}), n);
  return weight_component(mul_weight_capped(pre, e, n), n);
}

inline FockState<Rat> chern_character_state(const SurfaceModel& model, int n) {
  if (n == 0) return {};
  return weight_component(
      specialize(chern_character_state_abstract(n), model), n);
}

}  // namespace hilb
