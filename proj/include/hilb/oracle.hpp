#pragma once

// Independent verification layer. The generating function
//
//   Z_gamma(x, y) = sum over bipartitions (l0, l1) of
//       P^1_{l0}(x,y) * P^{1/(gamma-1)}_{l1}(x,y)
//         * [u^n] prod_{w} f(w u) / (c'_{l0}(-1,-1) * c'_{l1}(gamma-1, 1))
//
// is a fixed-point sum over the surface of total space O(-gamma) on P^1; the
// weights w run over W_{l0}(-1,-1) together with W_{l1}(gamma-1, 1) and
// n = |l0| + |l1|.  The closed-formula side predicts
//
//   Z_gamma = exp( sum_k (gamma-2) b_k (x^k + y^k)
//                  - gamma sum_{k,l} a_{k,l} (x^k + y^k)(x^l + y^l) )
//
// with b_k, a_{k,l} the tangent tables.  The verify_* functions check this
// identity, the two special evaluations it rests on (gamma = 2 and the
// y = 0 slice at gamma = 3), the read-off of the tables from Z_2 and Z_3,
// and the two combinatorial facts used along the way.  Everything is an
// exact comparison of rational (or dual / truncated-polynomial) series;
// failures come back as reports, not exceptions.

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hilb/engine.hpp"
#include "hilb/partitions.hpp"
#include "hilb/symfunc.hpp"

namespace hilb {

struct CheckReport {
  bool pass = true;
  std::string detail;  // empty on pass, first offending term otherwise
};

namespace detail {

// Two-variable Jack specializations, cached per (alpha, degree) since every
// bipartition sum revisits the same partitions many times.
inline Series<Rat> jack_two_vars(const Partition& lam, const Rat& alpha) {
  if (lam.size() == 0) return Series<Rat>::one({'x', 'y'}, 0);
  static std::mutex mu;
  static std::map<std::pair<Rat, int>, std::map<Partition, Series<Rat>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(alpha, lam.size());
  auto it = cache.find(key);
  if (it == cache.end()) {
    JackBasis basis(alpha, lam.size());
    std::map<Partition, Series<Rat>> table;
    for (const auto& p : enumerate_partitions(lam.size()))
      table.emplace(p, specialize_two_vars(basis.poly(p)));
    it = cache.emplace(key, std::move(table)).first;
  }
  return it->second.at(lam);
}

// f(w x) for univariate f: the k-th coefficient picks up w^k.
template <typename R>
Series<R> scale_argument(const Series<R>& f, long long w) {
  Series<R> r(f.vars(), f.cap());
  for (const auto& [k, c] : f.terms())
    r.add_term(k, c * ring_cast<R>(rat_pow(Rat(w), k[0])));
  return r;
}

// Shared worker: f is already truncated to |bp|.
template <typename R>
Series<R> localization_term_f(const Bipartition& bp, int gamma,
                              const Series<R>& f, int cap) {
  const int n = bp.total();

  std::vector<long long> weights = weight_multiset(bp.first, -1, -1);
  std::vector<long long> upper = weight_multiset(bp.second, gamma - 1, 1);
  weights.insert(weights.end(), upper.begin(), upper.end());

  Series<R> prod = Series<R>::one({'x'}, n);
  for (long long w : weights) prod = prod * scale_argument(f, w);
  R numerator = prod.coeff1(n);

  Rat denominator = hook_product_rat(bp.first, -1, -1) *
                    hook_product_rat(bp.second, gamma - 1, 1);

  Series<Rat> jack = with_cap(jack_two_vars(bp.first, 1), n) *
                     with_cap(jack_two_vars(bp.second, Rat(1) / (gamma - 1)), n);
  Series<R> term = series_cast<R>(scale(jack, Rat(1) / denominator)) * numerator;
  return with_cap(term, cap);  // homogeneous of degree n, so exact
}

}  // namespace detail

template <typename R>
Series<R> localization_term(const Bipartition& bp, int gamma,
                            const ClassSpec<R>& spec, int cap) {
  if (gamma < 2) throw std::invalid_argument("localization_term: gamma must be at least 2");
  if (bp.total() > cap)
    throw std::invalid_argument("localization_term: bipartition degree exceeds cap");
  return detail::localization_term_f(bp, gamma, spec.f(bp.total()), cap);
}

template <typename R>
Series<R> z_gamma(int gamma, const ClassSpec<R>& spec, int cap) {
  if (gamma < 2) throw std::invalid_argument("z_gamma: gamma must be at least 2");
  Series<R> f = spec.f(cap);
  Series<R> sum({'x', 'y'}, cap);
  for (int n = 0; n <= cap; ++n)
    for (const auto& bp : enumerate_bipartitions(n))
      sum = sum + detail::localization_term_f(bp, gamma, truncated(f, n), cap);
  return sum;
}

// First differing coefficient in graded-lex order, or a pass.
template <typename R>
CheckReport compare_series(const Series<R>& got, const Series<R>& want) {
  if (got.vars() != want.vars()) return {false, "variable sets differ"};
  if (got.cap() != want.cap())
    return {false, "caps differ: " + std::to_string(got.cap()) + " vs " +
                       std::to_string(want.cap())};
  typename Series<R>::GradedLex less;
  auto gi = got.terms().begin(), ge = got.terms().end();
  auto wi = want.terms().begin(), we = want.terms().end();
  auto report = [&](const std::vector<int>& key, const R& g, const R& w) {
    std::string mono = monomial_str(got.vars(), key);
    if (mono.empty()) mono = "1";
    return CheckReport{false, "first mismatch at " + mono + ": got " + ring_str(g) +
                                  ", want " + ring_str(w)};
  };
  while (gi != ge || wi != we) {
    if (wi == we || (gi != ge && less(gi->first, wi->first)))
      return report(gi->first, gi->second, R{});
    if (gi == ge || less(wi->first, gi->first))
      return report(wi->first, R{}, wi->second);
    if (!(gi->second == wi->second)) return report(gi->first, gi->second, wi->second);
    ++gi;
    ++wi;
  }
  return {true, ""};
}

// exp( sum (gamma-2) b_k (x^k + y^k) - gamma sum a_{k,l} (x^k+y^k)(x^l+y^l) )
template <typename R>
Series<R> partition_sum_closed_form(const CoefficientTables<R>& t, int gamma, int cap) {
  if (t.order < cap)
    throw std::invalid_argument("partition_sum_closed_form: tables shorter than cap");
  Series<R> ex({'x', 'y'}, cap);
  for (int k = 1; k <= cap; ++k) {
    R c = t.b[k] * ring_cast<R>(Rat(gamma - 2));
    ex.add_term({k, 0}, c);
    ex.add_term({0, k}, c);
  }
  for (int k = 1; k < cap; ++k)
    for (int l = 1; k + l <= cap; ++l) {
      R c = t.akl[k][l] * ring_cast<R>(Rat(-gamma));
      ex.add_term({k + l, 0}, c);
      ex.add_term({0, k + l}, c);
      ex.add_term({k, l}, c);
      ex.add_term({l, k}, c);
    }
  return exp_series(ex);
}

// Pass iff the sum equals the closed form coefficient by coefficient.  On
// failure, a fault in a mixed table entry a_{k,l} also shows up in the pure
// powers x^{k+l}, y^{k+l} (the closed form couples them), so the report is
// refined through the logarithm's mixed slice first: that names the offending
// x^k y^l tuple instead of its pure-power echo.
template <typename R>
CheckReport verify_defw_sum(const Series<R>& zsum, const CoefficientTables<R>& t,
                            int gamma) {
  Series<R> closed = partition_sum_closed_form(t, gamma, zsum.cap());
  CheckReport full = compare_series(zsum, closed);
  if (full.pass) return full;
  if (zsum.constant_term() == ring_one<R>() && closed.constant_term() == ring_one<R>()) {
    auto mixed = [](const Series<R>& s) {
      Series<R> l = log_series(s);
      return l - set_var_zero(l, 'y') - set_var_zero(l, 'x');
    };
    CheckReport m = compare_series(mixed(zsum), mixed(closed));
    if (!m.pass) return m;
  }
  return full;
}

template <typename R>
CheckReport verify_defw(int gamma, const ClassSpec<R>& spec, int cap) {
  return verify_defw_sum(z_gamma(gamma, spec, cap), tangent_coefficients(spec, cap),
                         gamma);
}

// Recover b_k and a_{k,l} from the fixed-point sums alone:
//   a_{k,l} = -1/4 [x^k y^l] (log Z_2(x,y) - log Z_2(x,0) - log Z_2(0,y))
//   b_k     =      [x^k]     (log Z_3(x,0) - 3/2 log Z_2(x,0))
// The a_k slots stay zero; this route does not see them.
template <typename R>
CoefficientTables<R> read_off_from_sums(const Series<R>& z2, const Series<R>& z3,
                                        int order) {
  if (z2.cap() < order || z3.cap() < order)
    throw std::invalid_argument("read_off_from_sums: sums shorter than order");
  Series<R> l2 = log_series(truncated(z2, order));
  Series<R> l2x = set_var_zero(l2, 'y');
  Series<R> l2y = set_var_zero(l2, 'x');
  Series<R> as = scale(l2 - l2x - l2y, Rat(-1) / 4);
  Series<R> bs = set_var_zero(log_series(truncated(z3, order)), 'y') -
                 scale(l2x, Rat(3) / 2);

  auto t = CoefficientTables<R>::sized(TableKind::tangent, order);
  for (int k = 1; k <= order; ++k) t.b[k] = bs.coeff2(k, 0);
  for (int k = 1; k < order; ++k)
    for (int l = 1; k + l <= order; ++l) t.akl[k][l] = as.coeff2(k, l);
  return t;
}

template <typename R>
CoefficientTables<R> read_off_coefficients(const ClassSpec<R>& spec, int cap) {
  return read_off_from_sums(z_gamma(2, spec, cap), z_gamma(3, spec, cap), cap);
}

template <typename R>
CheckReport verify_readoff_sums(const Series<R>& z2, const Series<R>& z3,
                                const CoefficientTables<R>& t, int order) {
  CoefficientTables<R> r = read_off_from_sums(z2, z3, order);
  for (int k = 1; k <= order; ++k)
    if (!(r.b[k] == t.b[k]))
      return {false, "b[" + std::to_string(k) + "]: got " + ring_str(r.b[k]) +
                         ", want " + ring_str(t.b[k])};
  for (int k = 1; k < order; ++k)
    for (int l = 1; k + l <= order; ++l)
      if (!(r.akl[k][l] == t.akl[k][l]))
        return {false, "akl[" + std::to_string(k) + "][" + std::to_string(l) +
                           "]: got " + ring_str(r.akl[k][l]) + ", want " +
                           ring_str(t.akl[k][l])};
  return {true, ""};
}

template <typename R>
CheckReport verify_readoff(const ClassSpec<R>& spec, int order) {
  return verify_readoff_sums(z_gamma(2, spec, order), z_gamma(3, spec, order),
                             tangent_coefficients(spec, order), order);
}

// Z_2 = g'(x) g'(y) (D / (f(D0) f(-D0)))^2 where D0 = g(x) - g(y) and
// D = D0/(x - y) is the divided difference.
template <typename R>
Series<R> z2_closed_form(const ClassSpec<R>& spec, int cap) {
  InversionData<R> inv = build_inversion(spec, cap + 1);
  std::vector<char> xy{'x', 'y'};

  Series<R> gp = derivative(inv.g, 'x');
  Series<R> gpx = embed(gp, xy);
  Series<R> gpy = embed(substitute(gp, 'x', Series<R>::variable({'y'}, cap, 'y')), xy);

  Series<R> gx = embed(truncated(inv.g, cap), xy);
  Series<R> gy = embed(substitute(truncated(inv.g, cap), 'x',
                                  Series<R>::variable({'y'}, cap, 'y')),
                       xy);
  Series<R> delta = gx - gy;
  Series<R> dd = divided_difference(inv.g);

  Series<R> fd = substitute(inv.f, 'x', delta);
  Series<R> fmd = substitute(inv.f, 'x', -delta);
  Series<R> ratio = dd * reciprocal(fd * fmd);
  return gpx * gpy * ratio * ratio;
}

template <typename R>
CheckReport verify_z2_sum(const Series<R>& zsum, const ClassSpec<R>& spec) {
  return compare_series(zsum, z2_closed_form(spec, zsum.cap()));
}

template <typename R>
CheckReport verify_z2(const ClassSpec<R>& spec, int cap) {
  return verify_z2_sum(z_gamma(2, spec, cap), spec);
}

// Z_3(x, 0) = f(-g(x)) g'(x).
template <typename R>
Series<R> z3_closed_form_x(const ClassSpec<R>& spec, int cap) {
  InversionData<R> inv = build_inversion(spec, cap + 1);
  Series<R> fg = substitute(inv.f, 'x', -truncated(inv.g, cap));
  return fg * derivative(inv.g, 'x');
}

template <typename R>
CheckReport verify_z3_sum(const Series<R>& zsum, const ClassSpec<R>& spec) {
  Series<R> rhs = embed(z3_closed_form_x(spec, zsum.cap()), {'x', 'y'});
  return compare_series(set_var_zero(zsum, 'y'), rhs);
}

template <typename R>
CheckReport verify_z3(const ClassSpec<R>& spec, int cap) {
  return verify_z3_sum(z_gamma(3, spec, cap), spec);
}

// prod_{w = a-n}^{a} f(w u) = f(a u)^{n+1} + X(a, u) where every monomial of
// the remainder X has a-degree strictly below u-degree.  Checked in the
// two-variable ring in (u, a) up to total degree 2*cap, which covers every
// monomial with u-degree <= cap that could violate the bound.
template <typename R>
CheckReport verify_dots(const ClassSpec<R>& spec, int n, int cap) {
  if (n < 0) throw std::invalid_argument("verify_dots: n must be nonnegative");
  const int total = 2 * cap;
  Series<R> f = spec.f(total);
  std::vector<char> ua{'u', 'a'};

  Series<R> au(ua, total);
  au.add_term({1, 1}, ring_one<R>());

  Series<R> prod = Series<R>::one(ua, total);
  for (int j = 0; j <= n; ++j) {
    Series<R> t = au;
    t.add_term({1, 0}, ring_cast<R>(Rat(j - n)));  // (a - (n - j)) u
    prod = prod * substitute(f, 'x', t);
  }

  Series<R> fau = substitute(f, 'x', au);
  Series<R> expected = Series<R>::one(ua, total);
  for (int j = 0; j <= n; ++j) expected = expected * fau;

  Series<R> rem = prod - expected;
  for (const auto& [k, c] : rem.terms()) {
    (void)c;
    if (k[1] >= k[0])
      return {false, "remainder monomial " + monomial_str(ua, k) +
                         " has a-degree >= u-degree"};
  }
  return {true, ""};
}

// sum_{a=0}^{r} (-1)^a a^k / (a! (r-a)!) is 0 for k < r and (-1)^r at k = r.
inline CheckReport verify_cases(int r_max, int k_max) {
  if (r_max < 0 || k_max < 0)
    throw std::invalid_argument("verify_cases: bounds must be nonnegative");
  for (int r = 0; r <= r_max; ++r)
    for (int k = 0; k <= std::min(k_max, r); ++k) {
      Rat sum = 0;
      for (int a = 0; a <= r; ++a) {
        Rat term = rat_pow(Rat(a), k) / (factorial(a) * factorial(r - a));
        sum += (a % 2 == 0) ? term : -term;
      }
      Rat want = (k < r) ? Rat(0) : rat_pow(Rat(-1), r);
      if (sum != want)
        return {false, "sum at r=" + std::to_string(r) + ", k=" + std::to_string(k) +
                           ": got " + rat_str(sum) + ", want " + rat_str(want)};
    }
  return {true, ""};
}

// Consistency of the Chern-character tables with the tangent tables of the
// dual-number class 1 + eps(e^x - 1): the eps parts must reproduce the
// Chern-character sequences (the a-column shifted by the rank contribution 2
// at k = 1), and the two intermediate series must come out exactly as
// g = x + 2 eps x (cosh x - 1) and sum b~_k x^k = -eps (1 + x) sinh x.
inline CheckReport verify_dual(int order) {
  ClassSpec<Dual> spec = ch_dual_class();

  InversionData<Dual> inv = build_inversion(spec, order);
  Series<Dual> g_want({'x'}, order);
  g_want.add_term({1}, Dual{1, 0});
  for (int k = 3; k <= order; k += 2) g_want.add_term({k}, Dual{0, 2 / factorial(k - 1)});
  CheckReport g_check = compare_series(inv.g, g_want);
  if (!g_check.pass) return {false, "inverse series: " + g_check.detail};

  CoefficientTables<Dual> t = tangent_coefficients(spec, order);
  CoefficientTables<Rat> ch = chern_character_tables(order);
  if (!(ch.a[1] == Rat(2))) return {false, "character table a[1] is not 2"};

  for (int k = 1; k <= order; ++k) {
    Dual a_want{k == 1 ? 1 : 0, k == 1 ? Rat(0) : ch.a[k]};
    if (!(t.a[k] == a_want))
      return {false, "a[" + std::to_string(k) + "]: got " + ring_str(t.a[k]) +
                         ", want " + ring_str(a_want)};
    Dual b_want{0, ch.b[k]};  // eps part of -(1+x) sinh x
    if (!(t.b[k] == b_want))
      return {false, "b[" + std::to_string(k) + "]: got " + ring_str(t.b[k]) +
                         ", want " + ring_str(b_want)};
  }
  for (int k = 1; k < order; ++k)
    for (int l = 1; k + l <= order; ++l) {
      Dual want{0, ch.akl[k][l]};
      if (!(t.akl[k][l] == want))
        return {false, "akl[" + std::to_string(k) + "][" + std::to_string(l) +
                           "]: got " + ring_str(t.akl[k][l]) + ", want " +
                           ring_str(want)};
    }
  return {true, ""};
}

}  // namespace hilb
