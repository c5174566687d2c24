#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilb/series.hpp"

// States of a commutative creation-operator algebra acting on a vacuum |0>. A
// state is a finite R-linear combination of monomials in generators q_k(c),
// graded by weight (the sum of the k's). Two generator alphabets are used:
//
//   FockGen    q_k(1), q_k(h)      the concrete model; h is the degree-2 class
//                                  with h^2 = 0 on the target geometry,
//   FormalGen  q_k(1), q_k(K), q_k(F), Q_{k,l}(1)
//                                  geometry-independent labels: canonical class,
//                                  a chosen line-bundle class, and the diagonal
//                                  generator (symmetric in k, l; stored k <= l).
//
// specialize() maps formal states into the concrete model of one geometry, and
// rho() evaluates pure-h states as polynomials in two variables.

namespace hilb {

enum class SurfCls { one, h };

struct FockGen {
  int k;
  SurfCls cls;
  friend bool operator==(const FockGen& a, const FockGen& b) {
    return a.k == b.k && a.cls == b.cls;
  }
};

enum class FormalCls { one, canon, line, diag };

struct FormalGen {
  FormalCls cls;
  int k;
  int l = 0;  // second index of a diagonal generator
  friend bool operator==(const FormalGen& a, const FormalGen& b) {
    return a.cls == b.cls && a.k == b.k && a.l == b.l;
  }
};

inline int gen_weight(const FockGen& g) { return g.k; }
inline int gen_weight(const FormalGen& g) { return g.cls == FormalCls::diag ? g.k + g.l : g.k; }

inline int gen_cohdeg(const FockGen& g) { return 2 * g.k - 2 + (g.cls == SurfCls::h ? 2 : 0); }

inline void gen_validate(const FockGen& g) {
  if (g.k < 1) throw std::invalid_argument("fock: generator index must be positive");
}
inline void gen_validate(const FormalGen& g) {
  if (g.k < 1) throw std::invalid_argument("fock: generator index must be positive");
  if (g.cls == FormalCls::diag) {
    if (g.l < g.k) throw std::invalid_argument("fock: diagonal generator stored with k <= l");
  } else if (g.l != 0) {
    throw std::invalid_argument("fock: stray second index on a simple generator");
  }
}

inline bool gen_less(const FockGen& a, const FockGen& b) {
  if (a.k != b.k) return a.k < b.k;
  return static_cast<int>(a.cls) < static_cast<int>(b.cls);
}
inline bool gen_less(const FormalGen& a, const FormalGen& b) {
  if (a.k != b.k) return a.k < b.k;
  if (a.cls != b.cls) return static_cast<int>(a.cls) < static_cast<int>(b.cls);
  return a.l < b.l;
}

inline std::string gen_str(const FockGen& g) {
  return "q" + std::to_string(g.k) + (g.cls == SurfCls::h ? "(h)" : "(1)");
}
inline std::string gen_str(const FormalGen& g) {
  switch (g.cls) {
    case FormalCls::one: return "q" + std::to_string(g.k) + "(1)";
    case FormalCls::canon: return "q" + std::to_string(g.k) + "(K)";
    case FormalCls::line: return "q" + std::to_string(g.k) + "(F)";
    case FormalCls::diag:
      return "Q{" + std::to_string(g.k) + "," + std::to_string(g.l) + "}(1)";
  }
  return {};
}

template <typename Gen>
int monomial_weight(const std::vector<Gen>& m) {
  int w = 0;
  for (const Gen& g : m) w += gen_weight(g);
  return w;
}

template <typename Gen>
std::string monomial_str(const std::vector<Gen>& m) {
  if (m.empty()) return "|0>";
  std::string out;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!out.empty()) out += " ";
    out += gen_str(m[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

template <typename Gen>
struct MonomialLess {
  bool operator()(const std::vector<Gen>& a, const std::vector<Gen>& b) const {
    int wa = monomial_weight(a), wb = monomial_weight(b);
    if (wa != wb) return wa < wb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Gen& p, const Gen& q) { return gen_less(p, q); });
  }
};

template <typename R, typename Gen>
class State {
 public:
  using Monomial = std::vector<Gen>;
  using Map = std::map<Monomial, R, MonomialLess<Gen>>;

  State() = default;

  static State vacuum(const R& c = ring_one<R>()) {
    State s;
    s.add_term({}, c);
    return s;
  }
  static State generator(Gen g, const R& c = ring_one<R>()) {
    State s;
    s.add_term({std::move(g)}, c);
    return s;
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Monomial m, const R& c) {
    if (ring_is_zero(c)) return;
    for (const Gen& g : m) gen_validate(g);
    std::sort(m.begin(), m.end(), [](const Gen& p, const Gen& q) { return gen_less(p, q); });
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), c);
    } else {
      it->second = it->second + c;
      if (ring_is_zero(it->second)) terms_.erase(it);
    }
  }

  R coeff(Monomial m) const {
    std::sort(m.begin(), m.end(), [](const Gen& p, const Gen& q) { return gen_less(p, q); });
    auto it = terms_.find(m);
    return it == terms_.end() ? R{} : it->second;
  }

  friend State operator+(const State& s, const State& t) {
    State r = s;
    for (const auto& [m, c] : t.terms_) r.add_term(m, c);
    return r;
  }
  friend State operator-(const State& s, const State& t) {
    State r = s;
    for (const auto& [m, c] : t.terms_) r.add_term(m, -c);
    return r;
  }
  friend State operator*(const State& s, const R& c) {
    State r;
    for (const auto& [m, v] : s.terms_) r.add_term(m, v * c);
    return r;
  }
  friend State operator*(const R& c, const State& s) { return s * c; }
  friend State operator*(const State& s, const State& t) {
    State r;
    for (const auto& [ms, cs] : s.terms_)
      for (const auto& [mt, ct] : t.terms_) {
        Monomial m = ms;
        m.insert(m.end(), mt.begin(), mt.end());
        r.add_term(std::move(m), cs * ct);
      }
    return r;
  }
  friend bool operator==(const State& s, const State& t) { return s.terms_ == t.terms_; }
  friend bool operator!=(const State& s, const State& t) { return !(s == t); }

 private:
  Map terms_;
};

template <typename R>
using FockState = State<R, FockGen>;
template <typename R>
using FormalState = State<R, FormalGen>;

template <typename R, typename Gen>
State<R, Gen> scale(const State<R, Gen>& s, const Rat& q) {
  return s * ring_cast<R>(q);
}

template <typename R, typename Gen>
State<R, Gen> weight_component(const State<R, Gen>& s, int n) {
  State<R, Gen> r;
  for (const auto& [m, c] : s.terms())
    if (monomial_weight(m) == n) r.add_term(m, c);
  return r;
}

template <typename R, typename Gen>
State<R, Gen> weight_truncate(const State<R, Gen>& s, int n) {
  State<R, Gen> r;
  for (const auto& [m, c] : s.terms())
    if (monomial_weight(m) <= n) r.add_term(m, c);
  return r;
}

template <typename R, typename Gen>
State<R, Gen> mul_weight_capped(const State<R, Gen>& s, const State<R, Gen>& t, int cap) {
  State<R, Gen> r;
  for (const auto& [ms, cs] : s.terms()) {
    int ws = monomial_weight(ms);
    for (const auto& [mt, ct] : t.terms()) {
      if (ws + monomial_weight(mt) > cap) continue;
      typename State<R, Gen>::Monomial m = ms;
      m.insert(m.end(), mt.begin(), mt.end());
      r.add_term(std::move(m), cs * ct);
    }
  }
  return r;
}

// exp of a state all of whose terms have weight >= 1, truncated by weight.
template <typename R, typename Gen>
State<R, Gen> exp_state(const State<R, Gen>& s, int weight_cap) {
  for (const auto& [m, c] : s.terms())
    if (monomial_weight(m) == 0)
      throw std::domain_error("exp_state: argument has a vacuum term");
  State<R, Gen> acc = State<R, Gen>::vacuum();
  State<R, Gen> term = acc;
  for (int k = 1; k <= weight_cap; ++k) {
    term = mul_weight_capped(term, s, weight_cap);
    if (term.is_zero()) break;
    State<R, Gen> scaled;
    for (const auto& [m, c] : term.terms()) scaled.add_term(m, ring_div_int(c, k));
    term = std::move(scaled);
    acc = acc + term;
  }
  return acc;
}

template <typename R>
int cohomological_degree(const FockState<R>& s) {
  if (s.is_zero()) throw std::domain_error("cohomological_degree: zero state");
  std::optional<int> deg;
  for (const auto& [m, c] : s.terms()) {
    int d = 0;
    for (const FockGen& g : m) d += gen_cohdeg(g);
    if (deg && *deg != d)
      throw std::domain_error("cohomological_degree: state is not homogeneous");
    deg = d;
  }
  return *deg;
}

// Evaluate a pure-h state as a symmetric polynomial in two variables:
// q_k(h) -> x^k + y^k. Encountering q_k(1) is an error, never a silent drop.
// Terms of weight beyond the cap are truncated away, which is sound: a weight-w
// monomial maps to a homogeneous degree-w polynomial.
template <typename R>
Series<R> rho(const FockState<R>& s, int cap) {
  Series<R> out({'x', 'y'}, cap);
  for (const auto& [m, c] : s.terms()) {
    for (const FockGen& g : m)
      if (g.cls != SurfCls::h)
        throw std::domain_error("rho: defined only on states built from q_k(h)");
    if (monomial_weight(m) > cap) continue;
    Series<R> poly = Series<R>::one({'x', 'y'}, cap);
    for (const FockGen& g : m) {
      Series<R> p({'x', 'y'}, cap);
      p.add_term({g.k, 0}, ring_one<R>());
      p.add_term({0, g.k}, ring_one<R>());
      poly = poly * p;
    }
    out = out + poly * c;
  }
  return out;
}

template <typename R>
Series<R> rho(const FockState<R>& s) {
  int cap = 0;
  for (const auto& [m, c] : s.terms()) cap = std::max(cap, monomial_weight(m));
  return rho(s, cap);
}

// c0 * 1 + c2 * h with h^2 = 0.
template <typename R>
struct CohClass {
  R c0{};
  R c2{};
};

// The target geometry: a line bundle of degree -gamma over a rational curve,
// gamma >= 2. Everything the engine needs from it is listed explicitly.
struct SurfaceModel {
  int gamma;
  explicit SurfaceModel(int g) : gamma(g) {
    if (g < 2) throw std::invalid_argument("surface model: gamma must be at least 2");
  }
  int canonical_h() const { return gamma - 2; }  // K = (gamma-2) h
  int diagonal_hh() const { return -gamma; }     // pushforward of 1 along the diagonal
  int euler() const { return 0; }
  int canonical_square() const { return 0; }
};

// Replace formal labels by their classes in the model: K -> (gamma-2) h,
// Q_{k,l}(1) -> -gamma q_k(h) q_l(h), F -> c0 q_k(1) + c2 q_k(h).
template <typename R>
FockState<R> specialize(const FormalState<R>& s, const SurfaceModel& model,
                        const std::optional<CohClass<std::type_identity_t<R>>>& line_class =
                            std::nullopt) {
  FockState<R> out;
  for (const auto& [m, c] : s.terms()) {
    FockState<R> prod = FockState<R>::vacuum(c);
    for (const FormalGen& g : m) {
      FockState<R> image;
      switch (g.cls) {
        case FormalCls::one:
          image = FockState<R>::generator({g.k, SurfCls::one});
          break;
        case FormalCls::canon:
          image = FockState<R>::generator({g.k, SurfCls::h},
                                          ring_cast<R>(Rat(model.canonical_h())));
          break;
        case FormalCls::diag:
          image.add_term({{g.k, SurfCls::h}, {g.l, SurfCls::h}},
                         ring_cast<R>(Rat(model.diagonal_hh())));
          break;
        case FormalCls::line:
          if (!line_class)
            throw std::invalid_argument("specialize: q_k(F) present but no line class given");
          image = FockState<R>::generator({g.k, SurfCls::one}, line_class->c0) +
                  FockState<R>::generator({g.k, SurfCls::h}, line_class->c2);
          break;
      }
      prod = prod * image;
      if (prod.is_zero()) break;
    }
    out = out + prod;
  }
  return out;
}

template <typename R, typename Gen>
std::string to_string(const State<R, Gen>& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    std::string cs = ring_str(c);
    if (cs.find_first_of("+-", 1) != std::string::npos) cs = "(" + cs + ")";
    out += cs + " " + monomial_str(m);
  }
  return out;
}

}  // namespace hilb
