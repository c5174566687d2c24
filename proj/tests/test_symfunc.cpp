#include "doctest.h"
#include "hilb/symfunc.hpp"

using namespace hilb;

namespace {
const std::vector<char> XY{'x', 'y'};

Series<Rat> two_var_monomial(int a, int b, int cap) {
  Series<Rat> s(XY, cap);
  s.add_term({a, b}, Rat(1));
  return s;
}
}  // namespace

TEST_CASE("power sums expand in the monomial basis") {
  SymFunc p11 = to_monomial_basis(SymFunc::power(Partition({1, 1})));
  CHECK(p11.coeffs == std::map<Partition, Rat>{{Partition({1, 1}), Rat(2)},
                                               {Partition({2}), Rat(1)}});
  SymFunc p111 = to_monomial_basis(SymFunc::power(Partition({1, 1, 1})));
  CHECK(p111.coeffs == std::map<Partition, Rat>{{Partition({1, 1, 1}), Rat(6)},
                                                {Partition({2, 1}), Rat(3)},
                                                {Partition({3}), Rat(1)}});
}

TEST_CASE("basis transitions are mutually inverse") {
  for (int n = 0; n <= 8; ++n) {
    for (const auto& lam : enumerate_partitions(n)) {
      SymFunc m = SymFunc::monomial(lam);
      CHECK(to_monomial_basis(to_power_basis(m)) == m);
      SymFunc p = SymFunc::power(lam);
      CHECK(to_power_basis(to_monomial_basis(p)) == p);
    }
  }
}

TEST_CASE("the deformed inner product is diagonal on power sums") {
  Rat alpha(1, 2);
  CHECK(jack_inner(SymFunc::power(Partition({2})), SymFunc::power(Partition({2})), alpha) ==
        2 * alpha);
  CHECK(jack_inner(SymFunc::power(Partition({1, 1})), SymFunc::power(Partition({1, 1})),
                   alpha) == 2 * alpha * alpha);
  CHECK(jack_inner(SymFunc::power(Partition({2})), SymFunc::power(Partition({1, 1})), alpha) ==
        0);
  // <m_2, m_{11}> = -alpha, computed through the transition matrices
  CHECK(jack_inner(SymFunc::monomial(Partition({2})), SymFunc::monomial(Partition({1, 1})),
                   alpha) == -alpha);
}

TEST_CASE("small Jack polynomials match the classical closed forms") {
  for (Rat alpha : {Rat(1), Rat(1, 2), Rat(1, 3)}) {
    SymFunc p2 = jack_polynomial(Partition({2}), alpha);
    CHECK(p2.coeffs.at(Partition({2})) == 1);
    CHECK(p2.coeffs.at(Partition({1, 1})) == Rat(2) / (alpha + 1));
    SymFunc p21 = jack_polynomial(Partition({2, 1}), alpha);
    CHECK(p21.coeffs.at(Partition({2, 1})) == 1);
    CHECK(p21.coeffs.at(Partition({1, 1, 1})) == Rat(6) / (alpha + 2));
    CHECK(jack_polynomial(Partition({1, 1}), alpha) == SymFunc::monomial(Partition({1, 1})));
  }
}

TEST_CASE("Jack polynomials are pairwise orthogonal and monic in the top monomial") {
  for (Rat alpha : {Rat(1), Rat(1, 2), Rat(1, 3)}) {
    for (int n = 1; n <= 8; ++n) {
      JackBasis jb(alpha, n);
      auto parts = enumerate_partitions(n);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        CHECK(jb.poly(parts[i]).coeffs.at(parts[i]) == 1);
        for (std::size_t j = i + 1; j < parts.size(); ++j)
          CHECK(jack_inner(jb.poly(parts[i]), jb.poly(parts[j]), alpha) == 0);
      }
    }
  }
}

TEST_CASE("Gram-Schmidt result does not depend on the linear extension used") {
  for (Rat alpha : {Rat(1), Rat(1, 2), Rat(1, 3)}) {
    for (int n = 2; n <= 8; ++n) {
      auto order = JackBasis::default_order(n);
      // a different extension: swap every adjacent incomparable pair once
      auto other = order;
      for (std::size_t i = 0; i + 1 < other.size(); ++i) {
        bool cmp = dominance_leq(other[i], other[i + 1]) || dominance_leq(other[i + 1], other[i]);
        if (!cmp) std::swap(other[i], other[i + 1]);
      }
      JackBasis a(alpha, n), b(alpha, n, other);
      bool differs = other != order;
      if (n >= 6) CHECK(differs);  // incomparable pairs exist from degree 6 on
      for (const auto& lam : enumerate_partitions(n)) CHECK(a.poly(lam) == b.poly(lam));
    }
  }
}

TEST_CASE("alpha = 1 gives Schur polynomials in two variables") {
  for (int n = 1; n <= 8; ++n) {
    JackBasis jb(Rat(1), n);
    for (const auto& lam : enumerate_partitions(n)) {
      Series<Rat> got = specialize_two_vars(jb.poly(lam));
      if (lam.length() <= 2) {
        int a = lam.part(0), b = lam.part(1);
        CHECK(got == schur_two_vars(a, b));
      } else {
        CHECK(got.is_zero());
      }
    }
  }
}

TEST_CASE("two-variable specializations: restriction to one variable") {
  for (Rat alpha : {Rat(1, 2), Rat(1, 3)}) {
    for (int n = 1; n <= 6; ++n) {
      JackBasis jb(alpha, n);
      for (const auto& lam : enumerate_partitions(n)) {
        Series<Rat> restricted = set_var_zero(specialize_two_vars(jb.poly(lam)), 'y');
        if (lam.length() <= 1)
          CHECK(restricted == two_var_monomial(n, 0, n));
        else
          CHECK(restricted.is_zero());
      }
    }
  }
}

TEST_CASE("column stripping in two variables") {
  // P_{(a,b)}(x,y) = (xy)^b P_{(a-b)}(x,y)
  for (Rat alpha : {Rat(1, 2), Rat(1, 3)}) {
    for (int a = 1; a <= 6; ++a) {
      for (int b = 1; b <= a && a + b <= 8; ++b) {
        Series<Rat> lhs = specialize_two_vars(jack_polynomial(Partition({a, b}), alpha));
        Partition stripped = a == b ? Partition() : Partition({a - b});
        Series<Rat> rhs = with_cap(two_var_monomial(b, b, 2 * b), a + b) *
                          with_cap(specialize_two_vars(jack_polynomial(stripped, alpha)), a + b);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("specialize_two_vars on monomial symmetric functions") {
  CHECK(specialize_two_vars(SymFunc::monomial(Partition({2}))) ==
        two_var_monomial(2, 0, 2) + two_var_monomial(0, 2, 2));
  CHECK(specialize_two_vars(SymFunc::monomial(Partition({1, 1}))) == two_var_monomial(1, 1, 2));
  CHECK(specialize_two_vars(SymFunc::monomial(Partition({2, 1}))) ==
        two_var_monomial(2, 1, 3) + two_var_monomial(1, 2, 3));
  CHECK(specialize_two_vars(SymFunc::monomial(Partition({1, 1, 1}))).is_zero());
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(jack_polynomial(Partition({2}), Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(jack_polynomial(Partition({13}), Rat(1)), std::invalid_argument);
  // alpha = -1 hits a zero norm in degree 2
  CHECK_THROWS_AS(JackBasis(Rat(-1), 2), std::domain_error);
  // an order that violates dominance is rejected
  auto bad = JackBasis::default_order(3);
  std::swap(bad.front(), bad.back());
  CHECK_THROWS_AS(JackBasis(Rat(1), 3, bad), std::invalid_argument);
  CHECK_THROWS_AS(schur_two_vars(1, 2), std::invalid_argument);
}
