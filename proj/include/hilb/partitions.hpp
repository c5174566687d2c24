#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilb/rings.hpp"

// Partitions, Young-diagram cell statistics and the fixed-point combinatorics
// built on them: arm/leg weight multisets and hook-style products for a torus
// action with weights (alpha, beta) on the two coordinate directions.

namespace hilb {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition: parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("partition: parts must be weakly decreasing");
    }
  }

  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int part(int i) const {  // 0-based, 0 beyond the length
    return i < length() ? parts_[i] : 0;
  }
  const std::vector<int>& parts() const { return parts_; }

  Partition conjugate() const {
    if (parts_.empty()) return {};
    std::vector<int> c(parts_[0], 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) ++c[j];
    return Partition(std::move(c));
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

 private:
  std::vector<int> parts_;
};

inline std::string to_string(const Partition& p) {
  std::string out = "(";
  for (int i = 0; i < p.length(); ++i) {
    if (i) out += ",";
    out += std::to_string(p.part(i));
  }
  return out + ")";
}

// All partitions of n, largest-part-first ("reverse lexicographic"):
// (n), (n-1,1), ..., (1^n). Deterministic; used as the canonical index order.
inline std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_partitions: negative n");
  std::vector<Partition> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(Partition(parts));
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

struct Bipartition {
  Partition first, second;
  int total() const { return first.size() + second.size(); }
};

inline std::string to_string(const Bipartition& bp) {
  return to_string(bp.first) + "|" + to_string(bp.second);
}

// Pairs (lambda0, lambda1) with |lambda0| + |lambda1| = n; |lambda0| ascending,
// each slot in enumerate_partitions order.
inline std::vector<Bipartition> enumerate_bipartitions(int n) {
  std::vector<Bipartition> out;
  for (int a = 0; a <= n; ++a) {
    auto first = enumerate_partitions(a);
    auto second = enumerate_partitions(n - a);
    for (const auto& f : first)
      for (const auto& s : second) out.push_back({f, s});
  }
  return out;
}

struct Cell {
  int arm, leg;
};

// Arm and leg lengths of every cell of the diagram, row by row.
inline std::vector<Cell> cells(const Partition& p) {
  std::vector<Cell> out;
  out.reserve(p.size());
  Partition conj = p.conjugate();
  for (int i = 0; i < p.length(); ++i)
    for (int j = 0; j < p.part(i); ++j)
      out.push_back({p.part(i) - 1 - j, conj.part(j) - 1 - i});
  return out;
}

// prod over cells of (alpha * leg + beta * (arm + 1)), over any ring.
template <typename R>
R hook_product(const Partition& p, const R& alpha, const R& beta) {
  R prod = ring_cast<R>(Rat(1));
  for (const Cell& c : cells(p))
    prod = prod * (alpha * ring_cast<R>(Rat(c.leg)) + beta * ring_cast<R>(Rat(c.arm + 1)));
  return prod;
}

inline Rat hook_product_rat(const Partition& p, const Rat& alpha, const Rat& beta) {
  return hook_product<Rat>(p, alpha, beta);
}

// Tangent weight multiset of a fixed point: for each cell both
// alpha*leg + beta*(arm+1) and -alpha*(leg+1) - beta*arm, sorted with multiplicity.
inline std::vector<long long> weight_multiset(const Partition& p, long long alpha,
                                              long long beta) {
  std::vector<long long> w;
  w.reserve(2 * p.size());
  for (const Cell& c : cells(p)) {
    w.push_back(alpha * c.leg + beta * (c.arm + 1));
    w.push_back(-alpha * (c.leg + 1) - beta * c.arm);
  }
  std::sort(w.begin(), w.end());
  return w;
}

inline Rat z_factor(const Partition& p) {
  Rat z = 1;
  int run = 0;
  for (int i = 0; i < p.length(); ++i) {
    ++run;
    z *= p.part(i);
    if (i + 1 == p.length() || p.part(i + 1) != p.part(i)) {
      z *= factorial(run);
      run = 0;
    }
  }
  return z;
}

// Dominance order on partitions of equal size.
inline bool dominance_leq(const Partition& a, const Partition& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominance_leq: partitions of different sizes");
  int sa = 0, sb = 0;
  for (int i = 0; i < std::max(a.length(), b.length()); ++i) {
    sa += a.part(i);
    sb += b.part(i);
    if (sa > sb) return false;
  }
  return true;
}

}  // namespace hilb
