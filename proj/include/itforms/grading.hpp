#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "itforms/errors.hpp"

namespace itforms {

// A chart with n polynomial coordinates and iteration depth k. All algebra
// elements live inside Lambda_{k+1}, i.e. there are k+1 differential slots
// d_1,...,d_{k+1}; Lambda_k is the sub-algebra whose generators avoid slot
// k+1. k is capped so that subset labels fit in one machine word.
struct ChartSpec {
  int n = 1;
  int k = 1;
  std::vector<std::string> coord_names;  // empty => x1..xn

  static constexpr int kMaxDepth = 16;

  ChartSpec() = default;
  ChartSpec(int n_, int k_) : n(n_), k(k_) { validate(); }

  void validate() const {
    if (n < 1) throw UsageError("chart: n must be >= 1");
    if (k < 1 || k > kMaxDepth)
      throw UsageError("chart: k must be in [1," + std::to_string(kMaxDepth) + "]");
    if (!coord_names.empty()) {
      if (static_cast<int>(coord_names.size()) != n)
        throw UsageError("chart: expected " + std::to_string(n) + " names");
      for (size_t i = 0; i < coord_names.size(); ++i)
        for (size_t j = i + 1; j < coord_names.size(); ++j)
          if (coord_names[i] == coord_names[j])
            throw UsageError("chart: duplicate coordinate name " + coord_names[i]);
    }
  }

  int slots() const { return k + 1; }

  std::string coord_name(int mu) const {  // mu is 1-based
    if (mu < 1 || mu > n) throw UsageError("coordinate index out of range");
    if (!coord_names.empty()) return coord_names[mu - 1];
    return "x" + std::to_string(mu);
  }

  bool operator==(const ChartSpec& o) const { return n == o.n && k == o.k; }
  bool operator!=(const ChartSpec& o) const { return !(*this == o); }
};

inline void require_same_chart(const ChartSpec& a, const ChartSpec& b) {
  if (a != b) throw ChartMismatchError("chart mismatch (n,k differ)");
}

// Subset of {1,...,k+1} as a bitmask; bit (l-1) encodes slot l.
using SubsetMask = std::uint32_t;

inline int subset_size(SubsetMask m) { return std::popcount(m); }
inline bool subset_parity_odd(SubsetMask m) { return std::popcount(m) & 1; }
inline bool mask_has_slot(SubsetMask m, int slot) { return (m >> (slot - 1)) & 1u; }
inline SubsetMask mask_with_slot(SubsetMask m, int slot) { return m | (1u << (slot - 1)); }
inline SubsetMask slot_bit(int slot) { return 1u << (slot - 1); }

inline std::vector<int> mask_slots(SubsetMask m) {
  std::vector<int> out;
  for (int l = 1; m; ++l, m >>= 1)
    if (m & 1u) out.push_back(l);
  return out;
}

inline SubsetMask mask_from_slots(const std::vector<int>& slots, int max_slot) {
  SubsetMask m = 0;
  for (int l : slots) {
    if (l < 1 || l > max_slot)
      throw UsageError("slot " + std::to_string(l) + " out of range [1," +
                       std::to_string(max_slot) + "]");
    if (mask_has_slot(m, l)) throw UsageError("repeated slot in subset label");
    m = mask_with_slot(m, l);
  }
  return m;
}

// Degree vector in Z^{k+1}; entry (l-1) is the degree with respect to d_l.
// Entries go negative for derivations.
struct MultiDegree {
  std::vector<int> e;

  MultiDegree() = default;
  explicit MultiDegree(int slots) : e(slots, 0) {}
  static MultiDegree of_mask(SubsetMask m, int slots) {
    MultiDegree d(slots);
    for (int l = 1; l <= slots; ++l)
      if (mask_has_slot(m, l)) d.e[l - 1] = 1;
    return d;
  }

  int slots() const { return static_cast<int>(e.size()); }
  int at(int slot) const { return e[slot - 1]; }

  MultiDegree& operator+=(const MultiDegree& o) {
    if (e.size() != o.e.size()) throw UsageError("multidegree length mismatch");
    for (size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
    return *this;
  }
  MultiDegree& operator-=(const MultiDegree& o) {
    if (e.size() != o.e.size()) throw UsageError("multidegree length mismatch");
    for (size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
    return *this;
  }
  friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) { return a += b; }
  friend MultiDegree operator-(MultiDegree a, const MultiDegree& b) { return a -= b; }
  friend MultiDegree operator*(int c, MultiDegree a) {
    for (auto& x : a.e) x *= c;
    return a;
  }
  bool operator==(const MultiDegree& o) const { return e == o.e; }
  bool operator<(const MultiDegree& o) const { return e < o.e; }
  bool is_zero() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
  }
};

inline long long dot(const MultiDegree& g, const MultiDegree& h) {
  if (g.e.size() != h.e.size()) throw UsageError("multidegree length mismatch");
  long long s = 0;
  for (size_t i = 0; i < g.e.size(); ++i) s += static_cast<long long>(g.e[i]) * h.e[i];
  return s;
}

// Commutation factor of the Z^{k+1} grading: homogeneous a,b of degrees g,h
// satisfy ab = commutation_sign(g,h) * ba.
inline int commutation_sign(const MultiDegree& g, const MultiDegree& h) {
  return (dot(g, h) & 1) ? -1 : +1;
}

// Koszul sign accumulated when the sequence `degrees` is rearranged by
// `perm`: item i of the output is degrees[perm[i]]. Product of pairwise
// commutation signs over inverted pairs.
inline int reorder_sign(const std::vector<MultiDegree>& degrees,
                        const std::vector<int>& perm) {
  const size_t n = degrees.size();
  if (perm.size() != n) throw UsageError("reorder_sign: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<size_t>(p) >= n || seen[p])
      throw UsageError("reorder_sign: invalid permutation");
    seen[p] = true;
  }
  int sign = 1;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) sign *= commutation_sign(degrees[perm[i]], degrees[perm[j]]);
  return sign;
}

// Slot permutation sigma on {1..slots}; image of slot l is sigma[l-1].
inline std::vector<int> identity_slot_perm(int slots) {
  std::vector<int> p(slots);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

inline void validate_slot_perm(const std::vector<int>& sigma, int slots) {
  if (static_cast<int>(sigma.size()) != slots)
    throw UsageError("slot permutation has wrong length");
  std::vector<bool> seen(slots, false);
  for (int v : sigma) {
    if (v < 1 || v > slots || seen[v - 1])
      throw UsageError("invalid slot permutation");
    seen[v - 1] = true;
  }
}

inline SubsetMask permute_mask(const std::vector<int>& sigma, SubsetMask m) {
  SubsetMask out = 0;
  for (int l = 1; l <= static_cast<int>(sigma.size()); ++l)
    if (mask_has_slot(m, l)) out = mask_with_slot(out, sigma[l - 1]);
  return out;
}

inline std::string mask_to_string(SubsetMask m) {
  std::string s = "[";
  bool first = true;
  for (int l : mask_slots(m)) {
    if (!first) s += ",";
    s += std::to_string(l);
    first = false;
  }
  return s + "]";
}

}  // namespace itforms
