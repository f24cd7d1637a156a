#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "prodone/dihedral/claim_a.hpp"
#include "prodone/error.hpp"
#include "prodone/group.hpp"
#include "prodone/sequence.hpp"

namespace prodone {

/// pi(S) as a sorted element set.
using ProductSet = std::vector<Element>;

inline constexpr std::uint64_t default_perm_budget = 8;
inline constexpr std::uint64_t default_dp_budget = 2'000'000;

/// Slow oracle: folds every distinct ordering of the terms.
inline ProductSet product_set_perm(const Sequence& s, std::uint64_t max_len = default_perm_budget) {
  if (s.length() > max_len) throw budget_exceeded("permutation oracle: sequence longer than budget");
  const Group& g = s.group();
  std::vector<Element> t = s.terms();
  std::set<Element> out;
  do {
    Element acc = g.identity();
    for (auto& x : t) acc = g.mul(acc, x);
    out.insert(acc);
  } while (std::next_permutation(t.begin(), t.end()));
  return {out.begin(), out.end()};
}

namespace detail {

// Set of elements of a finite group as a bitset over indices.
struct FiniteArena {
  const Group* g;
  std::size_t n, words;
  std::vector<std::vector<std::uint32_t>> right;  // right[pos][x] = x * ground[pos]

  FiniteArena(const Sequence& s) : g(&s.group()), n(s.group().order()), words((n + 63) / 64) {
    right.resize(s.ground().size());
    for (std::size_t p = 0; p < s.ground().size(); ++p) {
      if (!s.count(p)) continue;
      auto gp = static_cast<std::size_t>(s.ground()[p].value);
      right[p].resize(n);
      for (std::size_t x = 0; x < n; ++x) right[p][x] = g->table_at(x, gp);
    }
  }
  void identity(std::uint64_t* d) const {
    auto e = static_cast<std::size_t>(g->identity().value);
    d[e / 64] |= std::uint64_t{1} << (e % 64);
  }
  void or_mul(std::uint64_t* d, const std::uint64_t* src, std::size_t pos) const {
    const auto& r = right[pos];
    for (std::size_t w = 0; w < words; ++w)
      for (std::uint64_t b = src[w]; b; b &= b - 1) {
        std::size_t x = w * 64 + static_cast<std::size_t>(std::countr_zero(b));
        std::uint32_t y = r[x];
        d[y / 64] |= std::uint64_t{1} << (y % 64);
      }
  }
  bool has_identity(const std::uint64_t* d) const {
    auto e = static_cast<std::size_t>(g->identity().value);
    return (d[e / 64] >> (e % 64)) & 1u;
  }
  void elements(const std::uint64_t* d, ProductSet& out) const {
    for (std::size_t w = 0; w < words; ++w)
      for (std::uint64_t b = d[w]; b; b &= b - 1)
        out.push_back(Element::fin(static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(b)))));
  }
};

// Integers or D_inf: exponents live in [-W, W] with W the total absolute
// exponent of S; a set is one window (integers) or a rotation window followed
// by a reflection window.
struct WindowArena {
  bool dihedral;
  std::int64_t w;
  std::size_t half_words, words;
  std::vector<Element> ground;

  WindowArena(const Sequence& s) : dihedral(s.group().family() == group_family::infinite_dihedral), w(0) {
    for (std::size_t p = 0; p < s.counts().size(); ++p)
      w = checked_add(w, checked_mul(s.count(p), checked_abs(s.ground()[p].value)));
    half_words = static_cast<std::size_t>((2 * w + 1 + 63) / 64);
    words = dihedral ? 2 * half_words : half_words;
    ground = s.ground().elements();
  }
  void identity(std::uint64_t* d) const { set_bit(d, static_cast<std::size_t>(w)); }
  static void set_bit(std::uint64_t* d, std::size_t b) { d[b / 64] |= std::uint64_t{1} << (b % 64); }

  void or_shift(std::uint64_t* dst, const std::uint64_t* src, std::int64_t shift) const {
    std::size_t n = half_words;
    if (shift >= 0) {
      std::size_t ws = static_cast<std::size_t>(shift) / 64, bs = static_cast<std::size_t>(shift) % 64;
      for (std::size_t i = n; i-- > ws;) {
        std::uint64_t v = src[i - ws] << bs;
        if (bs && i - ws >= 1) v |= src[i - ws - 1] >> (64 - bs);
        dst[i] |= v;
      }
    } else {
      std::size_t sh = static_cast<std::size_t>(-shift), ws = sh / 64, bs = sh % 64;
      for (std::size_t i = 0; i + ws < n; ++i) {
        std::uint64_t v = src[i + ws] >> bs;
        if (bs && i + ws + 1 < n) v |= src[i + ws + 1] << (64 - bs);
        dst[i] |= v;
      }
    }
  }
  void or_mul(std::uint64_t* d, const std::uint64_t* src, std::size_t pos) const {
    const Element& g = ground[pos];
    if (!dihedral) return or_shift(d, src, g.value);
    const std::uint64_t* src_rot = src;
    const std::uint64_t* src_ref = src + half_words;
    std::uint64_t* d_rot = d;
    std::uint64_t* d_ref = d + half_words;
    if (g.is_rotation()) {
      or_shift(d_rot, src_rot, g.value);   // a^x a^k = a^(x+k)
      or_shift(d_ref, src_ref, -g.value);  // a^x t a^k = a^(x-k) t
    } else {
      or_shift(d_ref, src_rot, g.value);   // a^x a^k t = a^(x+k) t
      or_shift(d_rot, src_ref, -g.value);  // a^x t a^k t = a^(x-k)
    }
  }
  bool has_identity(const std::uint64_t* d) const {
    auto b = static_cast<std::size_t>(w);
    return (d[b / 64] >> (b % 64)) & 1u;
  }
  void elements(const std::uint64_t* d, ProductSet& out) const {
    for (int half = 0; half < (dihedral ? 2 : 1); ++half)
      for (std::size_t i = 0; i < half_words; ++i)
        for (std::uint64_t b = d[half * half_words + i]; b; b &= b - 1) {
          std::int64_t k = static_cast<std::int64_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(b))) - w;
          out.push_back(!dihedral ? Element::integer(k) : half ? Element::refl(k) : Element::rot(k));
        }
  }
};

// Bottom-up over the lattice: reach(T) = union over g in supp(T) of reach(T - g) * g.
template <class Arena>
void run_lattice_dp(const SubsequenceLattice& lat, const Arena& ar, std::vector<std::uint64_t>& data, std::uint64_t budget) {
  const std::size_t words = ar.words;
  if (double(lat.size()) * double(words) > 256e6) throw budget_exceeded("product DP table exceeds memory budget");
  data.assign(lat.size() * words, 0);
  ar.identity(data.data());
  const std::size_t k = lat.digits();
  std::vector<std::uint32_t> cur(k, 0);
  std::uint64_t pairs = 1;
  for (std::uint64_t idx = 1; idx < lat.size(); ++idx) {
    for (std::size_t d = 0; d < k; ++d) {
      if (++cur[d] < lat.radices()[d]) break;
      cur[d] = 0;
    }
    std::uint64_t* dst = data.data() + idx * words;
    for (std::size_t d = 0; d < k; ++d)
      if (cur[d]) ar.or_mul(dst, data.data() + (idx - lat.strides()[d]) * words, lat.positions()[d]);
    for (std::size_t w = 0; w < words; ++w) pairs += static_cast<std::uint64_t>(std::popcount(dst[w]));
    if (pairs > budget) throw budget_exceeded("product DP exceeds (sub-multiset, element) budget");
  }
}

template <class F>
decltype(auto) with_arena(const Sequence& s, F&& f) {
  if (s.group().is_finite()) {
    FiniteArena ar(s);
    return f(ar);
  }
  WindowArena ar(s);
  return f(ar);
}

}  // namespace detail

/// Fast evaluator of pi(S) by DP over sub-multisets.
inline ProductSet product_set_dp(const Sequence& s, std::uint64_t budget = default_dp_budget) {
  SubsequenceLattice lat(s.counts(), budget);
  return detail::with_arena(s, [&](auto& ar) {
    thread_local std::vector<std::uint64_t> data;
    detail::run_lattice_dp(lat, ar, data, budget);
    ProductSet out;
    ar.elements(data.data() + lat.top() * ar.words, out);
    std::sort(out.begin(), out.end());
    return out;
  });
}

/// Product-one flags for every sub-multiset of S, indexed by the lattice.
struct ProductOneLattice {
  SubsequenceLattice lattice;
  std::vector<std::uint8_t> one;

  bool operator[](std::uint64_t idx) const { return one[idx]; }
};

inline ProductOneLattice product_one_lattice(const Sequence& s, std::uint64_t budget = default_dp_budget) {
  ProductOneLattice r{SubsequenceLattice(s.counts(), budget), {}};
  detail::with_arena(s, [&](auto& ar) {
    thread_local std::vector<std::uint64_t> data;
    detail::run_lattice_dp(r.lattice, ar, data, budget);
    r.one.resize(r.lattice.size());
    for (std::uint64_t i = 0; i < r.lattice.size(); ++i) r.one[i] = ar.has_identity(data.data() + i * ar.words);
    return 0;
  });
  return r;
}

/// Membership through the generic DP only; the oracle side of cross-checks.
inline bool is_product_one_generic(const Sequence& s, std::uint64_t budget = default_dp_budget) {
  SubsequenceLattice lat(s.counts(), budget);
  return detail::with_arena(s, [&](auto& ar) {
    thread_local std::vector<std::uint64_t> data;
    detail::run_lattice_dp(lat, ar, data, budget);
    return ar.has_identity(data.data() + lat.top() * ar.words);
  });
}

/// 1 in pi(S). Dihedral grounds go to the split criterion; commuting supports
/// reduce to a single product.
inline bool is_product_one(const Sequence& s, std::uint64_t budget = default_dp_budget) {
  const Group& g = s.group();
  if (g.family() == group_family::infinite_dihedral) return dihedral::is_product_one_dihedral(s);
  if (g.family() == group_family::integers) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < s.counts().size(); ++i) sum = checked_add(sum, checked_mul(s.count(i), s.ground()[i].value));
    return sum == 0;
  }
  auto supp = s.support();
  bool commuting = true;
  for (std::size_t a = 0; a < supp.size() && commuting; ++a)
    for (std::size_t b = a + 1; b < supp.size() && commuting; ++b)
      commuting = g.commute(s.ground()[supp[a]], s.ground()[supp[b]]);
  if (commuting) {
    Element acc = g.identity();
    for (auto p : supp) acc = g.mul(acc, g.power(s.ground()[p], s.count(p)));
    return acc == g.identity();
  }
  return is_product_one_generic(s, budget);
}

/// No nonempty T | S with 1 in pi(T).
inline bool is_product_one_free(const Sequence& s, std::uint64_t budget = default_dp_budget) {
  auto pol = product_one_lattice(s, budget);
  for (std::uint64_t i = 1; i < pol.lattice.size(); ++i)
    if (pol.one[i]) return false;
  return true;
}

inline nlohmann::json to_json(const Group& g, const ProductSet& p) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& e : p) j.push_back(g.format(e));
  return j;
}

}  // namespace prodone
