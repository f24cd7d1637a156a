#pragma once

// Product-one membership over the infinite dihedral group via the split
// criterion: with an even number r >= 2 of reflection terms, S is product-one
// iff S = T1 T2 W1 W2 (T rotations, W reflections) with |W1| = |W2| and
// sigma(T1) + sigma(phi W1) = sigma(T2) + sigma(phi W2).

#include <cstdint>
#include <optional>
#include <vector>

#include "prodone/arith.hpp"
#include "prodone/error.hpp"
#include "prodone/sequence.hpp"

namespace prodone::dihedral {

inline constexpr std::uint64_t claim_a_default_budget = 400'000'000;  // DP bits

struct ClaimAWitness {
  Sequence t1, t2, w1, w2;
};

namespace detail {

struct Item {
  std::size_t pos;
  std::uint32_t mult;
  bool reflection;
  std::int64_t exponent;
};

// (reflection imbalance, exponent-sum imbalance) grid, one bitset row per imbalance.
class Grid {
 public:
  Grid() = default;
  Grid(std::int64_t max_count, std::int64_t max_sum) { reset(max_count, max_sum); }

  void reset(std::int64_t max_count, std::int64_t max_sum) {
    rc_ = max_count;
    rs_ = max_sum;
    words_ = static_cast<std::size_t>((2 * rs_ + 1 + 63) / 64);
    bits_.assign(static_cast<std::size_t>(2 * rc_ + 1) * words_, 0);
  }

  void clear() { std::fill(bits_.begin(), bits_.end(), 0); }

  void set(std::int64_t c, std::int64_t s) {
    std::uint64_t b = static_cast<std::uint64_t>(s + rs_);
    row(c)[b / 64] |= std::uint64_t{1} << (b % 64);
  }
  bool test(std::int64_t c, std::int64_t s) const {
    if (c < -rc_ || c > rc_ || s < -rs_ || s > rs_) return false;
    std::uint64_t b = static_cast<std::uint64_t>(s + rs_);
    return (row(c)[b / 64] >> (b % 64)) & 1u;
  }

  /// this |= src shifted by (dc, ds); bits leaving the window are dropped.
  void or_shifted(const Grid& src, std::int64_t dc, std::int64_t ds) {
    std::int64_t ncols = 2 * rs_ + 1;
    if (ds >= ncols || -ds >= ncols) return;
    for (std::int64_t c = -rc_; c <= rc_; ++c) {
      std::int64_t tc = c + dc;
      if (tc < -rc_ || tc > rc_) continue;
      or_row_shift(row(tc), src.row(c), ds);
    }
  }

  bool row_empty(std::int64_t c) const {
    const std::uint64_t* r = row(c);
    for (std::size_t w = 0; w < words_; ++w)
      if (r[w]) return false;
    return true;
  }

 private:
  std::uint64_t* row(std::int64_t c) { return bits_.data() + static_cast<std::size_t>(c + rc_) * words_; }
  const std::uint64_t* row(std::int64_t c) const { return bits_.data() + static_cast<std::size_t>(c + rc_) * words_; }

  void or_row_shift(std::uint64_t* dst, const std::uint64_t* src, std::int64_t shift) const {
    std::size_t n = words_;
    if (shift >= 0) {
      std::size_t ws = static_cast<std::size_t>(shift) / 64, bs = static_cast<std::size_t>(shift) % 64;
      for (std::size_t i = n; i-- > ws;) {
        std::uint64_t v = src[i - ws] << bs;
        if (bs && i - ws >= 1) v |= src[i - ws - 1] >> (64 - bs);
        dst[i] |= v;
      }
    } else {
      std::size_t sh = static_cast<std::size_t>(-shift);
      std::size_t ws = sh / 64, bs = sh % 64;
      for (std::size_t i = 0; i + ws < n; ++i) {
        std::uint64_t v = src[i + ws] >> bs;
        if (bs && i + ws + 1 < n) v |= src[i + ws + 1] << (64 - bs);
        dst[i] |= v;
      }
    }
    // Clear bits past the last column.
    std::size_t used = static_cast<std::size_t>(2 * rs_ + 1) % 64;
    if (used) dst[n - 1] &= (std::uint64_t{1} << used) - 1;
  }

  std::int64_t rc_ = 0, rs_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct Setup {
  std::vector<Item> items;  // reflections first, then rotations, each ascending
  std::int64_t reflections = 0;
  std::int64_t rotation_sum = 0;
  std::int64_t weight = 0;  // sum of |exponent| over terms
};

inline Setup setup(const Sequence& s) {
  if (s.group().family() != group_family::infinite_dihedral)
    throw precondition_error("dihedral membership needs an infinite-dihedral ground");
  Setup st;
  std::vector<Item> rots;
  for (std::size_t i = 0; i < s.counts().size(); ++i) {
    std::uint32_t v = s.count(i);
    if (!v) continue;
    const Element& e = s.ground()[i];
    st.weight = checked_add(st.weight, checked_mul(v, checked_abs(e.value)));
    if (e.is_reflection()) {
      st.items.push_back({i, v, true, e.value});
      st.reflections += v;
    } else {
      if (e.value != 0) rots.push_back({i, v, false, e.value});
      st.rotation_sum = checked_add(st.rotation_sum, checked_mul(v, e.value));
    }
  }
  st.items.insert(st.items.end(), rots.begin(), rots.end());
  return st;
}

inline void check_budget(const Setup& st, std::uint64_t budget) {
  double cells = double(2 * st.reflections + 1) * double(2 * st.weight + 1);
  if (cells > double(budget)) throw budget_exceeded("Claim A DP grid exceeds budget");
}

inline void apply_item(Grid& dst, const Grid& src, const Item& it) {
  dst.clear();
  for (std::int64_t c = 0; c <= it.mult; ++c) {
    std::int64_t k = 2 * c - static_cast<std::int64_t>(it.mult);
    dst.or_shifted(src, it.reflection ? k : 0, k * it.exponent);
  }
}

}  // namespace detail

/// Decides 1 in pi(S) for S over a ground in the infinite dihedral group.
inline bool is_product_one_dihedral(const Sequence& s, std::uint64_t budget = claim_a_default_budget) {
  detail::Setup st = detail::setup(s);
  if (st.reflections % 2) return false;
  if (st.reflections == 0) return st.rotation_sum == 0;
  detail::check_budget(st, budget);
  thread_local detail::Grid a, b;
  a.reset(st.reflections, st.weight);
  b.reset(st.reflections, st.weight);
  a.set(0, 0);
  for (auto& it : st.items) {
    detail::apply_item(b, a, it);
    std::swap(a, b);
  }
  return a.test(0, 0);
}

/// The lexicographically least witness: W1 (as a sorted term list) first, then T1.
inline std::optional<ClaimAWitness> decompose(const Sequence& s, std::uint64_t budget = claim_a_default_budget) {
  detail::Setup st = detail::setup(s);
  const GroundPtr& g = s.ground_ptr();
  if (st.reflections % 2) return std::nullopt;
  ClaimAWitness w{Sequence(g), Sequence(g), Sequence(g), Sequence(g)};
  if (st.reflections == 0) {
    if (st.rotation_sum != 0) return std::nullopt;
    // All rotations to T2 keeps T1 empty; identity terms go to T2 as well.
    w.t2 = s;
    return w;
  }
  detail::check_budget(st, budget);
  std::size_t n = st.items.size();
  std::vector<detail::Grid> suffix(n + 1, detail::Grid(st.reflections, st.weight));
  suffix[n].set(0, 0);
  for (std::size_t i = n; i-- > 0;) detail::apply_item(suffix[i], suffix[i + 1], st.items[i]);
  if (!suffix[0].test(0, 0)) return std::nullopt;

  std::int64_t cur_c = 0, cur_s = 0;
  auto feasible = [&](std::size_t i, std::int64_t c, std::int64_t sum) { return suffix[i + 1].test(-c, -sum); };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& it = st.items[i];
    std::int64_t v = it.mult;
    std::optional<std::int64_t> pick;
    auto contrib = [&](std::int64_t c) {
      std::int64_t k = 2 * c - v;
      return std::pair{cur_c + (it.reflection ? k : 0), cur_s + k * it.exponent};
    };
    if (it.reflection) {
      for (std::int64_t c = v; c >= 0 && !pick; --c) {
        auto [nc, ns] = contrib(c);
        if (feasible(i, nc, ns)) pick = c;
      }
    } else {
      // Prefer the smallest count after which the remaining rotations can all go to T2.
      std::int64_t rest = 0;
      for (std::size_t j = i + 1; j < n; ++j) rest = checked_add(rest, checked_mul(st.items[j].mult, st.items[j].exponent));
      for (std::int64_t c = 0; c <= v && !pick; ++c) {
        auto [nc, ns] = contrib(c);
        if (nc == 0 && ns - rest == 0) pick = c;
      }
      for (std::int64_t c = v; c >= 0 && !pick; --c) {
        auto [nc, ns] = contrib(c);
        if (feasible(i, nc, ns)) pick = c;
      }
    }
    if (!pick) throw error("decompose: inconsistent suffix table");
    std::tie(cur_c, cur_s) = contrib(*pick);
    auto c1 = static_cast<std::uint32_t>(*pick), c2 = static_cast<std::uint32_t>(v - *pick);
    if (it.reflection) {
      if (c1) w.w1 = w.w1.with(it.pos, c1);
      if (c2) w.w2 = w.w2.with(it.pos, c2);
    } else {
      if (c1) w.t1 = w.t1.with(it.pos, c1);
      if (c2) w.t2 = w.t2.with(it.pos, c2);
    }
  }
  // Identity terms carry no exponent; keep them in T2.
  for (std::size_t i = 0; i < s.counts().size(); ++i)
    if (s.count(i) && s.ground()[i] == Element::rot(0)) w.t2 = w.t2.with(i, s.count(i));
  return w;
}

/// Checks the witness equations directly.
inline bool check_witness(const Sequence& s, const ClaimAWitness& w) {
  if (w.t1.concat(w.t2).concat(w.w1).concat(w.w2) != s) return false;
  std::int64_t lhs = 0, rhs = 0;
  for (std::size_t i = 0; i < s.counts().size(); ++i) {
    std::int64_t e = s.ground()[i].value;
    bool refl = s.ground()[i].is_reflection();
    if (refl && (w.t1.count(i) || w.t2.count(i))) return false;
    if (!refl && (w.w1.count(i) || w.w2.count(i))) return false;
    lhs = checked_add(lhs, checked_mul(w.t1.count(i) + w.w1.count(i), e));
    rhs = checked_add(rhs, checked_mul(w.t2.count(i) + w.w2.count(i), e));
  }
  return w.w1.length() == w.w2.length() && lhs == rhs;
}

}  // namespace prodone::dihedral
