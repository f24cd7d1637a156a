#pragma once

// Every multiset over a ground with |S| <= B, built by length. For each one we
// keep the product-one flag, the atom flag and the set of lengths L(S).

#include <bitset>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "prodone/dihedral/claim_a.hpp"
#include "prodone/error.hpp"
#include "prodone/parallel.hpp"
#include "prodone/product.hpp"
#include "prodone/sequence.hpp"

namespace prodone {

class SequenceScan {
 public:
  using Lengths = std::bitset<128>;
  static constexpr std::uint32_t max_bound = 127;
  static constexpr std::uint64_t default_budget = 20'000'000;  // entries

  SequenceScan(GroundPtr ground, std::uint32_t bound, std::uint64_t budget = default_budget)
      : ground_(std::move(ground)), bound_(bound) {
    if (bound_ > max_bound) throw precondition_error("scan bound above 127");
    const std::size_t n = ground_->size();
    // Packed key: sum c_i (B+1)^i.
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < n; ++i) {
      strides_.push_back(s);
      if (__builtin_mul_overflow(s, std::uint64_t{bound_} + 1, &s)) throw budget_exceeded("scan key does not fit 64 bits");
    }
    // C(n + B, B) entries.
    double total = 1;
    for (std::uint32_t k = 1; k <= bound_; ++k) total = total * double(n + k) / double(k);
    if (total > double(budget)) throw budget_exceeded("scan has too many sequences");

    for (std::uint32_t len = 0; len <= bound_; ++len) {
      layers_.push_back(seqs_.size());
      for_each_multiset_of_length(n, len, [&](const Multiplicities& m) {
        index_.emplace(key(m), static_cast<std::uint32_t>(seqs_.size()));
        seqs_.push_back(m);
      });
    }
    layers_.push_back(seqs_.size());
    one_.assign(seqs_.size(), 0);
    atom_.assign(seqs_.size(), 0);
    lengths_.assign(seqs_.size(), Lengths{});
    compute_product_one();
    for (std::uint32_t len = 1; len <= bound_; ++len)
      parallel_for(layers_[len + 1] - layers_[len], [&](std::uint64_t k) { analyse(layers_[len] + k); }, 16);
  }

  const GroundPtr& ground() const { return ground_; }
  std::uint32_t bound() const { return bound_; }
  std::size_t size() const { return seqs_.size(); }
  const Multiplicities& counts(std::size_t i) const { return seqs_[i]; }
  Sequence sequence(std::size_t i) const { return Sequence(ground_, seqs_[i]); }
  std::uint32_t length(std::size_t i) const {
    std::uint32_t l = 0;
    for (auto c : seqs_[i]) l += c;
    return l;
  }
  bool product_one(std::size_t i) const { return one_[i]; }
  bool atom(std::size_t i) const { return atom_[i]; }
  const Lengths& lengths(std::size_t i) const { return lengths_[i]; }
  /// Indices of sequences of length exactly len.
  std::pair<std::size_t, std::size_t> layer(std::uint32_t len) const { return {layers_[len], layers_[len + 1]}; }

  std::optional<std::size_t> find(const Multiplicities& m) const {
    std::uint64_t len = 0;
    for (auto c : m) len += c;
    if (m.size() != ground_->size() || len > bound_) return std::nullopt;
    auto it = index_.find(key(m));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Sequence> atoms() const {
    std::vector<Sequence> r;
    for (std::size_t i = 0; i < size(); ++i)
      if (atom_[i]) r.push_back(sequence(i));
    return r;
  }

 private:
  std::uint64_t key(const Multiplicities& m) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < m.size(); ++i) k += m[i] * strides_[i];
    return k;
  }
  std::uint32_t at(std::uint64_t k) const { return index_.at(k); }

  void compute_product_one() {
    const Group& g = ground_->group();
    if (g.is_finite()) {
      finite_product_sets();
      return;
    }
    parallel_for(size(), [&](std::uint64_t i) {
      Sequence s(ground_, seqs_[i]);
      one_[i] = g.family() == group_family::infinite_dihedral ? dihedral::is_product_one_dihedral(s) : is_product_one(s);
    }, 256);
  }

  // pi(S) as a bitset over the group, layer by layer: pi(S) = U_g pi(S - g) g.
  void finite_product_sets() {
    const Group& g = ground_->group();
    const std::size_t order = g.order(), words = (order + 63) / 64, n = ground_->size();
    std::vector<std::vector<std::uint32_t>> rmul(n, std::vector<std::uint32_t>(order));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t x = 0; x < order; ++x)
        rmul[p][x] = static_cast<std::uint32_t>(g.mul(Element::fin(std::int64_t(x)), (*ground_)[p]).value);
    const auto id = static_cast<std::size_t>(g.identity().value);
    std::vector<std::uint64_t> prev(words, 0), cur;
    prev[id / 64] |= std::uint64_t{1} << (id % 64);
    one_[0] = 1;
    for (std::uint32_t len = 1; len <= bound_; ++len) {
      std::size_t lo = layers_[len], hi = layers_[len + 1], plo = layers_[len - 1];
      cur.assign((hi - lo) * words, 0);
      parallel_for(hi - lo, [&](std::uint64_t k) {
        const Multiplicities& m = seqs_[lo + k];
        std::uint64_t key_s = key(m);
        std::uint64_t* dst = &cur[k * words];
        for (std::size_t p = 0; p < n; ++p) {
          if (!m[p]) continue;
          const std::uint64_t* src = &prev[(at(key_s - strides_[p]) - plo) * words];
          for (std::size_t x = 0; x < order; ++x)
            if (src[x / 64] >> (x % 64) & 1) dst[rmul[p][x] / 64] |= std::uint64_t{1} << (rmul[p][x] % 64);
        }
        one_[lo + k] = dst[id / 64] >> (id % 64) & 1;
      }, 64);
      prev.swap(cur);
    }
  }

  // Splits S = T (S - T) with T holding the first support element. T atomic and
  // S - T product-one contributes L(S - T) + 1.
  void analyse(std::size_t i) {
    if (!one_[i]) return;
    const Multiplicities& m = seqs_[i];
    std::vector<std::size_t> pos;
    for (std::size_t p = 0; p < m.size(); ++p)
      if (m[p]) pos.push_back(p);
    const std::uint64_t ks = key(m);
    std::vector<std::uint32_t> cur(pos.size(), 0);
    cur[0] = 1;
    std::uint64_t kt = strides_[pos[0]];
    bool split = false;
    Lengths L;
    for (;;) {
      if (kt != ks) {
        std::uint32_t t = at(kt), r = at(ks - kt);
        if (one_[t] && one_[r]) {
          split = true;
          if (atom_[t]) L |= lengths_[r] << 1;
        }
      }
      std::size_t d = 0;
      for (; d < pos.size(); ++d) {
        if (cur[d] < m[pos[d]]) {
          ++cur[d];
          kt += strides_[pos[d]];
          break;
        }
        std::uint32_t floor = d == 0 ? 1 : 0;
        kt -= (cur[d] - floor) * strides_[pos[d]];
        cur[d] = floor;
      }
      if (d == pos.size()) break;
    }
    if (!split) {
      atom_[i] = 1;
      L.set(1);
    }
    lengths_[i] = L;
  }

  GroundPtr ground_;
  std::uint32_t bound_;
  std::vector<std::uint64_t> strides_;
  std::vector<Multiplicities> seqs_;
  std::vector<std::size_t> layers_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<char> one_, atom_;
  std::vector<Lengths> lengths_;
};

}  // namespace prodone
