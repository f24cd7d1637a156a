#pragma once

// Factorizations of a product-one sequence into atoms from an inventory,
// distances between factorizations, and catenary degrees.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include <json.hpp>

#include "prodone/inventory.hpp"
#include "prodone/product.hpp"

namespace prodone {

using Factorization = std::vector<std::uint32_t>;  // sorted atom indices
using Lengths = std::bitset<128>;

inline constexpr std::uint64_t default_factorization_budget = 2'000'000;

struct FactorizationSet {
  Sequence target;
  std::vector<Factorization> factorizations;  // ascending
  std::vector<std::uint64_t> lengths;         // ascending, distinct

  nlohmann::json to_json(const AtomInventory& inv) const {
    nlohmann::json zs = nlohmann::json::array();
    for (auto& z : factorizations) {
      nlohmann::json f = nlohmann::json::array();
      for (auto a : z) f.push_back(inv.atoms[a].to_string());
      zs.push_back(f);
    }
    return {{"target", target.to_string()}, {"factorizations", zs}, {"count", factorizations.size()}, {"lengths", lengths}};
  }
};

/// d(z, z') = max(|z|, |z'|) - |gcd(z, z')|.
inline std::uint64_t distance(const Factorization& a, const Factorization& b) {
  std::size_t common = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) ++common, ++i, ++j;
    else if (a[i] < b[j]) ++i;
    else ++j;
  }
  return std::max(a.size(), b.size()) - common;
}

namespace detail {

/// Atoms of the inventory dividing S, as lattice indices.
struct PeelContext {
  ProductOneLattice pol;
  std::vector<std::uint32_t> atom_ids;
  std::vector<std::uint64_t> atom_idx;

  PeelContext(const Sequence& s, const AtomInventory& inv, std::uint64_t budget) : pol(product_one_lattice(s, budget)) {
    if (!inv.certificate.covers(s.length())) throw precondition_error("atom inventory does not cover the sequence length");
    if (!(*inv.ground == s.ground())) throw precondition_error("inventory and sequence have different grounds");
    for (std::uint32_t k = 0; k < inv.atoms.size(); ++k)
      if (inv.atoms[k].divides(s)) {
        atom_ids.push_back(k);
        atom_idx.push_back(pol.lattice.index_of(inv.atoms[k].counts()));
      }
  }
};

}  // namespace detail

/// Z(S) by peeling atoms with non-decreasing inventory index.
inline FactorizationSet factorizations(const Sequence& s, const AtomInventory& inv,
                                       std::uint64_t budget = default_factorization_budget) {
  if (!is_product_one(s)) throw precondition_error("factorizations need a product-one sequence");
  detail::PeelContext ctx(s, inv, std::max<std::uint64_t>(budget, default_dp_budget));
  const auto& lat = ctx.pol.lattice;
  FactorizationSet fs{s, {}, {}};
  Factorization cur;
  std::function<void(std::uint64_t, std::size_t)> rec = [&](std::uint64_t rem, std::size_t from) {
    if (rem == 0) {
      fs.factorizations.push_back(cur);
      if (fs.factorizations.size() > budget) throw budget_exceeded("too many factorizations");
      return;
    }
    for (std::size_t k = from; k < ctx.atom_ids.size(); ++k) {
      std::uint64_t a = ctx.atom_idx[k];
      if (a > rem || !lat.leq(a, rem) || !ctx.pol[rem - a]) continue;
      cur.push_back(ctx.atom_ids[k]);
      rec(rem - a, k);
      cur.pop_back();
    }
  };
  rec(lat.top(), 0);
  std::sort(fs.factorizations.begin(), fs.factorizations.end());
  std::set<std::uint64_t> ls;
  for (auto& z : fs.factorizations) ls.insert(z.size());
  fs.lengths.assign(ls.begin(), ls.end());
  return fs;
}

/// Least N joining all of Z(S) by steps of distance <= N; 0 when |Z(S)| <= 1.
inline std::uint64_t catenary_degree(const std::vector<Factorization>& z) {
  if (z.size() <= 1) return 0;
  struct Edge {
    std::uint64_t d;
    std::uint32_t a, b;
  };
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < z.size(); ++i)
    for (std::uint32_t j = i + 1; j < z.size(); ++j) edges.push_back({distance(z[i], z[j]), i, j});
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.d < y.d; });
  std::vector<std::uint32_t> parent(z.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = z.size();
  for (auto& e : edges) {
    auto ra = find(e.a), rb = find(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    if (--comps == 1) return e.d;
  }
  return 0;
}

inline std::uint64_t catenary_degree(const FactorizationSet& fs) { return catenary_degree(fs.factorizations); }

/// L(T) for every sub-multiset T of S, indexed by the lattice of S.
struct LengthLattice {
  ProductOneLattice pol;
  std::vector<Lengths> lengths;
};

inline LengthLattice length_lattice(const Sequence& s, const AtomInventory& inv, std::uint64_t budget = default_dp_budget) {
  if (s.length() >= 128) throw precondition_error("length lattice needs |S| < 128");
  detail::PeelContext ctx(s, inv, budget);
  const auto& lat = ctx.pol.lattice;
  LengthLattice r{ctx.pol, std::vector<Lengths>(lat.size())};
  r.lengths[0].set(0);
  // Index order is a linear extension of divisibility, so L(T - A) is ready.
  for (std::uint64_t t = 1; t < lat.size(); ++t) {
    if (!ctx.pol[t]) continue;
    std::size_t first = 0;
    while (lat.digit(t, first) == 0) ++first;
    Lengths L;
    for (std::size_t k = 0; k < ctx.atom_ids.size(); ++k) {
      std::uint64_t a = ctx.atom_idx[k];
      if (a > t || lat.digit(a, first) == 0 || !lat.leq(a, t) || !ctx.pol[t - a]) continue;
      L |= r.lengths[t - a] << 1;
    }
    r.lengths[t] = L;
  }
  return r;
}

inline std::vector<std::uint64_t> to_vector(const Lengths& l) {
  std::vector<std::uint64_t> v;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i]) v.push_back(i);
  return v;
}

}  // namespace prodone
