#pragma once

// Atoms of B(G0) and the Davenport constant.
//
// Commuting grounds use the classical route: every atom is S g with S
// product-one free and g closing the product. Without commutativity an atom
// minus a term can still hold a product-one subsequence, so there the atoms are
// read off a full scan of all multisets up to the length bound.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "prodone/dihedral/closed_forms.hpp"
#include "prodone/dihedral/ground.hpp"
#include "prodone/inventory.hpp"
#include "prodone/product.hpp"
#include "prodone/scan.hpp"

namespace prodone {

/// S is product-one and admits no split into two nonempty product-one parts.
inline bool is_atom(const Sequence& s, std::uint64_t budget = default_dp_budget) {
  if (!is_product_one(s, budget)) throw precondition_error("is_atom needs a product-one sequence");
  if (s.empty()) return false;
  if (s.group().family() == group_family::infinite_dihedral) {
    // Claim A per sub-multiset; the window DP can be wide for large exponents.
    SubsequenceLattice lat(s.counts(), budget);
    bool split = false;
    lat.for_each_below(lat.top(), [&](std::uint64_t t) {
      if (split || t == 0 || t == lat.top() || t > lat.top() - t) return;
      Sequence a(s.ground_ptr(), lat.counts_of(t, s.ground().size()));
      if (dihedral::is_product_one_dihedral(a) && dihedral::is_product_one_dihedral(s.subtract(a))) split = true;
    });
    return !split;
  }
  auto pol = product_one_lattice(s, budget);
  for (std::uint64_t t = 1; t < pol.lattice.top(); ++t)
    if (pol[t] && pol[pol.lattice.top() - t]) return false;
  return true;
}

struct AtomMode {
  bool exact = true;
  std::uint64_t max_len = 0;  // only when !exact

  static AtomMode exact_mode() { return {true, 0}; }
  static AtomMode max_length(std::uint64_t l) { return {false, l}; }
};

namespace detail {

inline bool ground_commutes(const GroundSet& g) {
  if (g.group().family() == group_family::infinite_dihedral)
    return std::none_of(g.elements().begin(), g.elements().end(), [](const Element& e) { return e.is_reflection(); });
  return g.all_commute();
}

/// Longest possible atom over a commuting ground, when one is known.
/// Finite: an ordering of an atom with more than |G| terms repeats a proper
/// prefix product, and the repeated stretch splits off. Integers and rotations:
/// a minimal zero-sum sequence with terms in [-n, m] has length at most m + n.
inline std::optional<std::pair<std::uint64_t, std::string>> commuting_length_bound(const GroundSet& g) {
  if (g.group().is_finite()) return std::pair{g.group().order(), std::string("finite group: atoms have length <= |G|")};
  std::int64_t m = 0, n = 0;
  for (auto& e : g.elements()) {
    m = std::max(m, e.value);
    n = std::max(n, checked_neg(e.value));
  }
  if (m == 0 || n == 0) return std::pair{std::uint64_t{1}, std::string("exponents of one sign: only the identity can be an atom")};
  return std::pair{static_cast<std::uint64_t>(checked_add(m, n)), std::string("exponents in [-n, m]: atoms have length <= m + n")};
}

/// Depth-first over product-one free sequences, extending by positions >= the last.
/// Subproducts are kept as a sorted set; an atom is S g with g closing the product.
inline std::vector<Sequence> commuting_atoms(const GroundPtr& ground, std::uint64_t max_len) {
  const Group& G = ground->group();
  const std::size_t n = ground->size();
  std::set<Sequence> found;
  Multiplicities m(n, 0);
  std::vector<Element> subs;  // products of nonempty sub-multisets
  std::function<void(std::size_t, std::uint64_t, Element)> rec = [&](std::size_t last, std::uint64_t len, Element total) {
    // Close with any term.
    for (std::size_t p = 0; p < n; ++p) {
      if (len + 1 > max_len) break;
      if (G.mul(total, (*ground)[p]) == G.identity()) {
        ++m[p];
        found.insert(Sequence(ground, m));
        --m[p];
      }
    }
    if (len + 1 >= max_len) return;
    for (std::size_t p = last; p < n; ++p) {
      const Element& g = (*ground)[p];
      if (g == G.identity()) continue;
      Element inv = G.inverse(g);
      if (std::binary_search(subs.begin(), subs.end(), inv)) continue;
      std::vector<Element> next = subs;
      for (auto& x : subs) next.push_back(G.mul(x, g));
      next.push_back(g);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (std::binary_search(next.begin(), next.end(), G.identity())) continue;
      std::swap(subs, next);
      ++m[p];
      rec(p, len + 1, G.mul(total, g));
      --m[p];
      std::swap(subs, next);
    }
  };
  rec(0, 0, G.identity());
  return {found.begin(), found.end()};
}

}  // namespace detail

/// All atoms of B(G0), or those of length <= L.
inline AtomInventory enumerate_atoms(const GroundPtr& ground, AtomMode mode) {
  AtomInventory inv{ground, {}, Certificate::up_to(mode.max_len)};
  const Group& G = ground->group();
  if (detail::ground_commutes(*ground)) {
    auto bound = detail::commuting_length_bound(*ground);
    if (mode.exact && !bound) throw precondition_error("no length bound for this ground; use a maximum length");
    std::uint64_t len = mode.exact ? bound->first : mode.max_len;
    if (bound && bound->first <= len) {
      len = bound->first;
      inv.certificate = Certificate::exact(bound->second);
    }
    inv.atoms = detail::commuting_atoms(ground, len);
  } else if (G.is_finite()) {
    std::uint64_t len = std::min<std::uint64_t>(G.order(), mode.exact ? G.order() : mode.max_len);
    if (len > SequenceScan::max_bound) throw precondition_error("atom scan beyond length 127");
    if (len == G.order()) inv.certificate = Certificate::exact("finite group: atoms have length <= |G|");
    SequenceScan scan(ground, static_cast<std::uint32_t>(len));
    inv.atoms = scan.atoms();
  } else {
    if (mode.exact) {
      auto cf = dihedral::closed_form_atoms(ground);
      if (!cf) throw precondition_error("exact atoms need a finite group or a dihedral closed form");
      return *cf;
    }
    if (mode.max_len > SequenceScan::max_bound) throw precondition_error("maximum length above 127");
    SequenceScan scan(ground, static_cast<std::uint32_t>(mode.max_len));
    inv.atoms = scan.atoms();
  }
  inv.normalize();
  return inv;
}

struct DavenportResult {
  enum class kind { exact, lower_bound, infinite };
  kind k = kind::exact;
  std::uint64_t value = 0;
  std::string witness;                    // for infinite
  std::function<Sequence(std::uint32_t)> family;  // n-th witness atom, for infinite

  nlohmann::json to_json() const {
    switch (k) {
      case kind::exact: return {{"tag", "Exact"}, {"value", value}};
      case kind::lower_bound: return {{"tag", "LowerBound"}, {"value", value}};
      default: return {{"tag", "Infinite"}, {"witness_family", witness}};
    }
  }
};

/// D(G0). Dihedral grounds with both a rotation and a reflection have atoms
/// (a^i)^[2n] (a^j t)^[2] of every even length.
inline DavenportResult davenport(const GroundPtr& ground, std::uint64_t scan_len = 24) {
  DavenportResult r;
  const Group& G = ground->group();
  if (G.family() == group_family::infinite_dihedral) {
    auto d = dihedral::DihedralGround::from(*ground);
    if (!dihedral::classify_fg_tame(d)) {
      std::int64_t i = d.rotations.front(), j = d.reflections.front();
      Element rot = Element::rot(i), ref = Element::refl(j);
      r.k = DavenportResult::kind::infinite;
      r.witness = "(" + G.format(rot) + ")^[2n], (" + G.format(ref) + ")^[2]";
      r.family = [ground, rot, ref](std::uint32_t n) { return Sequence::of(ground, {{rot, 2 * n}, {ref, 2}}); };
      return r;
    }
    if (auto cf = dihedral::closed_form_atoms(ground)) {
      r.value = cf->max_length();
      return r;
    }
  }
  if (G.is_finite() || detail::ground_commutes(*ground)) {
    r.value = enumerate_atoms(ground, AtomMode::exact_mode()).max_length();
    return r;
  }
  // Reflection-only grounds with four or more reflections: finite, but no bound is known.
  r.k = DavenportResult::kind::lower_bound;
  r.value = enumerate_atoms(ground, AtomMode::max_length(scan_len)).max_length();
  return r;
}

}  // namespace prodone
