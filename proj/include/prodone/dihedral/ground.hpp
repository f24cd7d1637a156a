#pragma once

// Subsets of the infinite dihedral group split into rotations and reflections,
// and the closed-form classifiers for B(G0).

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodone/arith.hpp"
#include "prodone/error.hpp"
#include "prodone/sequence.hpp"

namespace prodone::dihedral {

inline std::shared_ptr<const Group> dinf() {
  static const auto g = std::make_shared<const Group>(Group::infinite_dihedral());
  return g;
}

struct DihedralGround {
  std::vector<std::int64_t> rotations;    // nonzero exponents, ascending
  std::vector<std::int64_t> reflections;  // k for a^k t, ascending
  bool has_identity = false;

  static DihedralGround from(const GroundSet& g) {
    if (g.group().family() != group_family::infinite_dihedral) throw precondition_error("ground is not in the infinite dihedral group");
    DihedralGround d;
    for (auto& e : g.elements()) {
      if (e.is_reflection()) d.reflections.push_back(e.value);
      else if (e.value == 0) d.has_identity = true;
      else d.rotations.push_back(e.value);
    }
    return d;
  }

  /// Positive rotation exponents.
  std::vector<std::int64_t> I() const {
    std::vector<std::int64_t> r;
    for (auto k : rotations)
      if (k > 0) r.push_back(k);
    return r;
  }
  /// Absolute values of negative rotation exponents, ascending.
  std::vector<std::int64_t> J() const {
    std::vector<std::int64_t> r;
    for (auto k : rotations)
      if (k < 0) r.push_back(checked_neg(k));
    std::sort(r.begin(), r.end());
    return r;
  }

  std::vector<Element> elements() const {
    std::vector<Element> e;
    if (has_identity) e.push_back(Element::rot(0));
    for (auto k : rotations) e.push_back(Element::rot(k));
    for (auto k : reflections) e.push_back(Element::refl(k));
    std::sort(e.begin(), e.end());
    return e;
  }
};

/// D finite, omega finite, tame and finitely generated all coincide with this.
inline bool classify_fg_tame(const DihedralGround& g) { return g.reflections.empty() || g.rotations.empty(); }

inline bool classify_locally_tame(const DihedralGround& g) {
  if (g.reflections.empty() || g.rotations.empty()) return true;
  bool pos = std::any_of(g.rotations.begin(), g.rotations.end(), [](auto k) { return k > 0; });
  bool neg = std::any_of(g.rotations.begin(), g.rotations.end(), [](auto k) { return k < 0; });
  return !(pos && neg);
}

struct CoprimeB {
  bool ok = false;
  std::int64_t d = 1;                                   // gcd of the input
  std::vector<std::pair<std::int64_t, std::int64_t>> b;  // (normalized exponent, b)
  std::string failure;
};

/// b_i = gcd of the other normalized exponents; succeeds iff the b are pairwise
/// coprime and i * b_i equals the product of all b for every i.
inline CoprimeB coprime_b_construction(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() < 2) throw precondition_error("coprime_b_construction needs at least two exponents");
  CoprimeB r;
  for (auto v : values)
    if (v <= 0) throw precondition_error("coprime_b_construction needs positive exponents");
  r.d = 0;
  for (auto v : values) r.d = std::gcd(r.d, v);
  std::vector<std::int64_t> norm;
  for (auto v : values) norm.push_back(v / r.d);
  for (std::size_t i = 0; i < norm.size(); ++i) {
    std::int64_t g = 0;
    for (std::size_t j = 0; j < norm.size(); ++j)
      if (j != i) g = std::gcd(g, norm[j]);
    r.b.emplace_back(norm[i], g);
  }
  for (std::size_t i = 0; i < r.b.size(); ++i)
    for (std::size_t j = i + 1; j < r.b.size(); ++j)
      if (std::gcd(r.b[i].second, r.b[j].second) != 1) {
        r.failure = "b not pairwise coprime: b_" + std::to_string(r.b[i].first) + "=" + std::to_string(r.b[i].second) +
                    ", b_" + std::to_string(r.b[j].first) + "=" + std::to_string(r.b[j].second);
        return r;
      }
  std::int64_t prod = 1;
  for (auto& [k, b] : r.b) prod = checked_mul(prod, b);
  for (auto& [k, b] : r.b)
    if (checked_mul(k, b) != prod) {
      r.failure = std::to_string(k) + "*" + std::to_string(b) + " != " + std::to_string(prod);
      return r;
    }
  r.ok = true;
  return r;
}

struct WeaklyKrullVerdict {
  bool value = false;
  nlohmann::json certificate;
};

/// Decision tree for weak Krullness, applied after removing the identity.
inline WeaklyKrullVerdict classify_weakly_krull(const DihedralGround& g) {
  WeaklyKrullVerdict v;
  auto& c = v.certificate;
  c["identity_stripped"] = g.has_identity;
  std::size_t nrot = g.rotations.size(), nref = g.reflections.size();
  if (nref == 0) {
    c["case"] = "no reflections";
    v.value = true;
    return v;
  }
  if (nrot == 0) {
    c["case"] = "reflections only";
    c["reflection_count"] = nref;
    c["note"] = "identity not counted toward the reflection bound";
    v.value = nref <= 3;
    return v;
  }
  if (nref >= 2) {
    c["case"] = "rotation with at least two reflections";
    c["witness"] = "(a^i)^[2] lies in every localization but not in B";
    v.value = false;
    return v;
  }
  c["case"] = "one reflection";
  c["reflection_normalized"] = "a^k*t replaced by t, k=" + std::to_string(g.reflections.front());
  auto I = g.I(), J = g.J();
  if (I.empty() || J.empty()) {
    c["failure"] = "rotation exponents of a single sign";
    v.value = false;
    return v;
  }
  std::set<std::int64_t> u(I.begin(), I.end());
  u.insert(J.begin(), J.end());
  if (u.size() == 1) {
    c["union_size"] = 1;
    v.value = true;
    return v;
  }
  auto b = coprime_b_construction({u.begin(), u.end()});
  c["gcd"] = b.d;
  nlohmann::json bj = nlohmann::json::array();
  for (auto& [k, bk] : b.b) bj.push_back({{"exponent", k * b.d}, {"b", bk}});
  c["b"] = bj;
  if (!b.ok) c["failure"] = b.failure;
  v.value = b.ok;
  return v;
}

struct LemmaNew1 {
  bool holds = false;
  std::int64_t x = 0, y = 0, z = 0;
};

/// For distinct positive i, j, k with gcd 1: k != gcd(i,k) gcd(j,k), with a
/// solution of i x + j y = k z (gcd(x,y,z) = 1, k does not divide i x) when true.
inline LemmaNew1 lemma_new1_check(std::int64_t i, std::int64_t j, std::int64_t k) {
  if (i <= 0 || j <= 0 || k <= 0 || i == j || j == k || i == k) throw precondition_error("lemma_new1_check needs distinct positive integers");
  if (std::gcd(std::gcd(i, j), k) != 1) throw precondition_error("lemma_new1_check needs gcd(i,j,k) = 1");
  LemmaNew1 r;
  std::int64_t gjk = std::gcd(j, k);
  if (k == checked_mul(std::gcd(i, k), gjk)) return r;
  r.holds = true;
  // gcd(j,k) = k z' - j y' with y', z' > 0.
  auto [g, s, t] = ext_gcd(k, j);  // k s + j t = g
  std::int64_t zp = s, yp = -t;
  std::int64_t step_z = j / g, step_y = k / g;
  while (zp <= 0 || yp <= 0) {
    zp = checked_add(zp, step_z);
    yp = checked_add(yp, step_y);
  }
  std::int64_t x = gjk, y = checked_mul(yp, i), z = checked_mul(zp, i);
  std::int64_t d = std::gcd(std::gcd(x, y), z);
  r.x = x / d;
  r.y = y / d;
  r.z = z / d;
  return r;
}

}  // namespace prodone::dihedral
