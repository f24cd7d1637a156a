#pragma once

// Structural probes of B(G0): B* membership, bounded counterexample searches
// for seminormality and root closure, localizations at the primes p_g, the
// condensed subset, and finitary witnesses.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodone/dihedral/ground.hpp"
#include "prodone/product.hpp"
#include "prodone/scan.hpp"

namespace prodone {

// ---- B* --------------------------------------------------------------------

/// pi(S) lies in one coset of the commutator subgroup of <G0>, so one ordered
/// product decides pi(S) <= <G0>'. In the infinite dihedral group <G0>' is
/// generated by a^(2h) with h the gcd of the rotation exponents and reflection
/// differences, and is trivial without reflections.
inline bool bstar_membership(const Sequence& s) {
  const Group& G = s.group();
  Element acc = G.identity();
  for (std::size_t p : s.support()) acc = G.mul(acc, G.power(s.ground()[p], s.count(p)));
  switch (G.family()) {
    case group_family::finite: {
      auto h = G.closure(s.ground().elements());
      std::vector<Element> comms;
      for (auto& x : h)
        for (auto& y : h) comms.push_back(G.mul(G.mul(G.inverse(x), G.inverse(y)), G.mul(x, y)));
      auto d = G.closure(comms);
      return std::binary_search(d.begin(), d.end(), acc);
    }
    case group_family::integers: return acc == G.identity();
    case group_family::infinite_dihedral: {
      auto dg = dihedral::DihedralGround::from(s.ground());
      if (dg.reflections.empty()) return acc == G.identity();
      std::int64_t h = 0;
      for (auto r : dg.rotations) h = std::gcd(h, r);
      for (auto k : dg.reflections) h = std::gcd(h, checked_sub(k, dg.reflections.front()));
      if (acc.is_reflection()) return false;
      if (h == 0) return acc.value == 0;
      return acc.value % checked_mul(2, h) == 0;
    }
  }
  return false;
}

// ---- seminormality and root closure ----------------------------------------

struct QuotientProbe {
  bool found = false;
  std::optional<Sequence> t, s1, s2;
  std::uint32_t power = 0;          // the n with T^[n] in B for root closure
  std::vector<Sequence> all;        // every counterexample T, canonical order
  std::uint32_t bound = 0;

  nlohmann::json to_json() const {
    nlohmann::json j{{"bound", bound}, {"count", all.size()}};
    if (!found) {
      j["tag"] = "NoCounterexample";
      return j;
    }
    j["tag"] = "Counterexample";
    j["T"] = t->to_string();
    j["S1"] = s1->to_string();
    j["S2"] = s2->to_string();
    if (power) j["power"] = power;
    return j;
  }
};

namespace detail {

/// T = S1 - S2 over product-one S2 | S1 with |S1| <= bound; returns for each such
/// T (by scan index) one (S1, S2) pair, the shortest S1 first.
inline std::map<std::size_t, std::pair<std::size_t, std::size_t>> quotients(const SequenceScan& scan) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (!scan.product_one(i)) continue;
    Sequence s1 = scan.sequence(i);
    SubsequenceLattice lat(s1.counts());
    lat.for_each_below(lat.top(), [&](std::uint64_t idx) {
      auto m2 = lat.counts_of(idx, s1.ground().size());
      std::size_t j = *scan.find(m2);
      if (!scan.product_one(j)) return;
      Multiplicities mt = s1.counts();
      for (std::size_t p = 0; p < mt.size(); ++p) mt[p] -= m2[p];
      out.emplace(*scan.find(mt), std::pair{i, j});
    });
  }
  return out;
}

template <class Pred>
QuotientProbe quotient_probe(const GroundPtr& ground, std::uint32_t bound, Pred&& bad) {
  SequenceScan scan(ground, bound);
  QuotientProbe r;
  r.bound = bound;
  for (auto& [ti, pair] : quotients(scan)) {
    if (scan.product_one(ti)) continue;
    Sequence t = scan.sequence(ti);
    std::uint32_t n = bad(t);
    if (!n) continue;
    r.all.push_back(t);
    if (!r.found) {
      r.found = true;
      r.t = t;
      r.s1 = scan.sequence(pair.first);
      r.s2 = scan.sequence(pair.second);
      r.power = n;
    }
  }
  return r;
}

}  // namespace detail

/// T not in B with T^[2], T^[3] in B.
inline QuotientProbe seminormality_probe(const GroundPtr& ground, std::uint32_t bound) {
  return detail::quotient_probe(ground, bound, [](const Sequence& t) -> std::uint32_t {
    return is_product_one(t.power(2)) && is_product_one(t.power(3)) ? 2 : 0;
  });
}

/// T not in B with T^[n] in B for some 2 <= n <= max_power.
inline QuotientProbe root_closure_probe(const GroundPtr& ground, std::uint32_t bound, std::uint32_t max_power = 6) {
  return detail::quotient_probe(ground, bound, [&](const Sequence& t) -> std::uint32_t {
    for (std::uint32_t n = 2; n <= max_power; ++n)
      if (is_product_one(t.power(n))) return n;
    return 0;
  });
}

// ---- condensed subset ------------------------------------------------------

struct CondensedResult {
  std::vector<Element> elements;
  bool exact = false;
  std::string reason;
  std::uint32_t bound = 0;

  nlohmann::json to_json(const Group& g) const {
    nlohmann::json els = nlohmann::json::array();
    for (auto& e : elements) els.push_back(g.format(e));
    nlohmann::json cert = exact ? nlohmann::json{{"tag", "Exact"}, {"reason", reason}}
                                : nlohmann::json{{"tag", "CompleteUpToLength"}, {"length", bound}};
    return {{"elements", els}, {"certificate", cert}};
  }
};

/// Elements lying in the support of some product-one sequence. Torsion elements
/// qualify at once (g^[ord g]); for integer and dihedral grounds the answer is
/// closed form: reflections square to 1, and a rotation qualifies next to a
/// reflection ((a^r)^[2] (a^k t)^[2]) or an opposite-signed rotation.
inline CondensedResult condensed_subset(const GroundPtr& ground, std::uint32_t bound = 6) {
  CondensedResult r;
  r.bound = bound;
  const Group& G = ground->group();
  if (G.is_finite()) {
    r.elements = ground->elements();
    r.exact = true;
    r.reason = "every element has finite order";
    return r;
  }
  bool refl = false, pos = false, neg = false;
  for (auto& e : ground->elements()) {
    refl = refl || e.is_reflection();
    pos = pos || (!e.is_reflection() && e.value > 0);
    neg = neg || (!e.is_reflection() && e.value < 0);
  }
  for (auto& e : ground->elements()) {
    bool in = e.is_reflection() || e.value == 0 || refl || (e.value > 0 ? neg : pos);
    if (in) r.elements.push_back(e);
  }
  r.exact = true;
  r.reason = "reflections and the identity always; rotations beside a reflection or an opposite sign";
  return r;
}

/// Bounded search version, for cross-checking the closed form.
inline std::vector<Element> condensed_by_search(const GroundPtr& ground, std::uint32_t bound) {
  SequenceScan scan(ground, bound);
  std::vector<char> hit(ground->size(), 0);
  for (std::size_t i = 1; i < scan.size(); ++i)
    if (scan.product_one(i))
      for (std::size_t p = 0; p < ground->size(); ++p) hit[p] = hit[p] || scan.counts(i)[p] > 0;
  std::vector<Element> out;
  for (std::size_t p = 0; p < ground->size(); ++p)
    if (hit[p]) out.push_back((*ground)[p]);
  return out;
}

// ---- localizations ---------------------------------------------------------

/// Product-one sequences over G0 \ {g} with |T| <= bound, shortest first, as
/// sequences over G0.
class LocalizationSearch {
 public:
  LocalizationSearch(const GroundPtr& ground, const Element& g, std::uint32_t bound) : ground_(ground), g_(g), bound_(bound) {
    std::vector<Element> rest;
    for (auto& e : ground->elements())
      if (e != g) rest.push_back(e);
    auto sub = make_ground(ground->group_ptr(), rest);
    SequenceScan scan(sub, bound);
    for (std::size_t i = 0; i < scan.size(); ++i) {
      if (!scan.product_one(i)) continue;
      std::vector<std::pair<Element, std::uint32_t>> terms;
      for (std::size_t p = 0; p < sub->size(); ++p)
        if (scan.counts(i)[p]) terms.emplace_back((*sub)[p], scan.counts(i)[p]);
      witnesses_.push_back(Sequence::of(ground, terms));
    }
  }

  /// A product-one T avoiding g with S T product-one.
  std::optional<Sequence> find(const Sequence& s) const {
    for (auto& t : witnesses_)
      if (is_product_one(s.concat(t))) return t;
    return std::nullopt;
  }

  const Element& element() const { return g_; }
  std::uint32_t bound() const { return bound_; }

 private:
  GroundPtr ground_;
  Element g_;
  std::uint32_t bound_;
  std::vector<Sequence> witnesses_;
};

/// S in B_{p_g}, searched with |T| <= bound; nullopt means nothing within the bound.
inline std::optional<Sequence> in_localization(const Sequence& s, const Element& g, std::uint32_t bound) {
  if (!s.ground().index_of(g)) throw precondition_error("element is not in the ground");
  return LocalizationSearch(s.ground_ptr(), g, bound).find(s);
}

/// p_h <= p_g exactly when h lies in no product-one sequence avoiding g. The
/// minimal p_g (over non-identity g in the condensed subset) are returned.
inline std::vector<Element> height_one_primes(const GroundPtr& ground) {
  const Group& G = ground->group();
  auto cond = condensed_subset(ground).elements;
  std::vector<Element> cand;
  for (auto& e : cond)
    if (e != G.identity()) cand.push_back(e);
  auto avoid = [&](const Element& g) {
    std::vector<Element> rest;
    for (auto& e : ground->elements())
      if (e != g) rest.push_back(e);
    return condensed_subset(make_ground(ground->group_ptr(), rest)).elements;
  };
  std::vector<Element> out;
  for (auto& g : cand) {
    auto cg = avoid(g);
    bool minimal = true;
    for (auto& h : cand) {
      if (h == g || std::binary_search(cg.begin(), cg.end(), h)) continue;
      // p_h <= p_g; strict unless also p_g <= p_h.
      auto ch = avoid(h);
      if (std::binary_search(ch.begin(), ch.end(), g)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(g);
  }
  return out;
}

struct WeaklyKrullProbe {
  std::optional<Sequence> counterexample;  // in every B_p, p minimal, but not in B
  std::vector<Element> primes;
  std::vector<Sequence> witnesses;  // one T per prime, for the counterexample
  std::uint64_t checked = 0;

  nlohmann::json to_json() const {
    nlohmann::json j{{"checked", checked}};
    if (counterexample) {
      j["counterexample"] = counterexample->to_string();
      nlohmann::json w = nlohmann::json::array();
      for (auto& t : witnesses) w.push_back(t.to_string());
      j["witnesses"] = w;
    } else {
      j["counterexample"] = nullptr;
    }
    return j;
  }
};

/// Looks for S in F(G0) \ B with |S| <= max_len and sum of |exponents| <= max_weight
/// lying in every localization at a height-one prime (T searched up to t_bound).
/// The identity is removed first.
inline WeaklyKrullProbe weakly_krull_probe(const GroundPtr& ground, std::uint32_t max_len, std::int64_t max_weight,
                                           std::uint32_t t_bound, std::vector<Sequence> guided = {}) {
  const Group& G = ground->group();
  std::vector<Element> els;
  for (auto& e : ground->elements())
    if (e != G.identity()) els.push_back(e);
  auto g0 = make_ground(ground->group_ptr(), els);
  WeaklyKrullProbe r;
  r.primes = height_one_primes(g0);
  std::vector<LocalizationSearch> loc;
  for (auto& p : r.primes) loc.emplace_back(g0, p, t_bound);
  auto test = [&](const Sequence& s) {
    ++r.checked;
    if (is_product_one(s)) return false;
    std::vector<Sequence> ws;
    for (auto& l : loc) {
      auto w = l.find(s);
      if (!w) return false;
      ws.push_back(*w);
    }
    r.counterexample = s;
    r.witnesses = ws;
    return true;
  };
  for (auto& s : guided) {
    Multiplicities m(g0->size(), 0);
    for (std::size_t p = 0; p < s.counts().size(); ++p)
      if (s.count(p)) m[*g0->index_of(s.ground()[p])] = s.count(p);
    if (test(Sequence(g0, m))) return r;
  }
  for (std::uint32_t len = 1; len <= max_len; ++len) {
    bool done = false;
    for_each_multiset_of_length(g0->size(), len, [&](const Multiplicities& m) {
      if (done) return;
      std::int64_t w = 0;
      for (std::size_t p = 0; p < m.size(); ++p) w += m[p] * std::abs((*g0)[p].value);
      if (w > max_weight) return;
      done = test(Sequence(g0, m));
    });
    if (done) break;
  }
  return r;
}

// ---- finitary --------------------------------------------------------------

struct FinitaryWitness {
  bool found = false;
  std::vector<Sequence> sequences;
  std::uint32_t bound = 0;
};

/// Every nonempty product-one S must contain the support of some chosen A_i, and
/// each minimal support must itself be one of them, so the witness is one
/// shortest product-one sequence per minimal support.
inline FinitaryWitness finitary_witness(const GroundPtr& ground, std::size_t n_max, std::uint32_t bound) {
  SequenceScan scan(ground, bound);
  std::map<std::vector<std::size_t>, std::size_t> first;  // support -> first scan index
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (!scan.product_one(i)) continue;
    std::vector<std::size_t> supp;
    for (std::size_t p = 0; p < ground->size(); ++p)
      if (scan.counts(i)[p]) supp.push_back(p);
    first.emplace(supp, i);
  }
  FinitaryWitness r;
  r.bound = bound;
  for (auto& [supp, i] : first) {
    bool minimal = true;
    for (auto& [other, j] : first)
      if (other != supp && std::includes(supp.begin(), supp.end(), other.begin(), other.end())) minimal = false;
    if (minimal) r.sequences.push_back(scan.sequence(i));
  }
  std::sort(r.sequences.begin(), r.sequences.end());
  r.found = !r.sequences.empty() && r.sequences.size() <= n_max;
  if (!r.found) r.sequences.clear();
  return r;
}

}  // namespace prodone
