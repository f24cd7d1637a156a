#pragma once

// Arithmetic invariants: sets of lengths over a scan (distances, rho_k, lambda_k,
// U_k, elasticity, catenary degree) and the local invariants omega, tau, t of
// single atoms. Every number leaves here with a tag saying how far it is exact.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodone/factorization.hpp"
#include "prodone/inventory.hpp"
#include "prodone/scan.hpp"

namespace prodone {

struct Tagged {
  enum class tag { exact, exact_within_bound, lower_bound, infinite };
  tag t = tag::exact;
  std::uint64_t value = 0;
  std::uint64_t bound = 0;  // for exact_within_bound
  std::string reason;

  static Tagged exact(std::uint64_t v, std::string why = {}) { return {tag::exact, v, 0, std::move(why)}; }
  static Tagged within(std::uint64_t v, std::uint64_t b) { return {tag::exact_within_bound, v, b, {}}; }
  static Tagged lower(std::uint64_t v) { return {tag::lower_bound, v, 0, {}}; }

  bool is_exact() const { return t == tag::exact; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    switch (t) {
      case tag::exact: j = {{"tag", "Exact"}, {"value", value}}; break;
      case tag::exact_within_bound: j = {{"tag", "ExactWithinBound"}, {"value", value}, {"bound", bound}}; break;
      case tag::lower_bound: j = {{"tag", "LowerBound"}, {"value", value}}; break;
      case tag::infinite: j = {{"tag", "Infinite"}, {"witness_family", reason}}; break;
    }
    if (!reason.empty() && t != tag::infinite) j["reason"] = reason;
    return j;
  }
};

// ---- sets of lengths over a scan ------------------------------------------

struct LengthReport {
  std::uint32_t bound = 0, max_k = 0, catenary_bound = 0;
  std::set<std::uint64_t> delta;
  std::vector<std::set<std::uint64_t>> U;  // U[k], k in [1, max_k]; empty when k never occurs
  std::pair<std::uint64_t, std::uint64_t> elasticity{1, 1};  // max L / min L, reduced
  std::uint64_t catenary_max = 0;

  std::optional<std::uint64_t> rho(std::uint32_t k) const {
    if (U[k].empty()) return std::nullopt;
    return *U[k].rbegin();
  }
  std::optional<std::uint64_t> lambda(std::uint32_t k) const {
    if (U[k].empty()) return std::nullopt;
    return *U[k].begin();
  }
  /// U_k has no internal gaps.
  bool interval(std::uint32_t k) const { return U[k].empty() || *U[k].rbegin() - *U[k].begin() + 1 == U[k].size(); }

  nlohmann::json to_json() const {
    nlohmann::json uk = nlohmann::json::object(), rk = nlohmann::json::object(), lk = nlohmann::json::object();
    for (std::uint32_t k = 1; k <= max_k; ++k) {
      auto key = std::to_string(k);
      uk[key] = std::vector<std::uint64_t>(U[k].begin(), U[k].end());
      rk[key] = rho(k) ? nlohmann::json(*rho(k)) : nlohmann::json(nullptr);
      lk[key] = lambda(k) ? nlohmann::json(*lambda(k)) : nlohmann::json(nullptr);
    }
    auto tag = [&](nlohmann::json v, std::uint64_t b) { return nlohmann::json{{"tag", "ExactWithinBound"}, {"bound", b}, {"value", v}}; };
    return {{"delta", tag(std::vector<std::uint64_t>(delta.begin(), delta.end()), bound)},
            {"U_k", tag(uk, bound)},
            {"rho_k", tag(rk, bound)},
            {"lambda_k", tag(lk, bound)},
            {"elasticity", tag(nlohmann::json::array({elasticity.first, elasticity.second}), bound)},
            {"catenary_max", tag(catenary_max, catenary_bound)}};
  }
};

/// Reads L(S) for all product-one S in the scan; catenary degrees come from
/// explicit factorizations for |S| <= catenary_bound.
inline LengthReport length_invariants(const SequenceScan& scan, std::uint32_t max_k, std::uint32_t catenary_bound) {
  LengthReport r;
  r.bound = scan.bound();
  r.max_k = max_k;
  r.catenary_bound = std::min(catenary_bound, scan.bound());
  r.U.assign(max_k + 1, {});
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (!scan.product_one(i)) continue;
    auto L = to_vector(scan.lengths(i));
    for (std::size_t j = 1; j < L.size(); ++j) r.delta.insert(L[j] - L[j - 1]);
    for (auto k : L)
      if (k <= max_k) r.U[k].insert(L.begin(), L.end());
    // Compare max/min against the current best as fractions.
    if (L.back() * r.elasticity.second > r.elasticity.first * L.front()) {
      std::uint64_t g = std::gcd(L.back(), L.front());
      r.elasticity = {L.back() / g, L.front() / g};
    }
  }
  if (r.catenary_bound > 0) {
    AtomInventory inv{scan.ground(), {}, Certificate::up_to(scan.bound())};
    for (std::size_t i = 0; i < scan.size(); ++i)
      if (scan.atom(i)) inv.atoms.push_back(scan.sequence(i));
    inv.normalize();
    std::size_t hi = scan.layer(r.catenary_bound).second;
    for (std::size_t i = 1; i < hi; ++i) {
      if (!scan.product_one(i) || scan.atom(i) || scan.lengths(i).count() == 0) continue;
      r.catenary_max = std::max(r.catenary_max, catenary_degree(factorizations(scan.sequence(i), inv)));
    }
  }
  return r;
}

// ---- omega, tau and t of one atom -----------------------------------------

/// u divides a in B(G0): u | a in F(G0) and a - u is product-one.
inline bool divides_in_monoid(const Sequence& u, const Sequence& a) { return u.divides(a) && is_product_one(a.subtract(u)); }

struct LocalReport {
  Tagged omega, tau, t;
  bool prime = false;
  std::vector<Factorization> omega_witness;  // one minimal family per size reached
  std::uint64_t family_ceiling = 0;
  std::uint64_t longest_family_product = 0;

  nlohmann::json to_json(const AtomInventory& inv) const {
    nlohmann::json w = nlohmann::json::array();
    if (!omega_witness.empty()) {
      for (auto a : omega_witness.back()) w.push_back(inv.atoms[a].to_string());
    }
    return {{"omega", omega.to_json()}, {"tau", tau.to_json()}, {"t", t.to_json()}, {"prime", prime}, {"omega_witness", w}};
  }
};

namespace detail {

/// Families a_1..a_n of atoms (non-decreasing index, n <= ceiling) with u | prod
/// in B(G0) and u dividing no product with one factor removed. Divisibility is
/// monotone, so once a family is divisible its extensions are never minimal.
template <class Visit>
bool minimal_families(const Sequence& u, const AtomInventory& inv, const std::vector<std::uint32_t>& candidates,
                      std::uint64_t ceiling, Visit&& visit) {
  Factorization fam;
  bool hit_ceiling = false;
  Sequence prod(u.ground_ptr());
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (fam.size() == ceiling) {
      hit_ceiling = true;
      return;
    }
    for (std::size_t c = from; c < candidates.size(); ++c) {
      auto k = candidates[c];
      Sequence next = prod.concat(inv.atoms[k]);
      fam.push_back(k);
      if (divides_in_monoid(u, next)) {
        bool minimal = true;
        for (std::size_t j = 0; j < fam.size() && minimal; ++j) {
          if (j && fam[j] == fam[j - 1]) continue;
          if (divides_in_monoid(u, next.subtract(inv.atoms[fam[j]]))) minimal = false;
        }
        if (minimal) visit(fam, next);
      } else {
        std::swap(prod, next);
        rec(c);
        std::swap(prod, next);
      }
      fam.pop_back();
    }
  };
  rec(0);
  return hit_ceiling;
}

}  // namespace detail

/// omega(u) and tau(u) from minimal families of at most `ceiling` atoms, and t(u)
/// from all a = u c with |a| <= t_bound.
///
/// Over a commuting ground u | a in B(G0) exactly when u | a in F(G0), so a
/// minimal family has at most |u| members, each meeting supp(u); with an exact
/// inventory omega and tau are then exact.
inline LocalReport local_invariants(const Sequence& u, const AtomInventory& inv, std::uint64_t ceiling, std::uint32_t t_bound) {
  if (!is_product_one(u) || !is_atom(u)) throw precondition_error("local invariants need an atom");
  LocalReport r;
  const bool commuting = u.ground().group().family() == group_family::infinite_dihedral
                             ? std::none_of(u.ground().elements().begin(), u.ground().elements().end(),
                                            [](const Element& e) { return e.is_reflection(); })
                             : u.ground().all_commute();
  const bool exact_inv = inv.certificate.k == Certificate::kind::exact;
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t k = 0; k < inv.atoms.size(); ++k) {
    if (commuting) {
      bool meets = false;
      for (auto p : u.support()) meets = meets || inv.atoms[k].count(p) > 0;
      if (!meets) continue;
    }
    candidates.push_back(k);
  }
  if (commuting) ceiling = u.length();
  r.family_ceiling = ceiling;

  std::uint64_t omega = 0, tau = 0;
  bool tau_known = true;
  bool hit = detail::minimal_families(u, inv, candidates, ceiling, [&](const Factorization& fam, const Sequence& prod) {
    if (fam.size() > omega) {
      omega = fam.size();
      r.omega_witness.push_back(fam);
    }
    r.longest_family_product = std::max(r.longest_family_product, prod.length());
    Sequence rest = prod.subtract(u);
    if (!inv.certificate.covers(rest.length())) {
      tau_known = false;
      return;
    }
    auto ll = length_lattice(rest, inv);
    auto L = to_vector(ll.lengths[ll.pol.lattice.top()]);
    tau = std::max<std::uint64_t>(tau, L.empty() ? 0 : L.front());
  });
  // A longer minimal family would start with a non-divisible family of ceiling
  // atoms, so a search that never hit the ceiling saw every minimal family.
  if (exact_inv && tau_known && (commuting || !hit)) {
    std::string why = commuting ? "commuting ground: minimal families have at most |u| atoms"
                                : "every family of " + std::to_string(ceiling) + " atoms is divisible";
    r.omega = Tagged::exact(omega, why);
    r.tau = Tagged::exact(tau, why);
  } else {
    r.omega = hit ? Tagged::lower(omega) : Tagged::within(omega, ceiling);
    r.tau = hit || !tau_known ? Tagged::lower(tau) : Tagged::within(tau, ceiling);
  }
  r.prime = omega == 1;

  // t(u): for a = u c, the largest over z in Z(a) of the distance to the nearest z' containing u.
  std::uint64_t t = 0;
  auto uid = std::lower_bound(inv.atoms.begin(), inv.atoms.end(), u) - inv.atoms.begin();
  if (static_cast<std::size_t>(uid) == inv.atoms.size() || inv.atoms[uid] != u) throw precondition_error("atom missing from the inventory");
  if (t_bound > u.length()) {
    if (!inv.certificate.covers(t_bound)) throw precondition_error("inventory does not cover the t scan");
    SequenceScan cs(u.ground_ptr(), static_cast<std::uint32_t>(t_bound - u.length()));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!cs.product_one(i)) continue;
      auto fs = factorizations(u.concat(cs.sequence(i)), inv);
      std::vector<const Factorization*> with_u;
      for (auto& z : fs.factorizations)
        if (std::binary_search(z.begin(), z.end(), static_cast<std::uint32_t>(uid))) with_u.push_back(&z);
      for (auto& z : fs.factorizations) {
        std::uint64_t best = UINT64_MAX;
        for (auto* w : with_u) best = std::min(best, distance(z, *w));
        t = std::max(t, best);
      }
    }
  }
  r.t = Tagged::within(t, t_bound);
  return r;
}

}  // namespace prodone
