#pragma once

// The acceptance suite, shared by the acceptance binary and `prodone verify`.
// Budgets, bounds and time limits are pinned here so runs are reproducible.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "prodone/atoms.hpp"
#include "prodone/dihedral/closed_forms.hpp"
#include "prodone/dihedral/ground.hpp"
#include "prodone/factorization.hpp"
#include "prodone/invariants.hpp"
#include "prodone/parallel.hpp"
#include "prodone/probes.hpp"
#include "prodone/scan.hpp"

namespace prodone::acceptance {

using nlohmann::json;

struct Outcome {
  int id = 0;
  std::string name, suite;
  bool ok = false;
  double seconds = 0, limit = 0;
  json measured;
  std::string error;

  bool passed() const { return ok && seconds <= limit; }

  json to_json() const {
    json j{{"id", id}, {"name", name}, {"suite", suite}, {"passed", passed()}, {"limit_seconds", limit}, {"measured", measured}};
    if (!error.empty()) j["error"] = error;
    return j;
  }
};

struct Criterion {
  int id;
  std::string name, suite;
  double limit;  // seconds
  std::function<bool(json&)> check;
};

namespace detail {

inline std::shared_ptr<const Group> shared(Group g) { return std::make_shared<const Group>(std::move(g)); }

inline GroundPtr whole(const std::shared_ptr<const Group>& g) { return make_ground(g, g->elements()); }

inline json strings(const std::vector<Sequence>& v) {
  json j = json::array();
  for (auto& s : v) j.push_back(s.to_string());
  return j;
}

/// 1 + the longest product-one free sequence over G \ {1}, with membership
/// decided by the permutation oracle alone. Equals D(G) for abelian G.
inline std::uint64_t davenport_by_oracle(const std::shared_ptr<const Group>& G) {
  std::vector<Element> els;
  for (auto& e : G->elements())
    if (e != G->identity()) els.push_back(e);
  auto g = make_ground(G, els);
  std::unordered_map<Multiplicities, bool, MultiplicitiesHash> free;
  std::uint64_t longest = 0;
  for (std::uint32_t len = 1; len <= G->order(); ++len) {
    bool any = false;
    for_each_multiset_of_length(g->size(), len, [&](const Multiplicities& m) {
      // Every proper subsequence must already be free; checking S - g suffices.
      for (std::size_t p = 0; p < m.size(); ++p) {
        if (!m[p] || len == 1) continue;
        Multiplicities d = m;
        --d[p];
        auto it = free.find(d);
        if (it == free.end() || !it->second) return;
      }
      auto pi = product_set_perm(Sequence(g, m), len);
      bool f = !std::binary_search(pi.begin(), pi.end(), G->identity());
      free.emplace(m, f);
      any = any || f;
    });
    if (!any) break;
    longest = len;
  }
  return longest + 1;
}

inline bool davenport_table(json& out, const std::vector<std::pair<std::shared_ptr<const Group>, std::uint64_t>>& cases) {
  bool ok = true;
  out = json::array();
  for (auto& [G, expected] : cases) {
    auto d = davenport(whole(G));
    auto oracle = davenport_by_oracle(G);
    bool row = d.k == DavenportResult::kind::exact && d.value == expected && oracle == expected;
    out.push_back({{"group", G->label() + " " + std::to_string(G->order())}, {"D", d.to_json()}, {"oracle", oracle}, {"expected", expected}, {"ok", row}});
    ok = ok && row;
  }
  return ok;
}

inline bool c1(json& out) {
  std::vector<std::pair<std::shared_ptr<const Group>, std::uint64_t>> cases;
  for (int r = 1; r <= 4; ++r) cases.emplace_back(shared(Group::elementary_2(r)), r + 1);
  return davenport_table(out, cases);
}

inline bool c2(json& out) {
  std::vector<std::pair<std::shared_ptr<const Group>, std::uint64_t>> cases;
  for (int n = 1; n <= 8; ++n) cases.emplace_back(shared(Group::cyclic(n)), n);
  return davenport_table(out, cases);
}

inline bool c3(json& out) {
  auto g = make_ground(dihedral::dinf(), {Element::rot(1), Element::refl(0)});
  auto brute = enumerate_atoms(g, AtomMode::max_length(12));
  auto closed = dihedral::taualpha_atoms(12);
  bool ok = brute.atoms == closed.atoms;
  out["atoms"] = strings(brute.atoms);
  out["closed_form_matches"] = ok;
  SequenceScan scan(g, 16);
  json ls = json::array();
  for (std::uint32_t n = 0; n <= 4; ++n)
    for (std::uint32_t m = 1; m <= 4; ++m) {
      auto s = Sequence::of(g, {{Element::rot(1), 2 * n}, {Element::refl(0), 2 * m}});
      auto L = to_vector(scan.lengths(*scan.find(s.counts())));
      bool row = L == std::vector<std::uint64_t>{m};
      ok = ok && row;
      ls.push_back({{"S", s.to_string()}, {"L", L}});
    }
  out["lengths"] = ls;
  return ok;
}

inline bool c4(json& out) {
  auto g = parse_ground(dihedral::dinf(), "a^2, a^6, t");
  auto semi = seminormality_probe(g, 10);
  auto expected = parse_sequence(g, "a^2, a^6, t^[2]");
  bool ok = semi.found && *semi.t == expected && !is_product_one(expected) && is_product_one(expected.power(2)) &&
            is_product_one(expected.power(3));
  auto root = root_closure_probe(parse_ground(dihedral::dinf(), "a, a^-1, t"), 10);
  out["seminormal"] = semi.to_json();
  out["root_closed"] = root.to_json();
  return ok && !root.found;
}

inline bool c5(json& out) {
  bool ok = true;
  out = json::array();
  for (auto [i, j, k] : std::vector<std::array<std::int64_t, 3>>{{1, 2, 4}, {1, 3, 5}, {2, 3, 7}, {0, 2, 4}}) {
    auto closed = dihedral::three_reflection_atoms(i, j, k);
    auto brute = enumerate_atoms(closed.ground, AtomMode::max_length(20));
    bool atoms_ok = std::all_of(closed.atoms.begin(), closed.atoms.end(), [](const Sequence& a) { return is_atom(a); });
    bool row = atoms_ok && brute.atoms == closed.atoms;
    ok = ok && row;
    out.push_back({{"ijk", {i, j, k}},
                   {"mixed", dihedral::three_reflection_mixed_atom(i, j, k, closed.ground).to_string()},
                   {"brute_force", strings(brute.atoms)},
                   {"ok", row}});
  }
  return ok;
}

inline bool c6(json& out) {
  auto g = make_ground(dihedral::dinf(), {Element::rot(1), Element::refl(0)});
  auto w = Sequence::of(g, {{Element::rot(1), 2}, {Element::refl(0), 2}});
  bool ok = true;
  out = json::array();
  for (std::uint32_t n = 1; n <= 4; ++n) {
    auto u = Sequence::of(g, {{Element::rot(1), 2 * n}, {Element::refl(0), 2}});
    bool divides = divides_in_monoid(u, w.power(n));
    bool minimal = !divides_in_monoid(u, w.power(n - 1));
    // Independent search over families of at most n atoms of length <= 2n + 2.
    auto inv = dihedral::taualpha_atoms(2 * n + 2);
    auto lr = local_invariants(u, inv, n, 0);
    bool row = divides && minimal && lr.omega.value >= n;
    ok = ok && row;
    out.push_back({{"n", n}, {"u", u.to_string()}, {"witness_divides", divides}, {"witness_minimal", minimal},
                   {"omega_search", lr.omega.to_json()}, {"ok", row}});
  }
  return ok;
}

inline bool c7(json& out) {
  auto g = parse_ground(dihedral::dinf(), "a, a^-1, t");
  SequenceScan scan(g, 16);
  AtomInventory inv{g, scan.atoms(), Certificate::up_to(16)};
  inv.normalize();
  bool ok = true;
  out = json::array();
  for (std::uint32_t n = 1; n <= 3; ++n) {
    auto s = Sequence::of(g, {{Element::refl(0), 4}, {Element::rot(1), 2 * n}, {Element::rot(-1), 2 * n}});
    auto L = to_vector(scan.lengths(*scan.find(s.counts())));
    auto fs = factorizations(s, inv);
    std::uint64_t d = 0;
    for (auto& z : fs.factorizations)
      for (auto& z2 : fs.factorizations)
        if (z.size() == 2 && z2.size() == 2 * n + 2) d = std::max(d, distance(z, z2));
    bool row = std::count(L.begin(), L.end(), 2) && std::count(L.begin(), L.end(), 2 * n + 2) && d == 2 * n + 2 && fs.lengths == L;
    ok = ok && row;
    out.push_back({{"n", n}, {"S", s.to_string()}, {"L", L}, {"distance_2_to_max", d}, {"catenary", catenary_degree(fs)},
                   {"factorizations", fs.factorizations.size()}, {"ok", row}});
  }
  return ok;
}

inline bool c8(json& out) {
  const std::vector<std::pair<const char*, bool>> table{
      {"a, a^-1, t", true},         {"a^2, a^-3, a^7*t", true},         {"a*t, a^3*t", true},
      {"a*t, a^3*t, a^4*t", true},  {"a*t, a^3*t, a^4*t, a^9*t", false}, {"a, a^2, a*t", false},
      {"a, a*t, a^2*t", false},     {"a^6, a^10, a^-15, t", true},      {"a^2, a^3, a^-5, t", false}};
  bool ok = true;
  out = json::array();
  for (auto& [text, expected] : table) {
    auto g = parse_ground(dihedral::dinf(), text);
    auto v = dihedral::classify_weakly_krull(dihedral::DihedralGround::from(*g));
    auto probe = weakly_krull_probe(g, 8, 60, 12);
    bool agrees = v.value == !probe.counterexample.has_value();
    bool row = v.value == expected && agrees;
    ok = ok && row;
    out.push_back({{"ground", text}, {"weakly_krull", v.value}, {"expected", expected}, {"certificate", v.certificate},
                   {"probe", probe.to_json()}, {"ok", row}});
  }
  return ok;
}

inline bool c9(json& out) {
  auto G = shared(Group::finite_dihedral(3));
  SequenceScan scan(whole(G), 12);
  auto rep = length_invariants(scan, 4, 0);
  bool ok = true;
  for (std::uint32_t k = 1; k <= 4; ++k) ok = ok && !rep.U[k].empty() && rep.interval(k);
  out = rep.to_json();
  out.erase("catenary_max");
  return ok;
}

/// rho_k <= k D / 2 over a scan, for k <= max_k.
inline bool rho_bound(const SequenceScan& scan, std::uint64_t D, std::uint32_t max_k, json& row) {
  auto rep = length_invariants(scan, max_k, 0);
  bool ok = true;
  json rk = json::object();
  for (std::uint32_t k = 1; k <= max_k; ++k) {
    if (auto r = rep.rho(k)) {
      ok = ok && 2 * *r <= k * D;
      rk[std::to_string(k)] = *r;
    }
  }
  row["D"] = D;
  row["rho_k"] = rk;
  row["scan_bound"] = scan.bound();
  return ok;
}

inline bool c10(json& out) {
  bool ok = true;
  json exact = json::array(), rho = json::array();
  // Local invariants are exact on these: the atom inventories are complete and
  // minimal families over a commuting ground have at most |u| members.
  for (auto G : {shared(Group::cyclic(2)), shared(Group::cyclic(3)), shared(Group::cyclic(4)), shared(Group::elementary_2(2)),
                 shared(Group::cyclic(5)), shared(Group::elementary_2(3))}) {
    auto g = whole(G);
    auto inv = enumerate_atoms(g, AtomMode::exact_mode());
    std::uint64_t D = inv.max_length(), omega = 0, tau = 0, t = 0;
    bool all_exact = inv.certificate.k == Certificate::kind::exact, basic1 = true, factorial = true;
    for (auto& u : inv.atoms) {
      auto lr = local_invariants(u, inv, 0, 0);
      lr = local_invariants(u, inv, 0, static_cast<std::uint32_t>(lr.longest_family_product));
      all_exact = all_exact && lr.omega.is_exact() && lr.tau.is_exact();
      omega = std::max(omega, lr.omega.value);
      tau = std::max(tau, lr.tau.value);
      t = std::max(t, lr.t.value);
      factorial = factorial && lr.prime;
      // Prime atoms have t = 0 and omega = 1, so the identity only covers the rest.
      if (!lr.prime) basic1 = basic1 && lr.t.value == std::max(lr.omega.value, 1 + lr.tau.value);
    }
    std::uint32_t bound = static_cast<std::uint32_t>(std::min<std::uint64_t>(2 * D, 10));
    SequenceScan scan(g, bound);
    auto rep = length_invariants(scan, 4, bound);
    std::uint64_t sup_delta = rep.delta.empty() ? 0 : *rep.delta.rbegin();
    bool chain = sup_delta <= rep.catenary_max && rep.catenary_max <= omega && (factorial || omega <= t);
    json row{{"group", G->label() + " " + std::to_string(G->order())}, {"D", D},        {"omega", omega},
             {"tau", tau},  {"t", t},    {"sup_delta", sup_delta}, {"catenary", rep.catenary_max},
             {"factorial", factorial}, {"exact", all_exact}, {"basic1", basic1}, {"chain", chain}};
    bool rb = rho_bound(scan, D, 4, row);
    row["ok"] = all_exact && basic1 && chain && rb;
    ok = ok && row["ok"].get<bool>();
    exact.push_back(row);
  }
  auto rho_case = [&](const std::string& label, const GroundPtr& g, std::uint64_t D, std::uint32_t bound) {
    json row{{"ground", label}};
    SequenceScan scan(g, bound);
    bool r = rho_bound(scan, D, 4, row);
    row["ok"] = r;
    ok = ok && r;
    rho.push_back(row);
  };
  for (int n : {6, 7, 8}) rho_case("cyclic " + std::to_string(n), whole(shared(Group::cyclic(n))), n, 10);
  rho_case("elementary-2 16", whole(shared(Group::elementary_2(4))), 5, 6);
  rho_case("finite-dihedral 6", whole(shared(Group::finite_dihedral(3))), davenport(whole(shared(Group::finite_dihedral(3)))).value, 12);
  for (auto [i, j, k] : std::vector<std::array<std::int64_t, 3>>{{1, 2, 4}, {1, 3, 5}, {2, 3, 7}, {0, 2, 4}}) {
    auto inv = dihedral::three_reflection_atoms(i, j, k);
    rho_case(inv.ground->to_string(), inv.ground, inv.max_length(), 16);
  }
  out["exact_instances"] = exact;
  out["rho_bound_instances"] = rho;
  return ok;
}

inline std::shared_ptr<const Group> quaternion() {
  // Index 4s + u for sign s and unit u in 1, i, j, k.
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::string> names{"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  std::vector<std::uint32_t> table;
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int s = (x / 4 + y / 4 + sign[x % 4][y % 4]) % 2;
      table.push_back(static_cast<std::uint32_t>(4 * s + unit[x % 4][y % 4]));
    }
  auto g = Group::from_cayley(names, table);
  return shared(g);
}

inline bool c11(json& out) {
  std::mt19937_64 rng(20240611);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  std::vector<std::shared_ptr<const Group>> finite{shared(Group::cyclic(7)), shared(Group::cyclic(12)), shared(Group::elementary_2(3)),
                                                   shared(Group::finite_dihedral(4)), shared(Group::finite_dihedral(5)), quaternion()};
  auto Z = shared(Group::integers());
  std::uint64_t agree = 0, total = 500;
  json per_family = json::object();
  for (std::uint64_t r = 0; r < total; ++r) {
    std::vector<Element> els;
    std::shared_ptr<const Group> G;
    std::size_t fam = r % 8;
    if (fam < finite.size()) {
      G = finite[fam];
      for (int c = 0, n = static_cast<int>(pick(1, 4)); c < n; ++c) els.push_back(Element::fin(pick(0, G->order() - 1)));
    } else if (fam == 6) {
      G = Z;
      for (int c = 0, n = static_cast<int>(pick(1, 4)); c < n; ++c) els.push_back(Element::integer(pick(-6, 6)));
    } else {
      G = dihedral::dinf();
      for (int c = 0, n = static_cast<int>(pick(1, 4)); c < n; ++c)
        els.push_back(pick(0, 1) ? Element::refl(pick(-5, 5)) : Element::rot(pick(-5, 5)));
    }
    auto g = make_ground(G, els);
    Multiplicities m(g->size(), 0);
    for (std::int64_t len = pick(1, 7); len > 0; --len) ++m[static_cast<std::size_t>(pick(0, g->size() - 1))];
    Sequence s(g, m);
    bool same = product_set_perm(s, 7) == product_set_dp(s);
    agree += same;
    auto key = G->label();
    per_family[key] = per_family.value(key, 0) + 1;
  }
  out["random"] = {{"agree", agree}, {"total", total}, {"per_family", per_family}};

  // Exhaustive: every multiset of length <= 8 over rotations and reflections with exponents in [-5, 5].
  std::vector<Element> els;
  for (std::int64_t k = -5; k <= 5; ++k) {
    els.push_back(Element::rot(k));
    els.push_back(Element::refl(k));
  }
  auto g = make_ground(dihedral::dinf(), els);
  std::vector<Multiplicities> all;
  for (std::uint32_t len = 0; len <= 8; ++len) for_each_multiset_of_length(g->size(), len, [&](const Multiplicities& m) { all.push_back(m); });
  std::atomic<std::uint64_t> bad{0}, ones{0};
  parallel_for(all.size(), [&](std::uint64_t i) {
    Sequence s(g, all[i]);
    bool a = dihedral::is_product_one_dihedral(s);
    if (a != is_product_one_generic(s)) ++bad;
    ones += a;
  }, 4096);
  out["exhaustive"] = {{"sequences", all.size()}, {"product_one", ones.load()}, {"disagreements", bad.load()}};
  return agree == total && bad == 0;
}

}  // namespace detail

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "D(C2^r) = r+1, r <= 4", "davenport", 30, detail::c1},
      {2, "D(Cn) = n, n <= 8", "davenport", 30, detail::c2},
      {3, "{a, t}: atoms to length 12 and half-factoriality", "dihedral", 10, detail::c3},
      {4, "seminormality and root-closure probes", "dihedral", 10, detail::c4},
      {5, "three-reflection mixed atom vs brute force to length 20", "dihedral", 60, detail::c5},
      {6, "omega witness on {a, t}", "dihedral", 30, detail::c6},
      {7, "lengths of t^[4] a^[2n] (a^-1)^[2n]", "dihedral", 60, detail::c7},
      {8, "weakly Krull fixture table with localization probe", "dihedral", 60, detail::c8},
      {9, "S3: U_k intervals, k <= 4, |S| <= 12", "invariants", 120, detail::c9},
      {10, "inequality chains on exact instances", "invariants", 120, detail::c10},
      {11, "DP vs permutation oracle; split criterion vs generic DP", "oracle", 120, detail::c11},
  };
  return c;
}

inline bool in_suite(const Criterion& c, const std::string& suite) { return suite == "all" || suite == c.suite; }

inline bool known_suite(const std::string& suite) {
  return suite == "all" || suite == "davenport" || suite == "dihedral" || suite == "invariants" || suite == "oracle";
}

inline Outcome run(const Criterion& c) {
  Outcome o{c.id, c.name, c.suite, false, 0, c.limit, json::object(), {}};
  auto t0 = std::chrono::steady_clock::now();
  try {
    o.ok = c.check(o.measured);
  } catch (const std::exception& e) {
    o.ok = false;
    o.error = e.what();
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

inline std::vector<Outcome> run_suite(const std::string& suite, const std::function<void(const Outcome&)>& each = {}) {
  std::vector<Outcome> out;
  for (auto& c : criteria()) {
    if (!in_suite(c, suite)) continue;
    out.push_back(run(c));
    if (each) each(out.back());
  }
  return out;
}

}  // namespace prodone::acceptance
