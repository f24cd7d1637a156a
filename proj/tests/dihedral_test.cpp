#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "prodone/atoms.hpp"
#include "prodone/dihedral/claim_a.hpp"
#include "prodone/dihedral/closed_forms.hpp"
#include "prodone/dihedral/ground.hpp"
#include "prodone/probes.hpp"

using namespace prodone;
using namespace prodone::dihedral;

namespace {

GroundPtr ground(std::string_view text) { return parse_ground(dinf(), text); }
DihedralGround dg(std::string_view text) { return DihedralGround::from(*ground(text)); }

std::vector<std::string> strings(const AtomInventory& inv) {
  std::vector<std::string> v;
  for (auto& a : inv.atoms) v.push_back(a.to_string());
  return v;
}

}  // namespace

TEST(Dihedral, GroundSplit) {
  auto d = dg("a^3, a^-2, t, a^5*t, e");
  EXPECT_TRUE(d.has_identity);
  EXPECT_EQ(d.rotations, (std::vector<std::int64_t>{-2, 3}));
  EXPECT_EQ(d.reflections, (std::vector<std::int64_t>{0, 5}));
  EXPECT_EQ(d.I(), std::vector<std::int64_t>{3});
  EXPECT_EQ(d.J(), std::vector<std::int64_t>{2});
  EXPECT_THROW(DihedralGround::from(*make_ground(Group::cyclic(3), {Element::fin(1)})), precondition_error);
}

TEST(Dihedral, FgTame) {
  EXPECT_TRUE(classify_fg_tame(dg("a, a^-3")));
  EXPECT_TRUE(classify_fg_tame(dg("a*t, a^5*t, e")));
  EXPECT_FALSE(classify_fg_tame(dg("a, t")));
}

TEST(Dihedral, LocallyTame) {
  EXPECT_TRUE(classify_locally_tame(dg("a, t")));
  EXPECT_FALSE(classify_locally_tame(dg("a, a^-1, t")));
  EXPECT_TRUE(classify_locally_tame(dg("a^2, a^5, a^3*t")));
  EXPECT_TRUE(classify_locally_tame(dg("a, a^-1")));
}

TEST(Dihedral, WeaklyKrullTable) {
  EXPECT_TRUE(classify_weakly_krull(dg("a, a^-1, t")).value);
  EXPECT_TRUE(classify_weakly_krull(dg("a^2, a^-3, a^7*t")).value);
  EXPECT_TRUE(classify_weakly_krull(dg("a*t, a^3*t")).value);
  EXPECT_TRUE(classify_weakly_krull(dg("a*t, a^3*t, a^4*t")).value);
  EXPECT_TRUE(classify_weakly_krull(dg("a*t, a^3*t, a^4*t, e")).value);
  EXPECT_FALSE(classify_weakly_krull(dg("a*t, a^3*t, a^4*t, a^9*t")).value);
  EXPECT_FALSE(classify_weakly_krull(dg("a, a^2, a*t")).value);
  EXPECT_FALSE(classify_weakly_krull(dg("a, a*t, a^2*t")).value);
  EXPECT_FALSE(classify_weakly_krull(dg("a^2, a^3, a^-5, t")).value);
  EXPECT_TRUE(classify_weakly_krull(dg("a, a^-2")).value);

  auto v = classify_weakly_krull(dg("a^6, a^10, a^-15, t"));
  EXPECT_TRUE(v.value);
  std::vector<std::pair<int, int>> b;
  for (auto& e : v.certificate["b"]) b.emplace_back(e["exponent"].get<int>(), e["b"].get<int>());
  EXPECT_EQ(b, (std::vector<std::pair<int, int>>{{6, 5}, {10, 3}, {15, 2}}));
}

TEST(Dihedral, CoprimeB) {
  auto a = coprime_b_construction({2, 3});
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(a.b, (std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 3}, {3, 2}}));
  auto b = coprime_b_construction({6, 10, 15});
  EXPECT_TRUE(b.ok);
  EXPECT_EQ(b.b, (std::vector<std::pair<std::int64_t, std::int64_t>>{{6, 5}, {10, 3}, {15, 2}}));
  auto c = coprime_b_construction({2, 3, 5});
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.failure.empty());
  // A common factor is divided out first.
  auto d = coprime_b_construction({4, 6});
  EXPECT_TRUE(d.ok);
  EXPECT_EQ(d.d, 2);
  EXPECT_THROW(coprime_b_construction({3}), precondition_error);
}

namespace {

bool witness_ok(std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t x, std::int64_t y, std::int64_t z) {
  return x > 0 && y > 0 && z > 0 && i * x + j * y == k * z && std::gcd(std::gcd(x, y), z) == 1 && (i * x) % k != 0;
}

bool brute_force_new1(std::int64_t i, std::int64_t j, std::int64_t k) {
  for (std::int64_t x = 1; x <= 100; ++x)
    for (std::int64_t y = 1; y <= 100; ++y)
      if ((i * x + j * y) % k == 0 && witness_ok(i, j, k, x, y, (i * x + j * y) / k)) return true;
  return false;
}

}  // namespace

TEST(Dihedral, LemmaNew1Examples) {
  auto r = lemma_new1_check(2, 3, 5);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(witness_ok(2, 3, 5, r.x, r.y, r.z));
  EXPECT_TRUE(witness_ok(2, 3, 5, 1, 1, 1));
  EXPECT_FALSE(lemma_new1_check(2, 3, 6).holds);
  EXPECT_THROW(lemma_new1_check(2, 2, 5), precondition_error);
  EXPECT_THROW(lemma_new1_check(2, 4, 6), precondition_error);
}

TEST(Dihedral, LemmaNew1AgainstBruteForce) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> d(1, 30);
  int checked = 0, held = 0;
  while (checked < 50) {
    std::int64_t i = d(rng), j = d(rng), k = d(rng);
    if (i == j || j == k || i == k || std::gcd(std::gcd(i, j), k) != 1) continue;
    auto r = lemma_new1_check(i, j, k);
    EXPECT_EQ(r.holds, brute_force_new1(i, j, k)) << i << " " << j << " " << k;
    if (r.holds) {
      EXPECT_TRUE(witness_ok(i, j, k, r.x, r.y, r.z)) << i << " " << j << " " << k;
      ++held;
    }
    ++checked;
  }
  EXPECT_GT(held, 0);
  EXPECT_LT(held, 50);
}

TEST(Dihedral, SplitCriterionExamples) {
  auto g = ground("a^2, a^6, t");
  EXPECT_FALSE(is_product_one_dihedral(parse_sequence(g, "a^2, a^6, t^[2]")));
  auto s = parse_sequence(g, "a^2^[2], a^6^[2], t^[4]");
  EXPECT_TRUE(is_product_one_dihedral(s));
  auto w = decompose(s);
  ASSERT_TRUE(w);
  EXPECT_TRUE(check_witness(s, *w));
  EXPECT_EQ(w->w1.to_string(), "t^[2]");
  EXPECT_EQ(w->w2.to_string(), "t^[2]");
  EXPECT_EQ(w->t1.to_string(), "a^2, a^6");
  EXPECT_EQ(w->t2.to_string(), "a^2, a^6");

  auto h = ground("a*t, a^2*t, a^4*t");
  EXPECT_TRUE(is_product_one_dihedral(parse_sequence(h, "a*t^[2], a^2*t^[3], a^4*t")));
  EXPECT_FALSE(decompose(parse_sequence(h, "a*t, a^2*t^[3]")));
  EXPECT_TRUE(is_product_one_dihedral(parse_sequence(ground("a, a^-1, e"), "a^[3], a^-1^[3], e^[2]")));
}

TEST(Dihedral, WitnessesAreValid) {
  std::mt19937 rng(11);
  std::vector<Element> els;
  for (int k = -3; k <= 3; ++k) {
    els.push_back(Element::rot(k));
    els.push_back(Element::refl(k));
  }
  auto g = make_ground(dinf(), els);
  int found = 0;
  for (int it = 0; it < 400; ++it) {
    Multiplicities m(g->size(), 0);
    for (int len = std::uniform_int_distribution<int>(1, 9)(rng); len > 0; --len) ++m[rng() % m.size()];
    Sequence s(g, m);
    auto w = decompose(s);
    EXPECT_EQ(w.has_value(), is_product_one_generic(s)) << s.to_string();
    if (w) {
      EXPECT_TRUE(check_witness(s, *w)) << s.to_string();
      ++found;
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Dihedral, ParityLaw) {
  std::mt19937 rng(3);
  std::vector<Element> els;
  for (int k = -4; k <= 4; ++k) {
    els.push_back(Element::rot(k));
    els.push_back(Element::refl(k));
  }
  auto g = make_ground(dinf(), els);
  for (int it = 0; it < 300; ++it) {
    Multiplicities m(g->size(), 0);
    for (int len = std::uniform_int_distribution<int>(1, 7)(rng); len > 0; --len) ++m[rng() % m.size()];
    Sequence s(g, m);
    std::uint64_t refl = 0;
    for (std::size_t p = 0; p < m.size(); ++p)
      if ((*g)[p].is_reflection()) refl += m[p];
    if (is_product_one_generic(s)) {
      EXPECT_EQ(refl % 2, 0u) << s.to_string();
    }
  }
}

TEST(Dihedral, SplitCriterionSmallSweep) {
  std::vector<Element> els;
  for (int k = -2; k <= 2; ++k) {
    els.push_back(Element::rot(k));
    els.push_back(Element::refl(k));
  }
  auto g = make_ground(dinf(), els);
  std::uint64_t n = 0;
  for (std::uint32_t len = 0; len <= 5; ++len)
    for_each_multiset_of_length(g->size(), len, [&](const Multiplicities& m) {
      Sequence s(g, m);
      ASSERT_EQ(is_product_one_dihedral(s), is_product_one_generic(s)) << s.to_string();
      ++n;
    });
  EXPECT_EQ(n, 3003u);
}

TEST(Dihedral, TwoReflections) {
  EXPECT_EQ(strings(two_reflection_atoms(0, 1)), (std::vector<std::string>{"t^[2]", "a*t^[2]"}));
  EXPECT_EQ(strings(two_reflection_atoms(3, 5)), (std::vector<std::string>{"a^3*t^[2]", "a^5*t^[2]"}));
  EXPECT_THROW(two_reflection_atoms(2, 2), precondition_error);
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {3, 5}, {-2, 7}}) {
    auto inv = two_reflection_atoms(i, j);
    EXPECT_EQ(enumerate_atoms(inv.ground, AtomMode::max_length(10)).atoms, inv.atoms);
  }
}

TEST(Dihedral, ThreeReflections) {
  auto g = ground("a*t, a^2*t, a^4*t");
  EXPECT_EQ(three_reflection_mixed_atom(1, 2, 4, g).to_string(), "a*t^[2], a^2*t^[3], a^4*t");
  auto h = ground("t, a^2*t, a^4*t");
  EXPECT_EQ(three_reflection_mixed_atom(0, 2, 4, h).to_string(), "t, a^2*t^[2], a^4*t");
  for (auto [i, j, k] : std::vector<std::array<int, 3>>{{1, 2, 4}, {0, 2, 4}, {1, 3, 5}, {-3, 1, 2}}) {
    auto inv = three_reflection_atoms(i, j, k);
    EXPECT_EQ(inv.atoms.size(), 4u);
    for (auto& a : inv.atoms) EXPECT_TRUE(is_atom(a)) << a.to_string();
    EXPECT_EQ(enumerate_atoms(inv.ground, AtomMode::max_length(14)).atoms, inv.atoms);
  }
}

TEST(Dihedral, TauAlpha) {
  EXPECT_EQ(strings(taualpha_atoms(4)), (std::vector<std::string>{"t^[2]", "a^[2], t^[2]"}));
  EXPECT_EQ(strings(taualpha_atoms(2)), std::vector<std::string>{"t^[2]"});
  auto inv = taualpha_atoms(12);
  EXPECT_EQ(enumerate_atoms(inv.ground, AtomMode::max_length(12)).atoms, inv.atoms);
}

TEST(Dihedral, ClosedFormWithIdentity) {
  auto cf = closed_form_atoms(ground("a*t, a^3*t, e"));
  ASSERT_TRUE(cf);
  EXPECT_EQ(strings(*cf), (std::vector<std::string>{"e", "a*t^[2]", "a^3*t^[2]"}));
  EXPECT_FALSE(closed_form_atoms(ground("a, t")));
  EXPECT_FALSE(closed_form_atoms(ground("t, a*t, a^2*t, a^3*t")));
}

TEST(Dihedral, WeaklyKrullProbeMatchesVerdict) {
  for (auto text : {"a^2, a^3, a^-5, t", "a, a^2, a*t"}) {
    auto p = weakly_krull_probe(ground(text), 6, 40, 10);
    ASSERT_TRUE(p.counterexample) << text;
    EXPECT_FALSE(is_product_one(*p.counterexample));
    EXPECT_EQ(p.witnesses.size(), p.primes.size());
  }
  EXPECT_FALSE(weakly_krull_probe(ground("a, a^-1, t"), 6, 40, 10).counterexample);
}
