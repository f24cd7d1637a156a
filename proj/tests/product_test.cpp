#include <gtest/gtest.h>

#include <random>

#include "prodone/product.hpp"

using namespace prodone;

namespace {

std::shared_ptr<const Group> share(Group g) { return std::make_shared<const Group>(std::move(g)); }

Sequence dseq(std::string_view ground_text, std::string_view seq) {
  return parse_sequence(parse_ground(share(Group::infinite_dihedral()), ground_text), seq);
}

}  // namespace

TEST(Product, PermutationOracleExamples) {
  auto s = dseq("a, a^-1", "a, a^-1");
  EXPECT_EQ(product_set_perm(s), ProductSet{Element::rot(0)});
  auto t = dseq("a, t", "a, t");
  EXPECT_EQ(product_set_perm(t), (ProductSet{Element::refl(-1), Element::refl(1)}));
  EXPECT_EQ(product_set_perm(dseq("a", "")), ProductSet{Element::rot(0)});
  EXPECT_THROW(product_set_perm(dseq("a", "a^[9]")), budget_exceeded);
}

TEST(Product, DpExamples) {
  EXPECT_EQ(product_set_dp(dseq("t", "t^[2]")), ProductSet{Element::rot(0)});
  auto s = dseq("a^2, a^6, t", "a^2, a^6, t^[2]");
  ProductSet expect{Element::rot(-8), Element::rot(-4), Element::rot(4), Element::rot(8)};
  EXPECT_EQ(product_set_dp(s), expect);
  EXPECT_EQ(product_set_perm(s), expect);
  EXPECT_FALSE(is_product_one(s));
  EXPECT_TRUE(is_product_one(s.power(2)));
  EXPECT_TRUE(is_product_one(s.power(3)));
  EXPECT_TRUE(is_product_one(dseq("a", "")));
}

TEST(Product, ProductOneFree) {
  auto c3 = share(Group::cyclic(3));
  auto g = parse_ground(c3, "g");
  EXPECT_TRUE(is_product_one_free(parse_sequence(g, "g^[2]")));
  EXPECT_FALSE(is_product_one_free(parse_sequence(g, "g^[3]")));
  EXPECT_TRUE(is_product_one_free(dseq("a", "a^[5]")));
}

TEST(Product, DpAgreesWithPermutationOracle) {
  constexpr int kIterations = 500;
  std::vector<std::shared_ptr<const Group>> groups{share(Group::cyclic(6)), share(Group::finite_dihedral(4)),
                                                    share(Group::elementary_2(3)), share(Group::integers()),
                                                    share(Group::infinite_dihedral())};
  std::mt19937_64 rng(2024);
  for (auto& g : groups) {
    for (int it = 0; it < kIterations; ++it) {
      std::vector<Element> els;
      std::size_t len = rng() % 8;
      for (std::size_t i = 0; i < len; ++i) {
        std::int64_t k = static_cast<std::int64_t>(rng() % 11) - 5;
        switch (g->family()) {
          case group_family::finite: els.push_back(Element::fin(static_cast<std::int64_t>(rng() % g->order()))); break;
          case group_family::integers: els.push_back(Element::integer(k)); break;
          default: els.push_back(rng() & 1 ? Element::rot(k) : Element::refl(k));
        }
      }
      auto ground = make_ground(g, els);
      std::vector<std::pair<Element, std::uint32_t>> terms;
      for (auto& e : els) terms.emplace_back(e, 1);
      Sequence s = Sequence::of(ground, terms);
      auto perm = product_set_perm(s);
      ASSERT_EQ(product_set_dp(s), perm) << g->label() << ": " << s.to_string();
      bool one = std::binary_search(perm.begin(), perm.end(), g->identity());
      ASSERT_EQ(is_product_one(s), one) << s.to_string();
      if (g->label() == "cyclic" || g->label() == "elementary-2" || g->label() == "integers") {
        EXPECT_EQ(perm.size(), 1u) << "abelian collapse";
      }
    }
  }
}

TEST(Product, ProductOneImpliesCommutatorSubgroup) {
  // pi(S) lies in G' for every product-one S over a finite group.
  for (auto g : {share(Group::finite_dihedral(3)), share(Group::finite_dihedral(4)), share(Group::cyclic(5))}) {
    auto d = g->commutator_subgroup();
    auto ground = make_ground(g, g->elements());
    std::mt19937 rng(5);
    for (int it = 0; it < 300; ++it) {
      Multiplicities m(ground->size());
      for (int k = 0; k < 6; ++k) ++m[rng() % m.size()];
      Sequence s(ground, m);
      if (!is_product_one(s)) continue;
      for (auto& x : product_set_dp(s)) EXPECT_TRUE(std::binary_search(d.begin(), d.end(), x));
    }
  }
}

TEST(Product, SubmonoidClosure) {
  auto g = share(Group::finite_dihedral(3));
  auto ground = make_ground(g, g->elements());
  std::mt19937 rng(9);
  std::vector<Sequence> ones;
  while (ones.size() < 40) {
    Multiplicities m(ground->size());
    for (int k = 0; k < 4; ++k) ++m[rng() % m.size()];
    Sequence s(ground, m);
    if (is_product_one(s)) ones.push_back(s);
  }
  for (auto& s : ones)
    for (auto& t : ones) EXPECT_TRUE(is_product_one(s.concat(t)));
}

TEST(Product, LatticeFlagsMatchMembership) {
  auto s = dseq("a, a^-1, t, a^2*t", "a^[2], a^-1, t^[2], a^2*t");
  auto pol = product_one_lattice(s);
  for (std::uint64_t i = 0; i < pol.lattice.size(); ++i) {
    Sequence t(s.ground_ptr(), pol.lattice.counts_of(i, s.ground().size()));
    EXPECT_EQ(bool(pol[i]), is_product_one(t)) << t.to_string();
  }
}

TEST(Product, DpBudget) {
  EXPECT_THROW(product_set_dp(dseq("a, t", "a^[2000], t^[2000]"), 1000), budget_exceeded);
}
