#include <gtest/gtest.h>

#include "prodone/probes.hpp"

using namespace prodone;

namespace {

std::shared_ptr<const Group> share(Group g) { return std::make_shared<const Group>(std::move(g)); }
GroundPtr dground(std::string_view text) { return parse_ground(dihedral::dinf(), text); }

std::vector<std::string> names(const Group& g, const std::vector<Element>& v) {
  std::vector<std::string> out;
  for (auto& e : v) out.push_back(g.format(e));
  return out;
}

}  // namespace

TEST(Probes, BStar) {
  auto g = dground("a^2, a^6, t");
  // <G0>' is generated by a^4 here.
  EXPECT_TRUE(bstar_membership(parse_sequence(g, "a^2, a^6, t^[2]")));
  EXPECT_FALSE(bstar_membership(parse_sequence(g, "a^2, t^[2]")));
  EXPECT_FALSE(bstar_membership(parse_sequence(g, "a^2, t")));
  auto r = dground("a, a^-2");
  EXPECT_TRUE(bstar_membership(parse_sequence(r, "a^[2], a^-2")));
  EXPECT_FALSE(bstar_membership(parse_sequence(r, "a, a^-2")));
  auto s3 = share(Group::finite_dihedral(3));
  auto w = make_ground(s3, s3->elements());
  EXPECT_TRUE(bstar_membership(parse_sequence(w, "a")));
  EXPECT_FALSE(bstar_membership(parse_sequence(w, "t")));
}

TEST(Probes, BStarContainsB) {
  auto g = dground("a^2, a^-3, t, a*t");
  SequenceScan scan(g, 6);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (scan.product_one(i)) {
      EXPECT_TRUE(bstar_membership(scan.sequence(i))) << scan.sequence(i).to_string();
    }
  }
}

TEST(Probes, Seminormality) {
  auto p = seminormality_probe(dground("a^2, a^6, t"), 10);
  ASSERT_TRUE(p.found);
  EXPECT_EQ(p.t->to_string(), "a^2, a^6, t^[2]");
  EXPECT_TRUE(is_product_one(*p.s1));
  EXPECT_TRUE(is_product_one(*p.s2));
  EXPECT_EQ(p.s2->concat(*p.t), *p.s1);
  EXPECT_FALSE(seminormality_probe(dground("a, a^-1, t"), 8).found);
}

TEST(Probes, RootClosure) {
  EXPECT_FALSE(root_closure_probe(dground("a, a^-1, t"), 8).found);
  auto p = root_closure_probe(dground("a^2, a^6, t"), 8);
  ASSERT_TRUE(p.found);
  EXPECT_FALSE(is_product_one(*p.t));
  EXPECT_TRUE(is_product_one(p.t->power(p.power)));
}

TEST(Probes, Localization) {
  auto g = dground("a, a^-1, t");
  auto s = parse_sequence(g, "a^[2]");
  auto at_a = in_localization(s, Element::rot(1), 6);
  ASSERT_TRUE(at_a);
  EXPECT_EQ(at_a->count(Element::rot(1)), 0u);
  EXPECT_TRUE(is_product_one(s.concat(*at_a)));
  EXPECT_FALSE(in_localization(s, Element::refl(0), 6));
  EXPECT_THROW(in_localization(s, Element::rot(5), 6), precondition_error);
}

TEST(Probes, CondensedSubset) {
  auto D = dihedral::dinf();
  auto check = [&](std::string_view text, std::vector<std::string> expect) {
    auto g = dground(text);
    auto c = condensed_subset(g);
    EXPECT_TRUE(c.exact);
    EXPECT_EQ(names(*D, c.elements), expect) << text;
    EXPECT_EQ(names(*D, condensed_by_search(g, 6)), expect) << text;
  };
  check("a, t", {"a", "t"});
  check("a, a^2", {});
  check("a, a^-2, a^3", {"a^-2", "a", "a^3"});
  check("a, a^2, e", {"e"});
  auto v4 = share(Group::elementary_2(2));
  auto g = parse_ground(v4, "x1, x2, x1*x2");
  EXPECT_EQ(condensed_subset(g).elements.size(), 3u);
  EXPECT_EQ(condensed_by_search(g, 3).size(), 3u);
}

TEST(Probes, HeightOnePrimes) {
  auto D = dihedral::dinf();
  EXPECT_EQ(names(*D, height_one_primes(dground("a, a^-1, t"))), (std::vector<std::string>{"a^-1", "a", "t"}));
  // Without t the rotations only occur together, so one prime covers both.
  EXPECT_EQ(height_one_primes(dground("a, a^-1")).size(), 2u);
}

TEST(Probes, FinitaryWitness) {
  auto w = finitary_witness(dground("a, a^-1, t"), 4, 6);
  ASSERT_TRUE(w.found);
  for (auto& s : w.sequences) EXPECT_TRUE(is_product_one(s)) << s.to_string();
  std::vector<std::string> got;
  for (auto& s : w.sequences) got.push_back(s.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"a^-1, a", "t^[2]"}));
  EXPECT_FALSE(finitary_witness(dground("a, a^-1, t"), 1, 6).found);
}
