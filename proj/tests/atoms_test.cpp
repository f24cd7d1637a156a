#include <gtest/gtest.h>

#include "prodone/atoms.hpp"
#include "prodone/dihedral/closed_forms.hpp"

using namespace prodone;

namespace {

std::shared_ptr<const Group> share(Group g) { return std::make_shared<const Group>(std::move(g)); }
GroundPtr whole(Group g) {
  auto p = share(std::move(g));
  return make_ground(p, p->elements());
}
GroundPtr dground(std::string_view text) { return parse_ground(dihedral::dinf(), text); }

}  // namespace

TEST(Atoms, CyclicThreeSingleGenerator) {
  auto g = parse_ground(share(Group::cyclic(3)), "g");
  auto inv = enumerate_atoms(g, AtomMode::exact_mode());
  ASSERT_EQ(inv.atoms.size(), 1u);
  EXPECT_EQ(inv.atoms[0].to_string(), "g^[3]");
  EXPECT_EQ(inv.certificate.k, Certificate::kind::exact);
}

TEST(Atoms, SmallDavenportConstants) {
  EXPECT_EQ(davenport(whole(Group::elementary_2(2))).value, 3u);
  EXPECT_EQ(davenport(whole(Group::elementary_2(3))).value, 4u);
  EXPECT_EQ(davenport(whole(Group::cyclic(5))).value, 5u);
  auto s3 = davenport(whole(Group::finite_dihedral(3)));
  EXPECT_EQ(s3.k, DavenportResult::kind::exact);
  EXPECT_EQ(s3.value, 6u);
}

TEST(Atoms, WholeGroupInventoriesAreAtoms) {
  for (auto g : {whole(Group::finite_dihedral(3)), whole(Group::cyclic(4)), whole(Group::elementary_2(2))}) {
    auto inv = enumerate_atoms(g, AtomMode::exact_mode());
    for (auto& a : inv.atoms) EXPECT_TRUE(is_atom(a)) << a.to_string();
  }
  // C2 x C2: the three squares, e, and the full product of the three involutions.
  EXPECT_EQ(enumerate_atoms(whole(Group::elementary_2(2)), AtomMode::exact_mode()).atoms.size(), 5u);
}

TEST(Atoms, ScanMissesNothingShort) {
  // A short product-one sequence over S3 is listed exactly when is_atom says so.
  auto g = whole(Group::finite_dihedral(3));
  auto inv = enumerate_atoms(g, AtomMode::exact_mode());
  std::size_t listed = 0;
  for (std::uint32_t len = 1; len <= 4; ++len)
    for_each_multiset_of_length(g->size(), len, [&](const Multiplicities& m) {
      Sequence s(g, m);
      if (!is_product_one(s)) return;
      bool listed_atom = std::binary_search(inv.atoms.begin(), inv.atoms.end(), s);
      EXPECT_EQ(listed_atom, is_atom(s)) << s.to_string();
      listed += listed_atom;
    });
  EXPECT_GT(listed, 0u);
}

TEST(Atoms, IsAtomExamples) {
  auto h = dground("a*t, a^2*t, a^4*t");
  EXPECT_TRUE(is_atom(parse_sequence(h, "a*t^[2], a^2*t^[3], a^4*t")));
  EXPECT_FALSE(is_atom(parse_sequence(h, "a*t^[4]")));
  EXPECT_THROW(is_atom(parse_sequence(dground("a^2, a^6, t"), "a^2, a^6, t^[2]")), precondition_error);
  EXPECT_FALSE(is_atom(parse_sequence(h, "")));
  EXPECT_TRUE(is_atom(parse_sequence(dground("a, t"), "t^[2]")));
  EXPECT_FALSE(is_atom(parse_sequence(dground("a, t"), "t^[4]")));
  EXPECT_TRUE(is_atom(parse_sequence(dground("a, e"), "e")));
  auto c4 = parse_ground(share(Group::cyclic(4)), "g, g^2, g^3");
  EXPECT_TRUE(is_atom(parse_sequence(c4, "g^[2], g^2")));
  EXPECT_FALSE(is_atom(parse_sequence(c4, "g^[2], g^3^[2]")));
}

TEST(Atoms, IntegerGroundsAreExact) {
  auto z = share(Group::integers());
  auto inv = enumerate_atoms(parse_ground(z, "2, -3"), AtomMode::exact_mode());
  EXPECT_EQ(inv.certificate.k, Certificate::kind::exact);
  ASSERT_EQ(inv.atoms.size(), 1u);
  EXPECT_EQ(inv.atoms[0].count(Element::integer(2)), 3u);
  EXPECT_EQ(inv.atoms[0].count(Element::integer(-3)), 2u);
  // A single sign leaves only the identity.
  EXPECT_TRUE(enumerate_atoms(parse_ground(z, "1, 4"), AtomMode::exact_mode()).atoms.empty());
}

TEST(Atoms, InfiniteDavenportWitnessFamily) {
  auto g = dground("a, t");
  auto d = davenport(g);
  ASSERT_EQ(d.k, DavenportResult::kind::infinite);
  for (std::uint32_t n = 0; n <= 5; ++n) {
    auto a = d.family(n);
    EXPECT_EQ(a.length(), 2 * n + 2);
    EXPECT_TRUE(is_atom(a)) << a.to_string();
  }
  EXPECT_THROW(enumerate_atoms(g, AtomMode::exact_mode()), precondition_error);
  // Longer scans keep finding longer atoms.
  EXPECT_LT(enumerate_atoms(g, AtomMode::max_length(6)).max_length(), enumerate_atoms(g, AtomMode::max_length(10)).max_length());
}

TEST(Atoms, ReflectionOnlyGroundsStabilise) {
  auto g = dground("a*t, a^2*t, a^4*t");
  EXPECT_EQ(enumerate_atoms(g, AtomMode::max_length(10)).max_length(), enumerate_atoms(g, AtomMode::max_length(16)).max_length());
  auto d = davenport(dground("t, a*t, a^2*t, a^5*t"), 12);
  EXPECT_EQ(d.k, DavenportResult::kind::lower_bound);
}

TEST(Atoms, TruncationKeepsCertificateHonest) {
  auto inv = enumerate_atoms(whole(Group::cyclic(4)), AtomMode::exact_mode());
  auto t = inv.truncated(2);
  EXPECT_EQ(t.certificate.k, Certificate::kind::complete_up_to_length);
  EXPECT_EQ(t.certificate.length, 2u);
  EXPECT_LE(t.max_length(), 2u);
}
