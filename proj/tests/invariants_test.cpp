#include <gtest/gtest.h>

#include "prodone/atoms.hpp"
#include "prodone/invariants.hpp"

using namespace prodone;

namespace {

std::shared_ptr<const Group> share(Group g) { return std::make_shared<const Group>(std::move(g)); }
GroundPtr whole(Group g) {
  auto p = share(std::move(g));
  return make_ground(p, p->elements());
}

}  // namespace

TEST(Invariants, CyclicThreeLengths) {
  SequenceScan scan(whole(Group::cyclic(3)), 6);
  auto r = length_invariants(scan, 3, 6);
  EXPECT_EQ(r.delta, std::set<std::uint64_t>{1});
  EXPECT_EQ(r.catenary_max, 3u);
  EXPECT_EQ(r.U[1], std::set<std::uint64_t>{1});
  for (std::uint32_t k = 1; k <= 3; ++k) EXPECT_TRUE(r.interval(k));
  EXPECT_EQ(r.elasticity, (std::pair<std::uint64_t, std::uint64_t>{3, 2}));
}

TEST(Invariants, HalfFactorialTauAlpha) {
  auto g = parse_ground(share(Group::infinite_dihedral()), "a, t");
  SequenceScan scan(g, 12);
  auto r = length_invariants(scan, 4, 8);
  EXPECT_TRUE(r.delta.empty());
  EXPECT_EQ(r.elasticity, (std::pair<std::uint64_t, std::uint64_t>{1, 1}));
  for (std::uint32_t k = 1; k <= 4; ++k) EXPECT_EQ(r.U[k], std::set<std::uint64_t>{k});
}

TEST(Invariants, UnitLengthSetIsOne) {
  for (auto g : {whole(Group::cyclic(4)), whole(Group::finite_dihedral(3)), whole(Group::elementary_2(2))}) {
    SequenceScan scan(g, 8);
    EXPECT_EQ(length_invariants(scan, 1, 0).U[1], std::set<std::uint64_t>{1});
  }
}

TEST(Invariants, DividesInMonoid) {
  auto g = parse_ground(share(Group::infinite_dihedral()), "a, t");
  auto u = parse_sequence(g, "a^[4], t^[2]");
  auto w = parse_sequence(g, "a^[2], t^[2]");
  EXPECT_TRUE(divides_in_monoid(u, w.power(2)));
  EXPECT_FALSE(divides_in_monoid(u, w));
  // Divides in F(G0) but leaves a remainder outside B.
  EXPECT_FALSE(divides_in_monoid(parse_sequence(g, "t^[2]"), parse_sequence(g, "a^[2], t^[3]")));
}

TEST(Invariants, OmegaOfCubeInCyclicThree) {
  auto g = whole(Group::cyclic(3));
  auto inv = enumerate_atoms(g, AtomMode::exact_mode());
  auto u = parse_sequence(g, "g^[3]");
  auto r = local_invariants(u, inv, 0, 0);
  EXPECT_TRUE(r.omega.is_exact());
  EXPECT_EQ(r.omega.value, 3u);
  EXPECT_FALSE(r.prime);
  auto e = local_invariants(parse_sequence(g, "e"), inv, 0, 4);
  EXPECT_TRUE(e.prime);
  EXPECT_EQ(e.omega.value, 1u);
  EXPECT_EQ(e.t.value, 0u);
}

TEST(Invariants, LocalIdentityOnNonPrimeAtoms) {
  for (auto g : {whole(Group::cyclic(3)), whole(Group::cyclic(4)), whole(Group::elementary_2(2))}) {
    auto inv = enumerate_atoms(g, AtomMode::exact_mode());
    for (auto& u : inv.atoms) {
      auto r = local_invariants(u, inv, 0, 0);
      r = local_invariants(u, inv, 0, static_cast<std::uint32_t>(r.longest_family_product));
      if (r.prime) continue;
      EXPECT_EQ(r.t.value, std::max(r.omega.value, 1 + r.tau.value)) << u.to_string();
      EXPECT_LE(r.omega.value, r.t.value);
    }
  }
}

TEST(Invariants, ChainsOnSmallGroups) {
  for (auto g : {whole(Group::cyclic(3)), whole(Group::cyclic(4)), whole(Group::elementary_2(2))}) {
    auto inv = enumerate_atoms(g, AtomMode::exact_mode());
    std::uint64_t omega = 0, D = inv.max_length();
    for (auto& u : inv.atoms) omega = std::max(omega, local_invariants(u, inv, 0, 0).omega.value);
    SequenceScan scan(g, static_cast<std::uint32_t>(2 * D));
    auto r = length_invariants(scan, 4, static_cast<std::uint32_t>(2 * D));
    std::uint64_t sup = r.delta.empty() ? 0 : *r.delta.rbegin();
    EXPECT_LE(sup, r.catenary_max);
    EXPECT_LE(r.catenary_max, omega);
    for (std::uint32_t k = 1; k <= 4; ++k) {
      if (auto rho = r.rho(k)) {
        EXPECT_LE(2 * *rho, k * D);
      }
    }
  }
}

TEST(Invariants, NonCommutingOmegaIsBounded) {
  auto g = parse_ground(share(Group::infinite_dihedral()), "a, t");
  auto inv = enumerate_atoms(g, AtomMode::max_length(8));
  auto r = local_invariants(parse_sequence(g, "a^[4], t^[2]"), inv, 3, 0);
  EXPECT_FALSE(r.omega.is_exact());
  EXPECT_GE(r.omega.value, 2u);
}

TEST(Invariants, TaggedJson) {
  EXPECT_EQ(Tagged::exact(3).to_json()["tag"], "Exact");
  EXPECT_EQ(Tagged::within(3, 8).to_json()["bound"], 8);
  EXPECT_EQ(Tagged::lower(2).to_json()["tag"], "LowerBound");
}
