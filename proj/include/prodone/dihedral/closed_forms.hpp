#pragma once

// Atom sets over reflection-only grounds and over {a, t}, in closed form.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>

#include "prodone/arith.hpp"
#include "prodone/dihedral/ground.hpp"
#include "prodone/inventory.hpp"

namespace prodone::dihedral {

namespace detail {

inline Sequence square(const GroundPtr& g, const Element& e) { return Sequence::of(g, {{e, 2}}); }

inline GroundPtr reflection_ground(std::vector<std::int64_t> ks, bool identity) {
  std::vector<Element> els;
  for (auto k : ks) els.push_back(Element::refl(k));
  if (identity) els.push_back(Element::rot(0));
  return make_ground(dinf(), els);
}

}  // namespace detail

inline AtomInventory two_reflection_atoms(std::int64_t i, std::int64_t j, GroundPtr ground = nullptr) {
  if (i == j) throw precondition_error("two_reflection_atoms needs distinct exponents");
  if (!ground) ground = detail::reflection_ground({i, j}, false);
  AtomInventory inv{ground, {detail::square(ground, Element::refl(i)), detail::square(ground, Element::refl(j))},
                    Certificate::exact("two reflections: only the squares")};
  inv.normalize();
  return inv;
}

/// The mixed atom for three reflections i, j, k.
inline Sequence three_reflection_mixed_atom(std::int64_t i, std::int64_t j, std::int64_t k, const GroundPtr& ground) {
  std::int64_t kj = checked_abs(checked_sub(k, j)), ki = checked_abs(checked_sub(k, i)), ji = checked_abs(checked_sub(j, i));
  std::int64_t d = std::gcd(std::gcd(kj, ki), ji);
  auto m = [&](std::int64_t v) {
    if (v / d > std::numeric_limits<std::uint32_t>::max()) throw overflow_error("atom multiplicity exceeds 32 bits");
    return static_cast<std::uint32_t>(v / d);
  };
  return Sequence::of(ground, {{Element::refl(i), m(kj)}, {Element::refl(j), m(ki)}, {Element::refl(k), m(ji)}});
}

inline AtomInventory three_reflection_atoms(std::int64_t i, std::int64_t j, std::int64_t k, GroundPtr ground = nullptr) {
  if (i == j || j == k || i == k) throw precondition_error("three_reflection_atoms needs distinct exponents");
  if (!ground) ground = detail::reflection_ground({i, j, k}, false);
  AtomInventory inv{ground,
                    {detail::square(ground, Element::refl(i)), detail::square(ground, Element::refl(j)),
                     detail::square(ground, Element::refl(k)), three_reflection_mixed_atom(i, j, k, ground)},
                    Certificate::exact("three reflections: squares and one mixed atom")};
  inv.normalize();
  return inv;
}

/// a^[2n] t^[2] for 2n + 2 <= max_len, over the ground {a, t}.
inline AtomInventory taualpha_atoms(std::uint64_t max_len) {
  auto ground = make_ground(dinf(), {Element::rot(1), Element::refl(0)});
  AtomInventory inv{ground, {}, Certificate::up_to(max_len)};
  for (std::uint64_t n = 0; 2 * n + 2 <= max_len; ++n)
    inv.atoms.push_back(Sequence::of(ground, {{Element::rot(1), static_cast<std::uint32_t>(2 * n)}, {Element::refl(0), 2}}));
  inv.normalize();
  return inv;
}

/// Closed forms for reflection-only grounds with one to three reflections
/// (identity allowed, as a prime atom).
inline std::optional<AtomInventory> closed_form_atoms(const GroundPtr& ground) {
  auto d = DihedralGround::from(*ground);
  if (!d.rotations.empty() || d.reflections.empty() || d.reflections.size() > 3) return std::nullopt;
  AtomInventory inv{ground, {}, Certificate::exact("")};
  const auto& r = d.reflections;
  if (r.size() == 1) {
    inv.atoms.push_back(detail::square(ground, Element::refl(r[0])));
    inv.certificate = Certificate::exact("one reflection: its square");
  } else if (r.size() == 2) {
    inv = two_reflection_atoms(r[0], r[1], ground);
  } else {
    inv = three_reflection_atoms(r[0], r[1], r[2], ground);
  }
  if (d.has_identity) {
    inv.atoms.push_back(Sequence::of(ground, {{Element::rot(0), 1}}));
    inv.certificate.reason += "; identity is a prime atom";
  }
  inv.normalize();
  return inv;
}

}  // namespace prodone::dihedral
