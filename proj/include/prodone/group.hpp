#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "prodone/arith.hpp"
#include "prodone/error.hpp"

namespace prodone {

enum class element_kind : std::uint8_t { finite, integer, rotation, reflection };

// The defaulted ordering is the canonical one: finite indices, then integers,
// then rotations before reflections, each by exponent.
struct Element {
  element_kind kind = element_kind::finite;
  std::int64_t value = 0;

  static constexpr Element fin(std::int64_t i) { return {element_kind::finite, i}; }
  static constexpr Element integer(std::int64_t k) { return {element_kind::integer, k}; }
  static constexpr Element rot(std::int64_t k) { return {element_kind::rotation, k}; }
  static constexpr Element refl(std::int64_t k) { return {element_kind::reflection, k}; }

  bool is_rotation() const { return kind == element_kind::rotation; }
  bool is_reflection() const { return kind == element_kind::reflection; }

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

enum class group_family { finite, integers, infinite_dihedral };

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range) throw overflow_error("integer literal out of range: " + std::string(s));
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

class Group {
 public:
  static Group integers() {
    Group g;
    g.family_ = group_family::integers;
    g.label_ = "integers";
    return g;
  }

  static Group infinite_dihedral() {
    Group g;
    g.family_ = group_family::infinite_dihedral;
    g.label_ = "infinite-dihedral";
    return g;
  }

  /// Validates and adopts a Cayley table given row-major.
  static Group from_cayley(std::vector<std::string> names, std::vector<std::uint32_t> table) {
    Group g;
    g.family_ = group_family::finite;
    g.label_ = "finite-cayley";
    g.names_ = std::move(names);
    g.table_ = std::move(table);
    g.validate_and_index();
    return g;
  }

  static Group cyclic(std::int64_t n) {
    if (n < 1 || n > 4096) throw precondition_error("cyclic order must lie in [1, 4096]");
    std::vector<std::string> names;
    std::vector<std::uint32_t> table;
    for (std::int64_t i = 0; i < n; ++i)
      names.push_back(i == 0 ? "e" : i == 1 ? "g" : "g^" + std::to_string(i));
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j) table.push_back(static_cast<std::uint32_t>((i + j) % n));
    Group g = from_cayley(std::move(names), std::move(table));
    g.label_ = "cyclic";
    g.param_ = n;
    return g;
  }

  /// Order 2n: index i is a^i, index n+i is a^i*t.
  static Group finite_dihedral(std::int64_t n) {
    if (n < 1 || n > 2048) throw precondition_error("dihedral parameter must lie in [1, 2048]");
    auto rot_name = [](std::int64_t i) { return i == 0 ? std::string("e") : i == 1 ? std::string("a") : "a^" + std::to_string(i); };
    std::vector<std::string> names;
    for (std::int64_t i = 0; i < n; ++i) names.push_back(rot_name(i));
    for (std::int64_t i = 0; i < n; ++i) names.push_back(i == 0 ? std::string("t") : rot_name(i) + "*t");
    auto idx = [n](bool refl, std::int64_t k) { return static_cast<std::uint32_t>((refl ? n : 0) + ((k % n) + n) % n); };
    std::vector<std::uint32_t> table;
    for (std::int64_t x = 0; x < 2 * n; ++x)
      for (std::int64_t y = 0; y < 2 * n; ++y) {
        bool rx = x >= n, ry = y >= n;
        std::int64_t a = x % n, b = y % n;
        if (!rx && !ry) table.push_back(idx(false, a + b));
        else if (!rx && ry) table.push_back(idx(true, a + b));
        else if (rx && !ry) table.push_back(idx(true, a - b));
        else table.push_back(idx(false, a - b));
      }
    Group g = from_cayley(std::move(names), std::move(table));
    g.label_ = "finite-dihedral";
    g.param_ = n;
    return g;
  }

  /// C_2^r; index bits are coordinates, names like "x1*x3".
  static Group elementary_2(std::int64_t r) {
    if (r < 0 || r > 10) throw precondition_error("elementary-2 rank must lie in [0, 10]");
    std::uint32_t n = 1u << r;
    std::vector<std::string> names;
    for (std::uint32_t m = 0; m < n; ++m) {
      std::string s;
      for (std::int64_t b = 0; b < r; ++b)
        if (m >> b & 1u) s += (s.empty() ? "x" : "*x") + std::to_string(b + 1);
      names.push_back(m == 0 ? "e" : s);
    }
    std::vector<std::uint32_t> table;
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y) table.push_back(x ^ y);
    Group g = from_cayley(std::move(names), std::move(table));
    g.label_ = "elementary-2";
    g.param_ = r;
    return g;
  }

  group_family family() const { return family_; }
  const std::string& label() const { return label_; }
  bool is_finite() const { return family_ == group_family::finite; }
  std::size_t order() const { return names_.size(); }

  Element identity() const {
    switch (family_) {
      case group_family::finite: return Element::fin(identity_);
      case group_family::integers: return Element::integer(0);
      case group_family::infinite_dihedral: return Element::rot(0);
    }
    return {};
  }

  bool contains(const Element& a) const {
    switch (family_) {
      case group_family::finite:
        return a.kind == element_kind::finite && a.value >= 0 && static_cast<std::size_t>(a.value) < order();
      case group_family::integers: return a.kind == element_kind::integer;
      case group_family::infinite_dihedral: return a.is_rotation() || a.is_reflection();
    }
    return false;
  }

  Element mul(const Element& a, const Element& b) const {
    check(a);
    check(b);
    switch (family_) {
      case group_family::finite:
        return Element::fin(table_[static_cast<std::size_t>(a.value) * order() + static_cast<std::size_t>(b.value)]);
      case group_family::integers: return Element::integer(checked_add(a.value, b.value));
      case group_family::infinite_dihedral:
        if (a.is_rotation() && b.is_rotation()) return Element::rot(checked_add(a.value, b.value));
        if (a.is_rotation()) return Element::refl(checked_add(a.value, b.value));
        if (b.is_rotation()) return Element::refl(checked_sub(a.value, b.value));
        return Element::rot(checked_sub(a.value, b.value));
    }
    return {};
  }

  Element inverse(const Element& a) const {
    check(a);
    switch (family_) {
      case group_family::finite: return Element::fin(inverse_[static_cast<std::size_t>(a.value)]);
      case group_family::integers: return Element::integer(checked_neg(a.value));
      case group_family::infinite_dihedral: return a.is_rotation() ? Element::rot(checked_neg(a.value)) : a;
    }
    return {};
  }

  Element power(const Element& a, std::int64_t k) const {
    check(a);
    switch (family_) {
      case group_family::integers: return Element::integer(checked_mul(a.value, k));
      case group_family::infinite_dihedral:
        if (a.is_rotation()) return Element::rot(checked_mul(a.value, k));
        return (k % 2 == 0) ? identity() : a;
      case group_family::finite: {
        std::int64_t ord = element_order(a);
        std::int64_t e = ((k % ord) + ord) % ord;
        Element r = identity();
        for (std::int64_t i = 0; i < e; ++i) r = mul(r, a);
        return r;
      }
    }
    return {};
  }

  /// Order of a finite-group element.
  std::int64_t element_order(const Element& a) const {
    if (!is_finite()) throw precondition_error("element order requested in an infinite group");
    Element x = a;
    std::int64_t k = 1;
    while (x != identity()) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  bool commute(const Element& a, const Element& b) const { return mul(a, b) == mul(b, a); }

  /// All elements of a finite group in canonical order.
  std::vector<Element> elements() const {
    if (!is_finite()) throw precondition_error("element list requested for an infinite group");
    std::vector<Element> out;
    for (std::size_t i = 0; i < order(); ++i) out.push_back(Element::fin(static_cast<std::int64_t>(i)));
    return out;
  }

  std::uint32_t table_at(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }

  /// Subgroup generated by all commutators g^-1 h^-1 g h, sorted.
  std::vector<Element> commutator_subgroup() const {
    if (!is_finite()) throw precondition_error("commutator_subgroup needs a finite group");
    std::set<Element> gens;
    for (auto g : elements())
      for (auto h : elements()) gens.insert(mul(mul(inverse(g), inverse(h)), mul(g, h)));
    return closure(std::vector<Element>(gens.begin(), gens.end()));
  }

  /// Subgroup generated by the given elements (finite groups only).
  std::vector<Element> closure(const std::vector<Element>& gens) const {
    std::set<Element> seen{identity()};
    std::vector<Element> frontier{identity()};
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (auto x : frontier)
        for (auto g : gens) {
          Element y = mul(x, g);
          if (seen.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  std::string format(const Element& a) const {
    check(a);
    switch (family_) {
      case group_family::finite: return names_[static_cast<std::size_t>(a.value)];
      case group_family::integers: return std::to_string(a.value);
      case group_family::infinite_dihedral: {
        std::string r = a.value == 0 ? "" : a.value == 1 ? "a" : "a^" + std::to_string(a.value);
        if (a.is_rotation()) return r.empty() ? "e" : r;
        return r.empty() ? "t" : r + "*t";
      }
    }
    return {};
  }

  /// Element grammar: a name, or '*'-separated factors NAME or NAME^K.
  Element parse_element(std::string_view text) const {
    std::string_view s = detail::trim(text);
    if (s.empty()) throw parse_error("empty element");
    if (auto e = lookup_name(s)) return *e;
    Element acc = identity();
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t star = s.find('*', start);
      std::string_view factor = detail::trim(s.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start));
      acc = mul(acc, parse_factor(factor, text));
      if (star == std::string_view::npos) break;
      start = star + 1;
    }
    return acc;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["kind"] = label_;
    if (label_ == "cyclic" || label_ == "finite-dihedral") j["n"] = param_;
    if (label_ == "elementary-2") j["r"] = param_;
    if (label_ == "finite-cayley") {
      j["elements"] = names_;
      j["table"] = table_;
    }
    return j;
  }

  friend bool operator==(const Group& a, const Group& b) {
    return a.family_ == b.family_ && a.names_ == b.names_ && a.table_ == b.table_;
  }

 private:
  Group() = default;

  void check(const Element& a) const {
    if (!contains(a)) throw precondition_error("element does not belong to the group");
  }

  std::optional<Element> lookup_name(std::string_view s) const {
    if (is_finite()) {
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == s) return Element::fin(static_cast<std::int64_t>(i));
    }
    if (s == "e" || s == "1") {
      if (family_ != group_family::integers || s == "e") return identity();
    }
    if (family_ == group_family::integers) {
      if (auto v = detail::parse_int(s)) return Element::integer(*v);
    }
    if (family_ == group_family::infinite_dihedral) {
      if (s == "a") return Element::rot(1);
      if (s == "t") return Element::refl(0);
    }
    return std::nullopt;
  }

  Element parse_factor(std::string_view f, std::string_view whole) const {
    if (f.empty()) throw parse_error("malformed element: " + std::string(whole));
    if (auto e = lookup_name(f)) return *e;
    std::size_t caret = f.rfind('^');
    if (caret != std::string_view::npos) {
      auto base = lookup_name(detail::trim(f.substr(0, caret)));
      auto k = detail::parse_int(f.substr(caret + 1));
      if (base && k) return power(*base, *k);
    }
    throw parse_error("unknown element: " + std::string(whole));
  }

  void validate_and_index() {
    std::size_t n = names_.size();
    if (n == 0) throw parse_error("cayley table needs at least one element");
    if (n > 4096) throw precondition_error("cayley table larger than 4096 elements");
    if (table_.size() != n * n) throw parse_error("cayley table has wrong size");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (names_[i] == names_[j]) throw parse_error("duplicate element name: " + names_[i]);
    for (auto v : table_)
      if (v >= n) throw parse_error("cayley table entry out of range");
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<bool> row(n), col(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (row[table_[i * n + j]] || col[table_[j * n + i]]) throw parse_error("cayley table is not a Latin square");
        row[table_[i * n + j]] = col[table_[j * n + i]] = true;
      }
    }
    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) ok = table_[e * n + j] == j && table_[j * n + e] == j;
      if (ok) id = e;
    }
    if (!id) throw parse_error("cayley table has no identity");
    identity_ = static_cast<std::uint32_t>(*id);
    inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t b = 0;
      while (table_[a * n + b] != identity_) ++b;
      if (table_[b * n + a] != identity_) throw parse_error("cayley table lacks two-sided inverses");
      inverse_[a] = static_cast<std::uint32_t>(b);
    }
    if (n <= 512) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          std::size_t ab = table_[a * n + b];
          for (std::size_t c = 0; c < n; ++c)
            if (table_[ab * n + c] != table_[a * n + table_[b * n + c]])
              throw parse_error("cayley table is not associative");
        }
    }
  }

  group_family family_ = group_family::finite;
  std::string label_;
  std::int64_t param_ = 0;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::uint32_t identity_ = 0;
};

/// Reads the group-spec document.
inline Group group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw parse_error("group spec needs a string \"kind\"");
  std::string kind = j["kind"];
  auto param = [&](const char* key) -> std::int64_t {
    if (!j.contains(key) || !j[key].is_number_integer()) throw parse_error(std::string("group kind ") + kind + " needs integer \"" + key + "\"");
    return j[key].get<std::int64_t>();
  };
  if (kind == "integers") return Group::integers();
  if (kind == "infinite-dihedral") return Group::infinite_dihedral();
  if (kind == "cyclic") return Group::cyclic(param("n"));
  if (kind == "finite-dihedral") return Group::finite_dihedral(param("n"));
  if (kind == "elementary-2") return Group::elementary_2(param("r"));
  if (kind == "finite-cayley") {
    if (!j.contains("elements") || !j["elements"].is_array()) throw parse_error("finite-cayley needs \"elements\"");
    if (!j.contains("table") || !j["table"].is_array()) throw parse_error("finite-cayley needs \"table\"");
    std::vector<std::string> names;
    for (auto& e : j["elements"]) {
      if (!e.is_string()) throw parse_error("element names must be strings");
      names.push_back(e);
    }
    std::vector<std::uint32_t> table;
    auto push = [&](const nlohmann::json& v) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw parse_error("table entries must be non-negative integers");
      table.push_back(v.get<std::uint32_t>());
    };
    for (auto& row : j["table"]) {
      if (row.is_array())
        for (auto& v : row) push(v);
      else
        push(row);
    }
    Group g = Group::from_cayley(std::move(names), std::move(table));
    if (j.contains("identity") && g.identity() != Element::fin(j["identity"].get<std::int64_t>()))
      throw parse_error("declared identity does not act as identity");
    return g;
  }
  throw parse_error("unknown group kind: " + kind);
}

inline Group parse_group(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("group spec is not valid JSON: ") + e.what());
  }
  return group_from_json(j);
}

}  // namespace prodone
