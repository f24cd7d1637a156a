#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prodone/error.hpp"
#include "prodone/group.hpp"

namespace prodone {

using Multiplicities = std::vector<std::uint32_t>;

/// A finite subset G0 of a group, kept in canonical element order.
class GroundSet {
 public:
  GroundSet(std::shared_ptr<const Group> group, std::vector<Element> elements)
      : group_(std::move(group)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (auto& e : elements_)
      if (!group_->contains(e)) throw precondition_error("ground element outside the group");
  }

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const Element& e) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
    if (it == elements_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  bool all_commute() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (!group_->commute(elements_[i], elements_[j])) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < size(); ++i) s += (i ? ", " : "") + group_->format(elements_[i]);
    return s;
  }

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.elements_ == b.elements_ && (a.group_ == b.group_ || *a.group_ == *b.group_);
  }

 private:
  std::shared_ptr<const Group> group_;
  std::vector<Element> elements_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

inline GroundPtr make_ground(std::shared_ptr<const Group> g, std::vector<Element> elements) {
  return std::make_shared<const GroundSet>(std::move(g), std::move(elements));
}

inline GroundPtr make_ground(const Group& g, std::vector<Element> elements) {
  return make_ground(std::make_shared<const Group>(g), std::move(elements));
}

/// Parses a comma-separated subset such as "a, a^-1, t".
inline GroundPtr parse_ground(std::shared_ptr<const Group> g, std::string_view text) {
  std::vector<Element> els;
  std::string_view s = detail::trim(text);
  std::size_t start = 0;
  while (!s.empty() && start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string_view term = detail::trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    els.push_back(g->parse_element(term));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return make_ground(std::move(g), std::move(els));
}

/// An element of F(G0): dense multiplicities indexed by ground position.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(GroundPtr ground) : ground_(std::move(ground)), counts_(ground_->size(), 0) {}
  Sequence(GroundPtr ground, Multiplicities counts) : ground_(std::move(ground)), counts_(std::move(counts)) {
    if (counts_.size() != ground_->size()) throw precondition_error("multiplicity vector does not match ground");
    length_check();
  }

  /// Builds from (element, multiplicity) pairs; every element must lie in the ground.
  static Sequence of(GroundPtr ground, const std::vector<std::pair<Element, std::uint32_t>>& terms) {
    Sequence s(std::move(ground));
    for (auto& [e, m] : terms) {
      auto i = s.ground_->index_of(e);
      if (!i) throw precondition_error("term outside the ground: " + s.ground_->group().format(e));
      s.counts_[*i] = checked_add_u32(s.counts_[*i], m);
    }
    s.length_check();
    return s;
  }

  const GroundSet& ground() const { return *ground_; }
  const GroundPtr& ground_ptr() const { return ground_; }
  const Group& group() const { return ground_->group(); }
  const Multiplicities& counts() const { return counts_; }
  std::uint32_t count(std::size_t pos) const { return counts_[pos]; }
  std::uint32_t count(const Element& e) const {
    auto i = ground_->index_of(e);
    return i ? counts_[*i] : 0;
  }

  std::uint64_t length() const {
    std::uint64_t n = 0;
    for (auto c : counts_) n += c;
    return n;
  }
  bool empty() const { return length() == 0; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (counts_[i]) s.push_back(i);
    return s;
  }

  /// Terms with repetition, in canonical order.
  std::vector<Element> terms() const {
    std::vector<Element> t;
    for (std::size_t i = 0; i < counts_.size(); ++i) t.insert(t.end(), counts_[i], (*ground_)[i]);
    return t;
  }

  /// Sparse (position, multiplicity) pairs: the canonical encoding.
  std::vector<std::pair<std::size_t, std::uint32_t>> encode() const {
    std::vector<std::pair<std::size_t, std::uint32_t>> e;
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (counts_[i]) e.emplace_back(i, counts_[i]);
    return e;
  }

  Sequence concat(const Sequence& t) const {
    same_ground(t);
    Sequence r = *this;
    for (std::size_t i = 0; i < counts_.size(); ++i) r.counts_[i] = checked_add_u32(r.counts_[i], t.counts_[i]);
    r.length_check();
    return r;
  }

  /// T | S in F(G0), written t.divides(s).
  bool divides(const Sequence& s) const {
    same_ground(s);
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (counts_[i] > s.counts_[i]) return false;
    return true;
  }

  Sequence subtract(const Sequence& t) const {
    if (!t.divides(*this)) throw precondition_error("subtract: sequence does not divide");
    Sequence r = *this;
    for (std::size_t i = 0; i < counts_.size(); ++i) r.counts_[i] -= t.counts_[i];
    return r;
  }

  Sequence power(std::uint32_t n) const {
    Sequence r(ground_);
    for (std::uint32_t k = 0; k < n; ++k) r = r.concat(*this);
    return r;
  }

  Sequence with(std::size_t pos, std::uint32_t extra = 1) const {
    Sequence r = *this;
    r.counts_[pos] = checked_add_u32(r.counts_[pos], extra);
    r.length_check();
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (!counts_[i]) continue;
      if (!s.empty()) s += ", ";
      s += group().format((*ground_)[i]);
      if (counts_[i] > 1) s += "^[" + std::to_string(counts_[i]) + "]";
    }
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (auto [i, m] : encode()) j.push_back({group().format((*ground_)[i]), m});
    return j;
  }

  friend bool operator==(const Sequence& a, const Sequence& b) { return a.counts_ == b.counts_; }

  /// Canonical order: by length, then by the sorted term list.
  friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    // Equal lengths: compare term lists lexicographically, which reduces to
    // comparing multiplicity vectors from the first ground element on, with
    // a larger early multiplicity meaning a smaller term list.
    for (std::size_t i = 0; i < a.counts_.size(); ++i)
      if (a.counts_[i] != b.counts_[i]) return b.counts_[i] <=> a.counts_[i];
    return std::strong_ordering::equal;
  }

 private:
  void same_ground(const Sequence& t) const {
    if (ground_ != t.ground_ && !(*ground_ == *t.ground_)) throw precondition_error("sequences over different grounds");
  }
  void length_check() const {
    if (length() > (std::uint64_t{1} << 31)) throw overflow_error("sequence length exceeds 2^31");
  }

  GroundPtr ground_;
  Multiplicities counts_;
};

/// Parses "a^2, a^6, t^[2]"; the ground must contain every term.
inline Sequence parse_sequence(const GroundPtr& ground, std::string_view text) {
  std::vector<std::pair<Element, std::uint32_t>> terms;
  std::string_view s = detail::trim(text);
  std::size_t start = 0;
  while (!s.empty() && start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string_view term = detail::trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    std::uint32_t mult = 1;
    if (term.size() >= 3 && term.back() == ']') {
      std::size_t open = term.rfind("^[");
      if (open == std::string_view::npos) throw parse_error("malformed multiplicity in: " + std::string(term));
      auto m = detail::parse_int(term.substr(open + 2, term.size() - open - 3));
      if (!m || *m < 0 || *m > (std::int64_t{1} << 31)) throw parse_error("bad multiplicity in: " + std::string(term));
      mult = static_cast<std::uint32_t>(*m);
      term = detail::trim(term.substr(0, open));
    }
    Element e = ground->group().parse_element(term);
    if (!ground->index_of(e)) throw parse_error("term outside the ground set: " + std::string(term));
    if (mult) terms.emplace_back(e, mult);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Sequence::of(ground, terms);
}

/// Parses a sequence and uses its support as the ground.
inline Sequence parse_sequence_with_support(std::shared_ptr<const Group> g, std::string_view text) {
  std::vector<Element> els;
  std::string_view s = detail::trim(text);
  std::size_t start = 0;
  while (!s.empty() && start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string_view term = detail::trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (std::size_t open = term.rfind("^["); open != std::string_view::npos && term.back() == ']') term = term.substr(0, open);
    els.push_back(g->parse_element(term));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parse_sequence(make_ground(std::move(g), std::move(els)), text);
}

inline Sequence sequence_from_json(const GroundPtr& ground, const nlohmann::json& j) {
  if (!j.is_array()) throw parse_error("sequence JSON must be a list of [element, multiplicity]");
  std::vector<std::pair<Element, std::uint32_t>> terms;
  for (auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_number_unsigned())
      throw parse_error("sequence JSON terms must be [string, multiplicity]");
    Element e = ground->group().parse_element(t[0].get<std::string>());
    if (!ground->index_of(e)) throw parse_error("term outside the ground set");
    terms.emplace_back(e, t[1].get<std::uint32_t>());
  }
  return Sequence::of(ground, terms);
}

/// Mixed-radix indexing of the sub-multisets of S: index(T) = sum c_i * stride_i,
/// so index(S - T) = index(S) - index(T).
class SubsequenceLattice {
 public:
  static constexpr std::uint64_t default_budget = 50'000'000;

  explicit SubsequenceLattice(const Multiplicities& counts, std::uint64_t budget = default_budget) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (!counts[i]) continue;
      positions_.push_back(i);
      radices_.push_back(counts[i] + 1);
      strides_.push_back(size);
      if (__builtin_mul_overflow(size, std::uint64_t{counts[i]} + 1, &size) || size > budget)
        throw budget_exceeded("sub-multiset lattice exceeds budget");
    }
    size_ = size;
  }

  std::uint64_t size() const { return size_; }
  std::uint64_t top() const { return size_ - 1; }
  std::size_t digits() const { return positions_.size(); }
  const std::vector<std::size_t>& positions() const { return positions_; }
  const std::vector<std::uint64_t>& strides() const { return strides_; }
  const std::vector<std::uint32_t>& radices() const { return radices_; }

  std::uint32_t digit(std::uint64_t idx, std::size_t d) const {
    return static_cast<std::uint32_t>((idx / strides_[d]) % radices_[d]);
  }

  std::uint64_t length(std::uint64_t idx) const {
    std::uint64_t n = 0;
    for (std::size_t d = 0; d < digits(); ++d) n += digit(idx, d);
    return n;
  }

  Multiplicities counts_of(std::uint64_t idx, std::size_t ground_size) const {
    Multiplicities m(ground_size, 0);
    for (std::size_t d = 0; d < digits(); ++d) m[positions_[d]] = digit(idx, d);
    return m;
  }

  std::uint64_t index_of(const Multiplicities& m) const {
    std::uint64_t idx = 0;
    for (std::size_t d = 0; d < digits(); ++d) {
      if (m[positions_[d]] >= radices_[d]) throw precondition_error("sequence does not divide the lattice top");
      idx += m[positions_[d]] * strides_[d];
    }
    return idx;
  }

  bool leq(std::uint64_t a, std::uint64_t b) const {
    for (std::size_t d = 0; d < digits(); ++d)
      if (digit(a, d) > digit(b, d)) return false;
    return true;
  }

  /// Visits every index U <= T componentwise, ascending.
  template <class F>
  void for_each_below(std::uint64_t t, F&& f) const {
    std::vector<std::uint32_t> lim(digits()), cur(digits(), 0);
    for (std::size_t d = 0; d < digits(); ++d) lim[d] = digit(t, d);
    std::uint64_t idx = 0;
    for (;;) {
      f(idx);
      std::size_t d = 0;
      for (; d < digits(); ++d) {
        if (cur[d] < lim[d]) {
          ++cur[d];
          idx += strides_[d];
          break;
        }
        idx -= cur[d] * strides_[d];
        cur[d] = 0;
      }
      if (d == digits()) return;
    }
  }

 private:
  std::vector<std::size_t> positions_;
  std::vector<std::uint32_t> radices_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 1;
};

/// Visits every sub-multiset of S once, ascending in the lattice order.
template <class F>
void enumerate_subsequences(const Sequence& s, F&& visit, std::uint64_t budget = SubsequenceLattice::default_budget) {
  SubsequenceLattice lat(s.counts(), budget);
  lat.for_each_below(lat.top(), [&](std::uint64_t idx) { visit(Sequence(s.ground_ptr(), lat.counts_of(idx, s.ground().size()))); });
}

struct MultiplicitiesHash {
  std::size_t operator()(const Multiplicities& m) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto c : m) h = (h ^ c) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

/// Visits every multiset over `k` positions with total length exactly `len`,
/// in canonical order (earlier positions saturated first).
template <class F>
void for_each_multiset_of_length(std::size_t k, std::uint32_t len, F&& f) {
  if (k == 0) {
    if (len == 0) {
      Multiplicities m;
      f(m);
    }
    return;
  }
  Multiplicities m(k, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t pos, std::uint32_t left) {
    if (pos + 1 == k) {
      m[pos] = left;
      f(m);
      m[pos] = 0;
      return;
    }
    for (std::uint32_t c = left + 1; c-- > 0;) {
      m[pos] = c;
      rec(pos + 1, left - c);
    }
    m[pos] = 0;
  };
  rec(0, len);
}

}  // namespace prodone
