#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodone/sequence.hpp"

namespace prodone {

/// How far an atom list is known to be complete.
struct Certificate {
  enum class kind { exact, complete_up_to_length };
  kind k = kind::exact;
  std::uint64_t length = 0;  // only for complete_up_to_length
  std::string reason;        // what justifies an exact certificate

  static Certificate exact(std::string why) { return {kind::exact, 0, std::move(why)}; }
  static Certificate up_to(std::uint64_t len) { return {kind::complete_up_to_length, len, {}}; }

  bool covers(std::uint64_t len) const { return k == kind::exact || len <= length; }

  nlohmann::json to_json() const {
    if (k == kind::exact) return {{"tag", "Exact"}, {"reason", reason}};
    return {{"tag", "CompleteUpToLength"}, {"length", length}};
  }
};

struct AtomInventory {
  GroundPtr ground;
  std::vector<Sequence> atoms;  // canonical order, no duplicates
  Certificate certificate;

  std::uint64_t max_length() const {
    std::uint64_t m = 0;
    for (auto& a : atoms) m = std::max(m, a.length());
    return m;
  }

  void normalize() {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  }

  /// Atoms of length <= len, keeping the certificate honest.
  AtomInventory truncated(std::uint64_t len) const {
    AtomInventory r{ground, {}, certificate};
    for (auto& a : atoms)
      if (a.length() <= len) r.atoms.push_back(a);
    if (max_length() > len || certificate.k != Certificate::kind::exact) {
      std::uint64_t cover = certificate.k == Certificate::kind::exact ? len : std::min(len, certificate.length);
      r.certificate = Certificate::up_to(cover);
    }
    return r;
  }

  nlohmann::json to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (auto& a : atoms) list.push_back(a.to_string());
    return {{"atoms", list},
            {"count", atoms.size()},
            {"max_length", max_length()},
            {"certificate", certificate.to_json()}};
  }
};

}  // namespace prodone
