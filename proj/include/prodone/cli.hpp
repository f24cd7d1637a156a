#pragma once

// The `prodone` command line. Every command prints one JSON report with sorted
// keys; numbers carry their certificate tags. Exit codes: 0 ok, 1 verification
// failure, 2 usage error, 3 budget exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prodone/acceptance.hpp"
#include "prodone/atoms.hpp"
#include "prodone/dihedral/claim_a.hpp"
#include "prodone/dihedral/closed_forms.hpp"
#include "prodone/dihedral/ground.hpp"
#include "prodone/error.hpp"
#include "prodone/factorization.hpp"
#include "prodone/invariants.hpp"
#include "prodone/probes.hpp"

namespace prodone::cli {

using nlohmann::json;

enum exit_code { ok = 0, verification_failed = 1, usage = 2, budget = 3 };

namespace detail {

inline std::string trim(const std::string& s) { return std::string(prodone::detail::trim(s)); }

/// A path to a group-spec file, or the JSON itself.
inline std::shared_ptr<const Group> load_group(const std::string& arg) {
  std::string text = arg;
  if (trim(arg).rfind('{', 0) != 0) {
    std::ifstream f(arg);
    if (!f) throw parse_error("cannot read group spec: " + arg);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return std::make_shared<const Group>(parse_group(text));
}

inline GroundPtr ground_or_whole(const std::shared_ptr<const Group>& g, const std::string& subset) {
  if (!subset.empty()) return parse_ground(g, subset);
  if (!g->is_finite()) throw precondition_error("infinite group: give a subset");
  return make_ground(g, g->elements());
}

inline json witness_json(const dihedral::ClaimAWitness& w) {
  return {{"T1", w.t1.to_string()}, {"T2", w.t2.to_string()}, {"W1", w.w1.to_string()}, {"W2", w.w2.to_string()},
          {"valid", dihedral::check_witness(w.t1.concat(w.t2).concat(w.w1).concat(w.w2), w)}};
}

inline void pretty(std::ostream& out, const json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) pretty(out, v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) pretty(out, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace detail

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Product-one sequences, atoms and arithmetic invariants", "prodone"};
  app.require_subcommand(1);
  bool pretty = false, timing = false;
  app.add_flag("--pretty", pretty, "render key = value lines instead of JSON");
  app.add_flag("--timing", timing, "add elapsed seconds to the report");
  std::uint64_t dp_budget = default_dp_budget, perm_budget = default_perm_budget, fac_budget = default_factorization_budget;
  app.add_option("--dp-budget", dp_budget, "sub-multiset DP pairs")->capture_default_str();
  app.add_option("--perm-budget", perm_budget, "longest sequence the permutation oracle accepts")->capture_default_str();
  app.add_option("--factorization-budget", fac_budget, "factorization search nodes")->capture_default_str();

  json report;
  std::function<int()> action;
  std::string group_arg, seq_arg, subset_arg;

  auto* pi = app.add_subcommand("pi", "product set of a sequence");
  bool oracle = false;
  pi->add_option("group", group_arg, "group spec file or JSON")->required();
  pi->add_option("sequence", seq_arg)->required();
  pi->add_flag("--oracle", oracle, "also run the permutation oracle and report agreement");
  pi->callback([&] {
    action = [&] {
      auto s = parse_sequence_with_support(detail::load_group(group_arg), seq_arg);
      auto p = product_set_dp(s, dp_budget);
      report["results"] = {{"pi", to_json(s.group(), p)}, {"product_one", std::binary_search(p.begin(), p.end(), s.group().identity())}};
      if (oracle) {
        auto q = product_set_perm(s, perm_budget);
        report["results"]["oracle"] = {{"pi", to_json(s.group(), q)}, {"agrees", p == q}};
        if (p != q) return int(verification_failed);
      }
      report["input"] = {{"sequence", s.to_string()}};
      return int(ok);
    };
  });

  auto* is_one = app.add_subcommand("is-one", "1 in pi(S)");
  bool witness = false;
  is_one->add_option("group", group_arg)->required();
  is_one->add_option("sequence", seq_arg)->required();
  is_one->add_flag("--witness", witness, "split witness for dihedral sequences");
  is_one->callback([&] {
    action = [&] {
      auto s = parse_sequence_with_support(detail::load_group(group_arg), seq_arg);
      report["input"] = {{"sequence", s.to_string()}};
      report["results"] = {{"product_one", is_product_one(s, dp_budget)}};
      if (witness && s.group().family() == group_family::infinite_dihedral) {
        auto w = dihedral::decompose(s);
        report["results"]["witness"] = w ? detail::witness_json(*w) : json(nullptr);
      }
      return int(ok);
    };
  });

  auto* atoms = app.add_subcommand("atoms", "atoms of B(G0)");
  std::uint64_t max_len = 0;
  bool exact = false;
  atoms->add_option("group", group_arg)->required();
  atoms->add_option("subset", subset_arg, "comma-separated G0; whole group if omitted");
  auto* ml = atoms->add_option("--max-len", max_len, "atoms up to this length");
  atoms->add_flag("--exact", exact, "all atoms, with a completeness certificate")->excludes(ml);
  atoms->callback([&] {
    action = [&] {
      auto g = detail::ground_or_whole(detail::load_group(group_arg), subset_arg);
      if (!exact && !max_len) throw precondition_error("give --max-len L or --exact");
      auto inv = enumerate_atoms(g, exact ? AtomMode::exact_mode() : AtomMode::max_length(max_len));
      report["input"] = {{"ground", g->to_string()}};
      report["results"] = inv.to_json();
      return int(ok);
    };
  });

  auto* dav = app.add_subcommand("davenport", "D(G0)");
  std::uint64_t scan_len = 24;
  dav->add_option("group", group_arg)->required();
  dav->add_option("subset", subset_arg);
  dav->add_option("--scan-len", scan_len, "length scanned when only a lower bound is available")->capture_default_str();
  dav->callback([&] {
    action = [&] {
      auto g = detail::ground_or_whole(detail::load_group(group_arg), subset_arg);
      auto d = davenport(g, scan_len);
      report["input"] = {{"ground", g->to_string()}};
      report["results"] = {{"D", d.to_json()}};
      return int(ok);
    };
  });

  auto* fac = app.add_subcommand("factorize", "Z(S), L(S) and c(S)");
  fac->add_option("group", group_arg)->required();
  fac->add_option("sequence", seq_arg)->required();
  fac->callback([&] {
    action = [&] {
      auto s = parse_sequence_with_support(detail::load_group(group_arg), seq_arg);
      if (!is_product_one(s, dp_budget)) throw precondition_error("sequence is not product-one");
      auto inv = enumerate_atoms(s.ground_ptr(), AtomMode::max_length(s.length()));
      auto fs = factorizations(s, inv, fac_budget);
      report["input"] = {{"sequence", s.to_string()}};
      report["results"] = fs.to_json(inv);
      report["results"]["catenary"] = {{"tag", "Exact"}, {"value", catenary_degree(fs)}};
      report["certificates"] = {{"atoms", inv.certificate.to_json()}};
      return int(ok);
    };
  });

  auto* invs = app.add_subcommand("invariants", "sets of lengths and local invariants over a scan");
  std::uint32_t max_size = 8, max_k = 4, local_bound = 0;
  invs->add_option("group", group_arg)->required();
  invs->add_option("subset", subset_arg);
  invs->add_option("--max-size", max_size, "scan all S with |S| <= B")->capture_default_str();
  invs->add_option("--max-k", max_k, "U_k, rho_k, lambda_k for k <= K")->capture_default_str();
  invs->add_option("--local", local_bound, "also omega, tau, t per atom, families up to this many atoms");
  invs->callback([&] {
    action = [&] {
      auto g = detail::ground_or_whole(detail::load_group(group_arg), subset_arg);
      SequenceScan scan(g, max_size);
      auto rep = length_invariants(scan, max_k, std::min<std::uint32_t>(max_size, 10));
      report["input"] = {{"ground", g->to_string()}};
      report["results"] = rep.to_json();
      if (local_bound) {
        auto inv = enumerate_atoms(g, AtomMode::max_length(max_size));
        json loc = json::object();
        for (auto& u : inv.atoms) {
          auto lr = local_invariants(u, inv, local_bound, 0);
          std::uint64_t tb = std::min<std::uint64_t>(lr.longest_family_product, max_size);
          lr = local_invariants(u, inv, local_bound, static_cast<std::uint32_t>(tb));
          loc[u.to_string()] = lr.to_json(inv);
        }
        report["results"]["local"] = loc;
        report["certificates"] = {{"atoms", inv.certificate.to_json()}};
      }
      return int(ok);
    };
  });

  auto* probe = app.add_subcommand("probe", "bounded counterexample searches");
  std::string kind;
  std::uint32_t bound = 10;
  probe->add_option("kind", kind)->required()->check(CLI::IsMember({"seminormal", "rootclosed"}));
  probe->add_option("group", group_arg)->required();
  probe->add_option("subset", subset_arg);
  probe->add_option("--bound", bound, "|S1| <= B")->capture_default_str();
  probe->callback([&] {
    action = [&] {
      auto g = detail::ground_or_whole(detail::load_group(group_arg), subset_arg);
      auto r = kind == "seminormal" ? seminormality_probe(g, bound) : root_closure_probe(g, bound);
      report["input"] = {{"ground", g->to_string()}, {"probe", kind}};
      report["results"] = r.to_json();
      return int(ok);
    };
  });

  auto* dih = app.add_subcommand("dihedral", "closed forms over the infinite dihedral group");
  dih->require_subcommand(1);
  auto* classify = dih->add_subcommand("classify", "structural verdicts for B(G0)");
  classify->add_option("subset", subset_arg)->required();
  classify->callback([&] {
    action = [&] {
      auto g = parse_ground(dihedral::dinf(), subset_arg);
      auto d = dihedral::DihedralGround::from(*g);
      bool fg = dihedral::classify_fg_tame(d);
      auto wk = dihedral::classify_weakly_krull(d);
      report["input"] = {{"ground", g->to_string()}};
      report["results"] = {{"finitely_generated", fg}, {"tame", fg}, {"locally_tame", dihedral::classify_locally_tame(d)},
                           {"weakly_krull", wk.value}};
      report["certificates"] = {{"weakly_krull", wk.certificate}, {"davenport", davenport(g).to_json()}};
      return int(ok);
    };
  });
  auto* dis = dih->add_subcommand("is-one", "split criterion membership");
  bool dwitness = false;
  dis->add_option("sequence", seq_arg)->required();
  dis->add_flag("--witness", dwitness);
  dis->callback([&] {
    action = [&] {
      auto s = parse_sequence_with_support(dihedral::dinf(), seq_arg);
      report["input"] = {{"sequence", s.to_string()}};
      report["results"] = {{"product_one", dihedral::is_product_one_dihedral(s)}};
      if (dwitness) {
        auto w = dihedral::decompose(s);
        report["results"]["witness"] = w ? detail::witness_json(*w) : json(nullptr);
      }
      return int(ok);
    };
  });
  auto* dat = dih->add_subcommand("atoms", "atoms by scan or closed form");
  std::uint64_t dmax = 0;
  bool closed = false;
  dat->add_option("subset", subset_arg)->required();
  dat->add_option("--max-len", dmax);
  dat->add_flag("--closed-form", closed, "closed form, cross-checked against a scan when --max-len is given");
  dat->callback([&] {
    action = [&] {
      auto g = parse_ground(dihedral::dinf(), subset_arg);
      report["input"] = {{"ground", g->to_string()}};
      if (closed) {
        auto d = dihedral::DihedralGround::from(*g);
        std::optional<AtomInventory> cf;
        if (d.reflections.empty() && !d.rotations.empty()) throw precondition_error("no closed form for rotation-only grounds; use --max-len");
        if (d.rotations.empty()) cf = dihedral::closed_form_atoms(g);
        else if (g->size() == 2 && d.rotations.size() == 1 && d.rotations[0] == 1 && d.reflections == std::vector<std::int64_t>{0})
          cf = dihedral::taualpha_atoms(dmax ? dmax : 12);
        if (!cf) throw precondition_error("no closed form for this ground");
        report["results"] = cf->to_json();
        if (dmax) {
          auto brute = enumerate_atoms(g, AtomMode::max_length(dmax));
          bool agrees = brute.atoms == cf->truncated(dmax).atoms;
          report["results"]["scan_agrees"] = agrees;
          if (!agrees) return int(verification_failed);
        }
        return int(ok);
      }
      if (!dmax) throw precondition_error("give --max-len L or --closed-form");
      report["results"] = enumerate_atoms(g, AtomMode::max_length(dmax)).to_json();
      return int(ok);
    };
  });

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  std::string suite = "all";
  verify->add_option("--suite", suite, "all, davenport, dihedral, invariants or oracle")->capture_default_str();
  verify->callback([&] {
    action = [&] {
      if (!acceptance::known_suite(suite)) throw precondition_error("unknown suite: " + suite);
      json rows = json::array();
      bool all = true;
      for (auto& o : acceptance::run_suite(suite)) {
        auto j = o.to_json();
        if (timing) j["seconds"] = o.seconds;
        rows.push_back(j);
        all = all && o.passed();
      }
      report["input"] = {{"suite", suite}};
      report["results"] = {{"criteria", rows}, {"passed", all}};
      return int(all ? ok : verification_failed);
    };
  });

  std::vector<std::string> argv_s{"prodone"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (auto& a : argv_s) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }

  std::vector<std::string> path;
  for (auto* s = app.get_subcommands().front(); s; s = s->get_subcommands().empty() ? nullptr : s->get_subcommands().front())
    path.push_back(s->get_name());
  std::string command;
  for (auto& p : path) command += (command.empty() ? "" : " ") + p;
  report["command"] = command;
  if (!group_arg.empty()) report["group"] = detail::trim(group_arg).rfind('{', 0) == 0 ? json::parse(group_arg) : json(group_arg);

  int code = ok;
  auto t0 = std::chrono::steady_clock::now();
  try {
    code = action();
  } catch (const budget_exceeded& e) {
    err << json{{"error", e.what()}, {"kind", "budget_exceeded"}}.dump() << "\n";
    return budget;
  } catch (const error& e) {
    err << json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return usage;
  }
  if (timing) report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  if (pretty) detail::pretty(out, report);
  else out << report.dump() << "\n";
  return code;
}

}  // namespace prodone::cli
