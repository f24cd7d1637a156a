#include <gtest/gtest.h>

#include <sstream>

#include "prodone/cli.hpp"

using nlohmann::json;

namespace {

const std::string kDinf = R"({"kind":"infinite-dihedral"})";

struct Result {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = prodone::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, IsOne) {
  auto r = run({"is-one", kDinf, "a^2, a^6, t^[2]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["results"]["product_one"], false);
  EXPECT_EQ(r.j()["command"], "is-one");
}

TEST(Cli, DihedralClassify) {
  auto r = run({"dihedral", "classify", "a, a^-1, t"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto res = r.j()["results"];
  EXPECT_EQ(res["weakly_krull"], true);
  EXPECT_EQ(res["locally_tame"], false);
  EXPECT_EQ(res["tame"], false);
  EXPECT_EQ(r.j()["certificates"]["davenport"]["tag"], "Infinite");
}

TEST(Cli, DihedralWitness) {
  auto r = run({"dihedral", "is-one", "a^2^[2], a^6^[2], t^[4]", "--witness"});
  ASSERT_EQ(r.code, 0);
  auto w = r.j()["results"]["witness"];
  EXPECT_EQ(w["W1"], "t^[2]");
  EXPECT_EQ(w["T1"], "a^2, a^6");
  EXPECT_EQ(w["valid"], true);
}

TEST(Cli, PiWithOracle) {
  auto r = run({"pi", R"({"kind":"finite-dihedral","n":3})", "a, t, t", "--oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["results"]["oracle"]["agrees"], true);
  EXPECT_EQ(r.j()["results"]["product_one"], false);
}

TEST(Cli, AtomsAndDavenport) {
  auto r = run({"atoms", R"({"kind":"elementary-2","r":2})", "--exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["results"]["count"], 5);
  EXPECT_EQ(r.j()["results"]["certificate"]["tag"], "Exact");
  auto d = run({"davenport", kDinf, "a, t"});
  EXPECT_EQ(d.j()["results"]["D"]["tag"], "Infinite");
  auto c = run({"davenport", R"({"kind":"cyclic","n":6})"});
  EXPECT_EQ(c.j()["results"]["D"]["value"], 6);
}

TEST(Cli, FactorizeAndInvariants) {
  auto f = run({"factorize", kDinf, "a^[4], t^[4]"});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(f.j()["results"]["lengths"], json::array({2}));
  EXPECT_EQ(f.j()["results"]["catenary"]["value"], 2);
  auto i = run({"invariants", R"({"kind":"cyclic","n":3})", "--max-size", "6", "--max-k", "2"});
  ASSERT_EQ(i.code, 0) << i.err;
  EXPECT_EQ(i.j()["results"]["delta"]["value"], json::array({1}));
  EXPECT_EQ(i.j()["results"]["delta"]["tag"], "ExactWithinBound");
}

TEST(Cli, Probe) {
  auto r = run({"probe", "seminormal", kDinf, "a^2, a^6, t", "--bound", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["results"]["T"], "a^2, a^6, t^[2]");
}

TEST(Cli, ClosedFormAtoms) {
  auto r = run({"dihedral", "atoms", "a*t, a^2*t, a^4*t", "--closed-form", "--max-len", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["results"]["scan_agrees"], true);
  EXPECT_EQ(r.j()["results"]["count"], 4);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"is-one", "/nonexistent/group.json", "a"}).code, 2);
  EXPECT_EQ(run({"is-one", kDinf, "a^2, b"}).code, 2);
  EXPECT_EQ(run({"atoms", kDinf, "a, t", "--exact"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  // The scan refuses a table this large.
  EXPECT_EQ(run({"invariants", R"({"kind":"finite-dihedral","n":6})", "--max-size", "40"}).code, 3);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"invariants", R"({"kind":"cyclic","n":4})", "--max-size", "8", "--local", "4"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Pretty) {
  auto r = run({"--pretty", "is-one", kDinf, "t^[2]"});
  EXPECT_NE(r.out.find("results.product_one = true"), std::string::npos) << r.out;
}

TEST(Cli, VerifyDihedralSuite) {
  auto r = run({"verify", "--suite", "dihedral"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.j()["results"]["passed"], true);
  EXPECT_EQ(r.j()["results"]["criteria"].size(), 6u);
}

TEST(Cli, BudgetFlags) {
  std::string c5 = R"({"kind":"cyclic","n":5})";
  EXPECT_EQ(run({"pi", c5, "g^[4], g", "--oracle"}).code, 0);
  EXPECT_EQ(run({"--perm-budget", "3", "pi", c5, "g^[4], g", "--oracle"}).code, 3);
  std::string s3 = R"({"kind":"finite-dihedral","n":3})";
  EXPECT_EQ(run({"pi", s3, "a, t, t"}).code, 0);
  EXPECT_EQ(run({"--dp-budget", "2", "pi", s3, "a, t, t"}).code, 3);
}
