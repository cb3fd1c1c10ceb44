#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cocat/cli.hpp"
#include "support.hpp"

using namespace cocat;
using namespace cocat::testing;
using doc::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "cocat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  fs::path dir = fs::path(::testing::TempDir()) / "cocat_cli_test";
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

}  // namespace

TEST(Cli, ValidateGood) {
  Outcome r = run({"validate", fixture("good.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid cocategory\n");
}

TEST(Cli, ValidateGrouplike) {
  std::string cert = scratch("grouplike_cert.json");
  Outcome r = run({"validate", fixture("grouplike.json"), "--certificate", cert});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotConilpotent, witness x"), std::string::npos) << r.err;
  json c = doc::read_file(cert);
  EXPECT_EQ(c["failures"], 1);
}

TEST(Cli, ValidateInvalidHomomorphism) {
  Outcome r = run({"validate", fixture("bad_hom.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("hom_comultiplication"), std::string::npos);
  EXPECT_EQ(run({"validate", fixture("mu_g.json")}).code, 0);
}

TEST(Cli, MalformedInput) {
  std::string bad = scratch("bad.json");
  spit(bad, "{\"kind\": \"cocategory\"");
  EXPECT_EQ(run({"validate", bad}).code, 1);
  spit(bad, "[1, 2]");
  EXPECT_EQ(run({"validate", bad}).code, 1);
  json j = doc::read_file(fixture("good.json"));
  j["delta"][0][0] = "nowhere";
  spit(bad, doc::serialize(j));
  Outcome r = run({"validate", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("UnknownObject"), std::string::npos) << r.err;
  EXPECT_EQ(run({"validate", scratch("missing.json")}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"subcocat", fixture("good.json")}).code, 1);
}

TEST(Cli, EqualizeMuFixture) {
  std::string out = scratch("mu_eq.json");
  std::string cert = scratch("mu_cert.json");
  Outcome r = run({"equalize", fixture("mu_f.json"), fixture("mu_g.json"), "--out", out, "--certificate", cert});
  ASSERT_EQ(r.code, 0) << r.err;
  json e = doc::read_file(out);
  Cocategory eq = doc::cocategory_from_json(e["equalizer"]);
  EXPECT_EQ(eq.dim(0, 0), 1u);
  EXPECT_TRUE(eq.delta(0, 0, 0).is_zero());
  json c = doc::read_file(cert);
  EXPECT_EQ(c["kind"], "certificate");
  EXPECT_EQ(c["failures"], 0);
  EXPECT_GT(c["checks"].size(), 5u);
  for (const auto& check : c["checks"]) EXPECT_TRUE(check["passed"].get<bool>());
}

TEST(Cli, EqualizeLambdaFixture) {
  Outcome r = run({"equalize", fixture("lambda_f.json"), fixture("lambda_g.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(doc::cocategory_from_json(json::parse(r.out)["equalizer"]).dim(0, 0), 0u);
}

TEST(Cli, Factor) {
  std::string eq = scratch("factor_eq.json");
  ASSERT_EQ(run({"equalize", fixture("mu_f.json"), fixture("mu_g.json"), "--out", eq}).code, 0);
  // h: T^[1,1]<y> -> T^[1,2]<x>, y -> x
  auto b = share(tensor_cocategory(loop_quiver("y"), 1));
  std::string h = scratch("factor_h.json");
  doc::write_file(h, doc::to_json(CocatHom{b, loop_tensor(2), QuiverMorphism{{0}, {M({{1}, {0}})}}}, "h"));
  Outcome r = run({"factor", h, eq});
  ASSERT_EQ(r.code, 0) << r.err;
  CocatHom j = doc::hom_from_json(json::parse(r.out));
  EXPECT_EQ(j.component(0, 0), M({{1}}));

  // the identity does not equalize f and g
  Outcome bad = run({"factor", fixture("mu_f.json"), eq});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("NotEqualizing"), std::string::npos) << bad.err;

  // a tampered equalizer document is rejected as malformed
  json tampered = doc::read_file(eq);
  tampered["retraction"] = json::array();
  std::string t = scratch("factor_tampered.json");
  doc::write_file(t, tampered);
  EXPECT_EQ(run({"factor", h, t}).code, 1);
}

TEST(Cli, GenIsDeterministic) {
  Outcome a = run({"gen", "--seed", "5", "--flavor", "dg", "--field", "F5"});
  Outcome b = run({"gen", "--seed", "5", "--flavor", "dg", "--field", "F5"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"gen"}).out, slurp(fixture("golden_seed0.json")));
  EXPECT_EQ(run({"gen", "--field", "F6"}).code, 1);
  EXPECT_EQ(run({"gen", "--flavor", "curved"}).code, 1);
}

TEST(Cli, GenPairThenEqualizeAndOracle) {
  std::string dir = scratch("pair7");
  ASSERT_EQ(run({"gen", "--seed", "7", "--pair", dir, "--out", scratch("c7.json")}).code, 0);
  EXPECT_EQ(run({"validate", dir + "/f.json"}).code, 0);
  EXPECT_EQ(run({"validate", dir + "/g.json"}).code, 0);
  EXPECT_EQ(run({"equalize", dir + "/f.json", dir + "/g.json"}).code, 0);
  Outcome o = run({"oracle", dir + "/f.json", dir + "/g.json"});
  ASSERT_EQ(o.code, 0) << o.err;
  json report = json::parse(o.out);
  EXPECT_EQ(report["kind"], "oracle_report");
  for (const auto& p : report["pairs"]) EXPECT_TRUE(p["agrees"].get<bool>());
}

TEST(Cli, TensorBuildFromQuiver) {
  Outcome r = run({"tensor-build", fixture("two_term.json"), "--length", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  Cocategory c = doc::cocategory_from_json(json::parse(r.out));
  EXPECT_EQ(c.flavor(), Flavor::DG);
  EXPECT_EQ(c.dim(0, 0), 6u);
  EXPECT_EQ(run({"validate", fixture("two_term.json")}).code, 0);
  Outcome p = run({"tensor-build", fixture("path.json")});
  ASSERT_EQ(p.code, 0);
  EXPECT_EQ(doc::cocategory_from_json(json::parse(p.out)).dim(0, 2), 1u);
}

TEST(Cli, Subcocat) {
  std::string c = scratch("path_tensor.json");
  ASSERT_EQ(run({"tensor-build", fixture("path.json"), "--out", c}).code, 0);
  std::string cert = scratch("sub_cert.json");
  Outcome r = run({"subcocat", c, "--objects", "U,W", "--certificate", cert});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["objects"], json::array({"U", "W"}));
  EXPECT_EQ(j["subcocategory"]["homs"], json::array());
  EXPECT_EQ(j["n_map_profile"], json::parse(R"([["U","W",["V"]]])"));
  EXPECT_EQ(doc::read_file(cert)["failures"], 0);
  EXPECT_EQ(run({"subcocat", c, "--objects", "U,Z"}).code, 2);
}

TEST(Cli, AugmentReduceRoundTrip) {
  std::string c = scratch("rt_c.json");
  std::string a = scratch("rt_a.json");
  std::string back = scratch("rt_back.json");
  ASSERT_EQ(run({"gen", "--seed", "11", "--flavor", "dg", "--out", c}).code, 0);
  ASSERT_EQ(run({"augment", c, "--out", a}).code, 0);
  EXPECT_EQ(run({"validate", a}).code, 0);
  ASSERT_EQ(run({"reduce", a, "--out", back}).code, 0);
  EXPECT_EQ(slurp(back), slurp(c));
}

TEST(Cli, ReduceRejectsBrokenCounit) {
  json a = doc::to_json(augment(*loop_tensor(2)));
  a["counit"] = json::parse(R"([["O",1,"1"]])");
  std::string path = scratch("broken_counit.json");
  doc::write_file(path, a);
  Outcome r = run({"reduce", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotCoaugmented"), std::string::npos) << r.err;
}

TEST(Cli, Subprocess) {
  std::string cmd = std::string(COCAT_CLI) + " validate " + fixture("grouplike.json") + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  ASSERT_NE(status, -1);
  EXPECT_EQ(WEXITSTATUS(status), 2);
  cmd = std::string(COCAT_CLI) + " validate " + fixture("good.json") + " >/dev/null";
  status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 0);
}
