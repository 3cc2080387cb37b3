#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>

#include "gtest/gtest.h"
#include "stabgrp/cli.hpp"

using namespace stab;

namespace {

const std::string kData = STABGRP_DATA_DIR;
const std::string kCli = STABGRP_CLI;

bool round_trips(const json& j) {
  std::string s = canonical_dump(j);
  return canonical_dump(json::parse(s)) == s;
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  FILE* p = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

VanKampenArgs vk(const std::string& file) {
  VanKampenArgs a;
  a.factorization = read_json_file(kData + "/" + file);
  return a;
}

}  // namespace

TEST(Io, IntegersBeyond64BitsBecomeStrings) {
  Int big = Int(1) << 80;
  EXPECT_EQ(int_json(big), json(big.str()));
  EXPECT_EQ(int_json(Int(-5)), json(-5));
  json v = vec_json({big, Int(3)});
  EXPECT_TRUE(round_trips(v));
}

TEST(Io, FactorizationRoundTripAndRejections) {
  json j = read_json_file(kData + "/cuspidal-cubic.json");
  BraidFactorization F = parse_factorization(j);
  EXPECT_EQ(F.strands, 3);
  EXPECT_EQ(F.factors.size(), 4u);
  EXPECT_EQ(factorization_json(F), j);

  json bad = j;
  bad["schema"] = 2;
  EXPECT_THROW(parse_factorization(bad), InputError);
  bad = j;
  bad["factors"][0]["exponent"] = 4;
  bad["factors"][1]["core"] = 3;
  bad["factors"][2]["extra"] = true;
  try {
    parse_factorization(bad);
    FAIL() << "accepted a malformed factorization";
  } catch (const InputError& e) {
    EXPECT_EQ(e.problems.size(), 3u);
  }
  EXPECT_THROW(parse_theta(json{{"schema", 1}, {"degree", 3}, {"images", {{1, 1}}}}), InputError);
  EXPECT_THROW(read_json_file(kData + "/no-such-file.json"), InputError);
}

TEST(Invariants, WorkedExamples) {
  auto r = cmd_invariants({"cp1xcp1", "", {{"p", 2}, {"q", 3}}});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.report["schema"], 1);
  EXPECT_EQ(r.report["n"], 12);
  EXPECT_EQ(r.report["diagram"]["ab"]["group"], "(Z_2)^11");
  EXPECT_EQ(r.report["diagram"]["commutator"]["order"], 2);
  EXPECT_EQ(r.report["match"]["conjecture16"]["value"], true);
  EXPECT_EQ(r.report["match"]["conjecture16"]["conjectural"], true);
  EXPECT_TRUE(round_trips(r.report));

  auto c = cmd_invariants({"cp2", "", {{"k", 3}}});
  EXPECT_EQ(c.status, 0);
  EXPECT_TRUE(c.report["diagram"].is_null());
  EXPECT_FALSE(c.report["notice"].get<std::string>().empty());
  EXPECT_EQ(c.report["homology"]["ab"]["factor"]["factors"], json::array({3, 0}));
  EXPECT_TRUE(c.report["match"]["conjecture16"]["value"].is_null());

  auto d = cmd_invariants({"doublecover", "", {{"a", 2}, {"b", 2}, {"p", 2}, {"q", 2}}});
  EXPECT_EQ(d.status, 0);
  EXPECT_EQ(d.report["diagram"]["commutator"]["group"], "Z_2 x Z_2");
  EXPECT_EQ(d.report["diagram"]["corner_redundant"], true);
  EXPECT_TRUE(round_trips(d.report));
}

TEST(Invariants, InputErrors) {
  EXPECT_EQ(cmd_invariants({"cp1xcp1", "", {{"p", 2}}}).status, 2);
  EXPECT_EQ(cmd_invariants({"cp1xcp1", "", {{"p", 2}, {"q", 3}, {"k", 1}}}).status, 2);
  EXPECT_EQ(cmd_invariants({"torus", "", {}}).status, 2);
  auto r = cmd_invariants({"cp1xcp1", "", {{"p", 1}, {"q", 3}}});
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(r.report.contains("error"));
  EXPECT_TRUE(round_trips(r.report));
}

TEST(Verify, SuitesPassAndAreIndependentOfWorkers) {
  for (const auto& s : suite_names()) {
    SuiteOptions o;
    o.suite = s;
    o.seed = 7;
    if (s == "halftwists" || s == "lemma31" || s == "epsilon") o.ns = {4, 5};
    if (s == "diagram-crosscheck" || s == "conjecture16") {
      o.tmpl = Template::cp1xcp1;
      o.pmax = 4;
    }
    o.workers = 1;
    auto one = cmd_verify(o);
    o.workers = 4;
    auto four = cmd_verify(o);
    EXPECT_EQ(one.status, 0) << s << "\n" << canonical_dump(one.report);
    EXPECT_EQ(canonical_dump(one.report), canonical_dump(four.report)) << s;
    EXPECT_TRUE(round_trips(one.report));
  }
}

TEST(Verify, CasesOrderedByParameter) {
  SuiteOptions o;
  o.suite = "conjecture16";
  o.tmpl = Template::f1;
  o.pmax = 7;
  o.workers = 3;
  SuiteReport R = run_suite(o);
  ASSERT_EQ(R.cases.size(), 15u);  // 2 <= q < p <= 7
  for (std::size_t k = 0; k + 1 < R.cases.size(); ++k) EXPECT_LT(R.cases[k].params, R.cases[k + 1].params);
  EXPECT_TRUE(R.passed());
}

TEST(Verify, EverySeedReachesFullSampleCounts) {
  SuiteOptions o;
  o.suite = "halftwists";
  o.ns = {4};
  o.workers = 1;
  o.seed = 1;
  auto a = run_suite(o);
  o.seed = 2;
  auto b = run_suite(o);
  EXPECT_TRUE(a.passed());
  EXPECT_TRUE(b.passed());
  EXPECT_EQ(a.cases[0].counts.at("disjoint_pairs"), 1000);
  EXPECT_EQ(a.cases[0].counts.at("adjacent_pairs"), 1000);
}

TEST(Verify, RejectsBadOptions) {
  SuiteOptions o;
  o.suite = "nope";
  EXPECT_EQ(cmd_verify(o).status, 2);
  o.suite = "lemma31";
  o.ns = {2};
  EXPECT_EQ(cmd_verify(o).status, 2);
}

TEST(VanKampen, ConicCuspNode) {
  auto a = cmd_vankampen(vk("conic.json"));
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.report["abelianization"]["group"], "Z");
  auto pa = vk("conic.json");
  pa.projective = true;
  auto b = cmd_vankampen(pa);
  EXPECT_EQ(b.report["abelianization"]["group"], "Z_2");
  EXPECT_TRUE(round_trips(b.report));

  // cusp alone is not Delta^2: rejected unless --partial
  auto c = cmd_vankampen(vk("cusp-partial.json"));
  EXPECT_EQ(c.status, 1);
  EXPECT_FALSE(c.report["failures"].empty());
  auto pc = vk("cusp-partial.json");
  pc.partial = true;
  auto d = cmd_vankampen(pc);
  EXPECT_EQ(d.status, 0);
  const json& rel = d.report["presentation"]["relators"][0];
  EXPECT_EQ(rel["kind"], "cusp");
  EXPECT_EQ(rel["word"], json(reduce({1, 2, 1, -2, -1, -2})));
}

TEST(VanKampen, ThetaValidationAndStabilization) {
  auto bad = vk("node.json");
  bad.theta = read_json_file(kData + "/theta-node-bad.json");
  auto r = cmd_vankampen(bad);
  EXPECT_EQ(r.status, 1);
  bool listed = false;
  for (const auto& f : r.report["failures"]) listed |= f.get<std::string>().find("not disjoint") != std::string::npos;
  EXPECT_TRUE(listed);

  auto good = vk("node-cusp-partial.json");
  good.partial = true;
  good.theta = read_json_file(kData + "/theta-node-cusp.json");
  good.stabilize_depth = 1;
  auto s = cmd_vankampen(good);
  EXPECT_EQ(s.status, 0) << canonical_dump(s.report);
  EXPECT_GT(s.report["stabilized"]["added_relators"].get<int>(), 0);
  EXPECT_EQ(s.report["stabilized"]["abelianization"], s.report["abelianization"]);

  auto no_theta = vk("conic.json");
  no_theta.stabilize_depth = 1;
  EXPECT_EQ(cmd_vankampen(no_theta).status, 2);
}

TEST(Catalog, ListingAndEntries) {
  auto all = cmd_catalog(std::nullopt);
  EXPECT_EQ(all.status, 0);
  EXPECT_EQ(all.report["entries"].size(), catalog_entries().size());
  auto k3 = cmd_catalog(InvariantsArgs{"k3", "quartic", {{"k", 4}}});
  EXPECT_EQ(k3.report["homology"]["ab"]["factor"]["group"], "Z_4 x Z");
  EXPECT_EQ(cmd_catalog(InvariantsArgs{"k3", "sextic", {{"k", 4}}}).status, 2);
  EXPECT_TRUE(round_trips(k3.report));
}

TEST(Text, AlignedTable) {
  auto r = cmd_invariants({"cp1xcp1", "", {{"p", 2}, {"q", 3}}});
  std::string t = render_text(r.report);
  EXPECT_NE(t.find("(Z_2)^11"), std::string::npos);
  EXPECT_NE(t.find("[conjectural]"), std::string::npos);
  std::string v = render_text(cmd_catalog(std::nullopt).report);
  EXPECT_NE(v.find("entries[0].name"), std::string::npos);
}

TEST(Executable, ExitStatusAndOutput) {
  auto a = run_cli("invariants --template cp1xcp1 --p 2 --q 3");
  EXPECT_EQ(a.status, 0);
  json j = json::parse(a.out);
  EXPECT_EQ(canonical_dump(j), a.out);
  EXPECT_EQ(run_cli("vankampen " + kData + "/cusp-partial.json").status, 1);
  EXPECT_EQ(run_cli("vankampen " + kData + "/cusp-partial.json --partial").status, 0);
  EXPECT_EQ(run_cli("vankampen " + kData + "/missing.json").status, 2);
  EXPECT_EQ(run_cli("verify --suite vk-oracle").status, 0);
  setenv("STABGRP_WORKERS", "0", 1);
  EXPECT_EQ(run_cli("verify --suite vk-oracle").status, 2);
  setenv("STABGRP_WORKERS", "3", 1);
  auto w3 = run_cli("verify --suite vk-oracle --seed 5");
  setenv("STABGRP_WORKERS", "1", 1);
  auto w1 = run_cli("verify --suite vk-oracle --seed 5");
  unsetenv("STABGRP_WORKERS");
  EXPECT_EQ(w3.out, w1.out);
  EXPECT_NE(run_cli("verify --suite nope").status, 0);
  EXPECT_EQ(run_cli("invariants --template cp2 --k 3 --format text").status, 0);
}
