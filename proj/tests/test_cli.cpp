#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

const std::string kSamples = LINTERSECT_SAMPLES_DIR;
const std::string kGolden = LINTERSECT_GOLDEN_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "lintersect");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = lintersect::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return kSamples + "/" + name; }

// Fields that depend on timing or scheduling are dropped before comparison.
json stable(json doc) {
  if (doc.is_object()) {
    doc.erase("elapsed_seconds");
    doc.erase("nodes_explored");
    for (auto& [key, value] : doc.items()) value = stable(value);
  } else if (doc.is_array()) {
    for (auto& value : doc) value = stable(value);
  }
  return doc;
}

// Compares against tests/golden/<name>.json. Setting LINTERSECT_UPDATE_GOLDEN
// rewrites the file instead.
void expect_golden(const std::string& name, const json& doc) {
  const auto path = kGolden + "/" + name + ".json";
  if (std::getenv("LINTERSECT_UPDATE_GOLDEN")) {
    std::ofstream(path) << stable(doc).dump(2) << "\n";
    return;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in.good()) << "missing golden file " << path;
  EXPECT_EQ(stable(doc), json::parse(in)) << name;
}

struct ScopedEnv {
  std::string name;
  ScopedEnv(std::string n, const std::string& value) : name(std::move(n)) { setenv(name.c_str(), value.c_str(), 1); }
  ~ScopedEnv() { unsetenv(name.c_str()); }
};

}  // namespace

TEST(CliBsupp, ConsecutiveModSeven) {
  const auto r = run({"bsupp", "--p", "7", "--L", "0,1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["schema"], "1");
  EXPECT_EQ(doc["c"], json({0, 0, 0, 6}));
  EXPECT_EQ(doc["support"], json({3}));
  expect_golden("bsupp_p7_L012", doc);
}

TEST(CliBsupp, ZeroTwoModFive) {
  const auto r = run({"bsupp", "--p", "5", "--L", "0,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["support"], json({1, 2}));
  expect_golden("bsupp_p5_L02", r.doc());
}

TEST(CliBsupp, IntegersAndTextFormat) {
  const auto r = run({"bsupp", "--L", "1", "--integers"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["c"], json({-1, 1}));
  EXPECT_EQ(r.doc()["support"], json({0, 1}));
  expect_golden("bsupp_integers_L1", r.doc());
  const auto text = run({"bsupp", "--p", "7", "--L", "0,1,2", "--format", "text"});
  EXPECT_EQ(text.out, "c=[0,0,0,6] support=[3]\n");
  const auto csv = run({"bsupp", "--p", "7", "--L", "0,1,2", "--format", "csv"});
  EXPECT_EQ(csv.out, "j,c\n0,0\n1,0\n2,0\n3,6\n");
}

TEST(CliBsupp, ValidationErrors) {
  EXPECT_EQ(run({"bsupp", "--p", "6", "--L", "0"}).code, 2);
  EXPECT_EQ(run({"bsupp", "--p", "5", "--L", "0,7"}).code, 2);
  EXPECT_EQ(run({"bsupp", "--p", "5", "--L", "0,x"}).code, 2);
  EXPECT_EQ(run({"bsupp", "--L", "0"}).code, 2);
  EXPECT_EQ(run({"bsupp", "--p", "5", "--integers", "--L", "0"}).code, 2);
  EXPECT_EQ(run({"bsupp", "--p", "3", "--L", "0,1,2"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(CliBound, SharpnessFamily) {
  const auto r = run({"bound", "--family", sample("sharpness_4_2_2.txt"), "--theorem", "multilevel", "--K", "1,2",
                      "--L", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["slack"], 0);
  EXPECT_EQ(doc["lhs"], 10);
  EXPECT_EQ(doc["rhs"], 10);
  EXPECT_EQ(doc["hypotheses_ok"], true);
  expect_golden("bound_sharpness", doc);
}

TEST(CliBound, EmptyFamily) {
  const auto r = run({"bound", "--family", sample("empty_5.txt"), "--theorem", "multilevel", "--K", "2", "--L", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["slack"], 0);
  expect_golden("bound_empty", r.doc());
}

TEST(CliBound, Star) {
  const auto r = run({"bound", "--family", sample("star_5.txt"), "--theorem", "multilevel", "--K", "2", "--L", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["slack"], 0);
  EXPECT_EQ(doc["levels"], json::parse(R"([{"j":2,"shadow":4,"nonshadow":6}])"));
  expect_golden("bound_star", doc);
}

TEST(CliBound, CoefficientSensitiveJsonFamily) {
  const auto r = run({"bound", "--family", sample("pairs_mod5.json"), "--theorem", "COEFF_SENSITIVE", "--K", "2,4",
                      "--L", "0,1", "--p", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["bsupp"], json({2}));
  EXPECT_EQ(doc["slack"], 0);
  expect_golden("bound_coeff_pairs", doc);
}

TEST(CliBound, HypothesisViolationIsSuccess) {
  const auto r = run({"bound", "--family", sample("violating_3.txt"), "--theorem", "multilevel", "--K", "2", "--L", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["hypotheses_ok"], false);
  EXPECT_FALSE(r.doc()["violated"].empty());
}

TEST(CliBound, InputErrors) {
  EXPECT_EQ(run({"bound", "--family", sample("nope.txt"), "--K", "2", "--L", "1"}).code, 2);
  EXPECT_EQ(run({"bound", "--family", sample("star_5.txt"), "--theorem", "bogus", "--K", "2", "--L", "1"}).code, 2);
  // Modular theorems need --p.
  EXPECT_EQ(run({"bound", "--family", sample("star_5.txt"), "--theorem", "coeff", "--K", "2", "--L", "1"}).code, 2);

  const auto path = std::filesystem::temp_directory_path() / "lintersect_bad_family.txt";
  std::ofstream(path) << "n=4\n1 2\n1 9\n";
  const auto r = run({"bound", "--family", path.string(), "--K", "2", "--L", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(CliCertificate, Singletons) {
  const auto r = run({"certificate", "--family", sample("singletons_3.txt"), "--K", "1", "--L", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["rank"], 4);
  EXPECT_EQ(doc["independent"], true);
  expect_golden("certificate_singletons", doc);
}

TEST(CliCertificate, EmitMatrixAndCrossCheck) {
  const auto r = run({"certificate", "--family", sample("singletons_3.txt"), "--K", "1", "--L", "0", "--emit-matrix",
                      "--cross-check"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["matrix"].size(), 4U);
  EXPECT_EQ(doc["evaluation_rank"], 4);
}

TEST(CliCertificate, GramPairs) {
  const auto r = run({"certificate", "--family", sample("pairs_mod5.json"), "--kind", "gram", "--p", "5", "--L", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["valid"], true);
  expect_golden("certificate_gram_pairs", r.doc());
}

TEST(CliCertificate, IncidenceWithNonshadows) {
  const auto r = run({"certificate", "--family", sample("pairs_mod5.json"), "--kind", "incidence", "--p", "5", "--K",
                      "2,4", "--L", "0,1", "--with-nonshadows"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["rank"], 10);
  EXPECT_EQ(r.doc()["independent"], true);
}

TEST(CliCertificate, HypothesisViolationFlagged) {
  const auto r = run({"certificate", "--family", sample("violating_3.txt"), "--K", "2", "--L", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.doc()["hypotheses_ok"], false);
  expect_golden("certificate_violating", r.doc());
}

TEST(CliCertificate, MatrixCapFromEnvironment) {
  ScopedEnv cap("LINTERSECT_MATRIX_CAP", "3");
  EXPECT_EQ(run({"certificate", "--family", sample("singletons_3.txt"), "--K", "1", "--L", "0"}).code, 3);
}

TEST(CliSearch, Unattainability) {
  const auto r = run({"search", "--n", "5", "--p", "5", "--K", "2,4", "--L", "0,1", "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["max_size"], 10);
  EXPECT_EQ(doc["proof_of_optimality"], true);
  EXPECT_EQ(doc["bounds"][0]["theorem"], "MODULAR_MULTILEVEL");
  EXPECT_EQ(doc["bounds"][0]["rhs"], 15);
  expect_golden("search_unattainability", doc);
}

TEST(CliSearch, SharpnessSweep) {
  const auto r = run({"search", "--sweep", "sharpness", "--n-max", "5", "--s-max", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_FALSE(doc["rows"].empty());
  for (const auto& row : doc["rows"]) EXPECT_EQ(row["attained"], row["bound"]) << row.dump();
  expect_golden("search_sharpness", doc);

  const auto csv = run({"search", "--sweep", "sharpness", "--n-max", "2", "--s-max", "2", "--format", "csv"});
  EXPECT_EQ(csv.out,
            "n,s,r,attained,bound,equal,construction_admissible,proof_of_optimality\n"
            "1,1,1,1,1,1,1,1\n2,1,1,2,2,1,1,1\n2,2,1,1,1,1,1,1\n2,2,2,3,3,1,1,1\n");
}

TEST(CliSearch, UnattainabilitySweepCsv) {
  const auto r = run({"search", "--sweep", "unattainability", "--p", "5", "--n-max", "5", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "p,n,s,r,max_size,level_bound,abs_bound,proof_of_optimality");
}

TEST(CliSearch, ZeroBudgetTimesOut) {
  const auto r = run({"search", "--n", "6", "--K", "2,3", "--L", "0,1", "--budget", "0"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.doc()["proof_of_optimality"], false);
  EXPECT_EQ(r.doc()["timed_out"], true);
}

TEST(CliSearch, TextWitnessReadsBack) {
  const auto r = run({"search", "--n", "4", "--K", "2", "--L", "1", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# max_size=3 bound_used=4 proof_of_optimality=true timed_out=false\nn=4\n1 2\n1 3\n2 3\n");
  const auto path = std::filesystem::temp_directory_path() / "lintersect_search_witness.txt";
  std::ofstream(path) << r.out;
  const auto bound = run({"bound", "--family", path.string(), "--K", "2", "--L", "1", "--theorem", "abs"});
  std::filesystem::remove(path);
  ASSERT_EQ(bound.code, 0);
  EXPECT_EQ(bound.doc()["lhs"], 3);
}

TEST(CliSearch, Caps) {
  EXPECT_EQ(run({"search", "--n", "11", "--K", "2", "--L", "1"}).code, 3);
  {
    ScopedEnv cap("LINTERSECT_SEARCH_CAP", "4");
    EXPECT_EQ(run({"search", "--n", "5", "--K", "2", "--L", "1"}).code, 3);
  }
  {
    ScopedEnv cap("LINTERSECT_SEARCH_CAP", "lots");
    EXPECT_EQ(run({"search", "--n", "5", "--K", "2", "--L", "1"}).code, 2);
  }
  EXPECT_EQ(run({"search", "--K", "2", "--L", "1"}).code, 2);
}

TEST(CliShadow, TwoTriples) {
  const auto r = run({"shadow", "--family", sample("two_triples_5.txt"), "--levels", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = r.doc();
  EXPECT_EQ(doc["levels"], json::parse(R"([{"j":2,"shadow":6,"nonshadow":4}])"));
  EXPECT_EQ(doc["shadows"]["2"], json::parse("[[1,2],[1,3],[2,3],[3,4],[3,5],[4,5]]"));
  expect_golden("shadow_two_triples", doc);

  const auto csv = run({"shadow", "--family", sample("empty_5.txt"), "--format", "csv"});
  EXPECT_EQ(csv.out, "j,shadow,nonshadow\n0,0,1\n1,0,5\n2,0,10\n3,0,10\n4,0,5\n5,0,1\n");
}

TEST(CliGenerate, SeededAndAdmissible) {
  const auto a = run({"generate", "--n", "6", "--K", "3", "--L", "1", "--seed", "42"});
  const auto b = run({"generate", "--n", "6", "--K", "3", "--L", "1", "--seed", "42"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto family = lintersect::parse_family_text(a.out);
  EXPECT_TRUE(lintersect::check_sizes(family, {3}, lintersect::Mode::exact()).ok);
  EXPECT_TRUE(lintersect::check_L_intersecting(family, {1}, lintersect::Mode::exact()).ok);

  const auto j = run({"generate", "--n", "6", "--K", "3", "--L", "1", "--seed", "42", "--format", "json"});
  EXPECT_EQ(lintersect::cli::family_from_json(json::parse(j.out)), family);
}
