#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isoperim/cli.hpp"

using namespace isoperim;
namespace fs = std::filesystem;

namespace {

std::string spec(const std::string& name) { return std::string(ISOPERIM_SPEC_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Run run(F cmd, cli::Options opt) {
  std::ostringstream out, err;
  int code = cmd(opt, out, err);
  return {code, out.str(), err.str()};
}

cli::Options with_spec(const std::string& name) {
  cli::Options o;
  o.spec = spec(name);
  return o;
}

fs::path temp_file(const std::string& name, const std::string& text) {
  auto p = fs::temp_directory_path() / ("isoperim_test_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Analyze, TriangleReport) {
  auto r = run(cli::cmd_analyze, with_spec("triangle.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["constants"]["edge_cheeger"]["text"], "1/1");
  EXPECT_EQ(j["constants"]["beta_edge"]["text"], "1/3");
  EXPECT_EQ(j["constants"]["beta_edge"]["decimal"], "0.333333333333");
  EXPECT_EQ(j["constants"]["vertex_cheeger"]["num"], 2);
  EXPECT_EQ(j["constants"]["beta_vert"]["witness"]["left"], json::array({0}));
  EXPECT_EQ(j["graph"]["n"], 3);
  EXPECT_EQ(j["graph"]["d"], 2);
  EXPECT_EQ(j["graph"]["hash"].get<std::string>().size(), 16u);
  EXPECT_TRUE(r.err.empty());
}

TEST(Analyze, CsvHasFixedColumns) {
  auto o = with_spec("c5.json");
  o.format = "csv";
  auto r = run(cli::cmd_analyze, o);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, csv_header());
  EXPECT_EQ(row.rfind("cayley,C5,5,2,ok,1,2,1,1,1,5,1,4,", 0), 0u) << row;
}

TEST(Analyze, ExitCodes) {
  auto bad = temp_file("bad.json", "{\n  \"family\": \"cayley\",\n  \"group\": {\"kind\": \"cyclic\" \"n\": 3}\n}\n");
  cli::Options o;
  o.spec = bad.string();
  auto r = run(cli::cmd_analyze, o);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;  // line of the syntax error

  auto missing = temp_file("missing.json", R"({"family": "cayley", "group": {"kind": "cyclic", "n": 3}})");
  o.spec = missing.string();
  r = run(cli::cmd_analyze, o);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/connection_set"), std::string::npos) << r.err;

  auto label = temp_file("label.json", R"({"family": "cayley", "group": {"kind": "cyclic", "n": 3}, "connection_set": ["x"]})");
  o.spec = label.string();
  EXPECT_EQ(run(cli::cmd_analyze, o).code, 2);

  EXPECT_EQ(run(cli::cmd_analyze, with_spec("c30.json")).code, 3);
  o.spec = "/nonexistent/spec.json";
  EXPECT_EQ(run(cli::cmd_analyze, o).code, 2);
}

TEST(Analyze, RoundTripHash) {
  auto first = run(cli::cmd_analyze, with_spec("petersen.json"));
  ASSERT_EQ(first.code, 0) << first.err;
  auto report = temp_file("report.json", first.out);
  cli::Options o;
  o.spec = report.string();
  auto second = run(cli::cmd_analyze, o);
  ASSERT_EQ(second.code, 0) << second.err;
  EXPECT_EQ(json::parse(first.out)["graph"]["hash"], json::parse(second.out)["graph"]["hash"]);
  EXPECT_EQ(json::parse(first.out)["constants"], json::parse(second.out)["constants"]);
}

TEST(Analyze, AllSampleSpecsLoad) {
  for (const auto& entry : fs::directory_iterator(ISOPERIM_SPEC_DIR)) {
    const std::string name = entry.path().filename().string();
    if (name == "c30.json" || name == "s4_mixed.json") continue;
    auto r = run(cli::cmd_analyze, with_spec(name));
    EXPECT_EQ(r.code, 0) << name << ": " << r.err;
  }
}

TEST(Verify, FiveCycle) {
  auto r = run(cli::cmd_verify, with_spec("c5.json"));
  EXPECT_EQ(r.code, 0) << r.err;
  int passes = 0;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) passes += line.find(" pass ") != std::string::npos;
  EXPECT_EQ(passes, 7) << r.out;
}

TEST(Verify, FourCycle) {
  auto r = run(cli::cmd_verify, with_spec("c4.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("InapplicableBipartite"), std::string::npos);
}

TEST(Verify, CorruptedAdjacencyFails) {
  auto o = with_spec("c5.json");
  o.corrupt_adjacency = true;
  auto r = run(cli::cmd_verify, o);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("hypothesis:action_commutes_with_T"), std::string::npos) << r.err;
}

TEST(Sweep, OddCycles) {
  cli::Options o;
  o.family = "odd-cycles";
  o.min = 3;
  o.max = 13;
  auto r = run(cli::cmd_sweep, o);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  int rows = 0, summaries = 0;
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, csv_header());
  while (std::getline(lines, line)) (line.starts_with("#") ? summaries : rows)++;
  EXPECT_EQ(rows, 6);
  EXPECT_NE(r.out.find("# min_ratio_edge=60/1"), std::string::npos) << r.out;
}

TEST(Sweep, EmptyRangeAndSkippedRows) {
  cli::Options o;
  o.family = "cycles";
  o.min = 5;
  o.max = 4;
  auto r = run(cli::cmd_sweep, o);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, csv_header() + "\n");

  o.min = 24;
  o.max = 26;
  r = run(cli::cmd_sweep, o);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(",C25,25,2,skipped,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# instances=3 skipped=3"), std::string::npos) << r.out;

  o.family = "unknown";
  EXPECT_EQ(run(cli::cmd_sweep, o).code, 2);
}

TEST(Decompose, FiveCycleRotations) {
  auto r = run(cli::cmd_decompose, with_spec("c5.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(0 4 3 2 1)\n(0 1 2 3 4)\n");
}

TEST(Decompose, DoubleIdentity) {
  auto r = run(cli::cmd_decompose, with_spec("double_identity.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "()\n()\n");
}

TEST(Spectrum, Triangle) {
  auto r = run(cli::cmd_spectrum, with_spec("triangle.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1.000000000, -0.500000000, -0.500000000\n");
}

TEST(Spectrum, NoNegativeZero) {
  auto r = run(cli::cmd_spectrum, with_spec("c4.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1.000000000, 0.000000000, 0.000000000, -1.000000000\n");
}

TEST(Binary, ExitCodesAndEnvironment) {
  const std::string exe = ISOPERIM_CLI_PATH;
  auto sh = [](const std::string& cmd) {
    int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(sh(exe + " verify --spec " + spec("c5.json")), 0);
  EXPECT_EQ(sh(exe + " verify --spec " + spec("c5.json") + " --debug-corrupt-adjacency"), 1);
  EXPECT_EQ(sh(exe + " analyze --spec " + spec("c30.json")), 3);
  EXPECT_EQ(sh(exe + " analyze"), 2);
  EXPECT_EQ(sh(exe + " frobnicate"), 2);
  EXPECT_EQ(sh("ISOPERIM_SUBSET_CAP=4 " + exe + " analyze --spec " + spec("c5.json")), 3);
}
