#include "cli.hpp"

#include "irsvm/instance.hpp"
#include "irsvm/io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace irsvm::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "irsvm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

double field(const std::string& text, const std::string& key) {
  const std::regex re(key + "=([^ \\n]+)");
  std::smatch m;
  if (!std::regex_search(text, m, re)) return std::nan("");
  return std::stod(m[1].str());
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("irsvm_cli_" + name);
}

TEST(Cli, SynthRecoversSmallInstance) {
  const auto r = run({"synth", "--m", "40", "--n", "40", "--rank", "2", "--sr", "0.5", "--seed",
                      "7", "--method", "irsvm2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LT(field(r.out, "rel_err"), 1e-3);
  EXPECT_EQ(field(r.out, "success"), 1.0);
}

TEST(Cli, SynthIsDeterministic) {
  const std::vector<std::string> args{"synth", "--m", "30", "--n", "25", "--rank", "2",
                                      "--sr", "0.5", "--seed", "99"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(field(a.out, "rel_err"), field(b.out, "rel_err"));
}

TEST(Cli, SweepRowCount) {
  const auto out = temp_path("sweep.csv");
  const auto r = run({"sweep", "--m", "20", "--n", "20", "--sr", "0.5", "--ranks", "2:2:20",
                      "--trials", "1", "--threads", "0", "--max-outer", "50", "--out",
                      out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "method,m,n,sr,rank,trials,successes,mean_rel_err,mean_seconds");
  int irsvm1 = 0;
  int irsvm2 = 0;
  while (std::getline(in, line)) {
    if (line.rfind("irsvm1,", 0) == 0) ++irsvm1;
    if (line.rfind("irsvm2,", 0) == 0) ++irsvm2;
  }
  EXPECT_EQ(irsvm1, 10);
  EXPECT_EQ(irsvm2, 10);
  fs::remove(out);
}

TEST(Cli, MissingInputFile) {
  const auto r = run({"solve", "--input", "/nonexistent/irsvm/in.txt"});
  EXPECT_EQ(r.code, kExitBadInput);
  EXPECT_NE(r.err.find("/nonexistent/irsvm/in.txt"), std::string::npos);
}

TEST(Cli, BadFlagsAreBadInput) {
  EXPECT_EQ(run({"synth", "--p", "1.5"}).code, kExitBadInput);
  EXPECT_EQ(run({"synth", "--method", "apgl"}).code, kExitBadInput);
  EXPECT_EQ(run({"synth", "--no-such-flag"}).code, kExitBadInput);
  EXPECT_EQ(run({"sweep", "--ranks", "5:1"}).code, kExitBadInput);
  EXPECT_EQ(run({}).code, kExitBadInput);
}

TEST(Cli, MalformedTripletReportsLine) {
  const auto in = temp_path("bad.txt");
  std::ofstream(in) << "0 0 1\n1 x 2\n";
  const auto r = run({"solve", "--input", in.string()});
  EXPECT_EQ(r.code, kExitBadInput);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  fs::remove(in);
}

TEST(Cli, NonConvergenceExitCode) {
  const auto r = run({"synth", "--m", "20", "--n", "20", "--rank", "2", "--no-continuation",
                      "--lambda", "1", "--max-outer", "1"});
  EXPECT_EQ(r.code, kExitNotConverged);
}

TEST(Cli, SolveFileWritesMatrixAndTraces) {
  const auto inst = harness::gen_instance({15, 12, 1, 0.7, 3});
  const auto in = temp_path("problem.txt");
  const auto outm = temp_path("X.csv");
  const auto trace = temp_path("trace.csv");
  const auto json = temp_path("trace.jsonl");
  harness::save_problem(inst.problem, in);
  const auto r = run({"solve", "--input", in.string(), "--rows", "15", "--cols", "12", "--method",
                      "irsvm2", "--output", outm.string(), "--trace", trace.string(),
                      "--json-trace", json.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Matrix X = harness::load_matrix(outm);
  EXPECT_EQ(X.rows(), 15);
  EXPECT_EQ(X.cols(), 12);
  EXPECT_LT(harness::rel_err(X, inst.ground_truth), 1e-3);

  std::ifstream tin(trace);
  std::string header;
  std::getline(tin, header);
  EXPECT_EQ(header.rfind("stage,", 0), 0u) << header;

  std::ifstream jin(json);
  std::string line;
  long prev = -1;
  int count = 0;
  while (std::getline(jin, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_GT(j.at("k").get<long>(), prev);
    prev = j.at("k").get<long>();
    EXPECT_EQ(j.at("method").get<std::string>(), "irsvm2");
    ++count;
  }
  EXPECT_GT(count, 0);
  for (const auto& p : {in, outm, trace, json}) fs::remove(p);
}

TEST(Cli, BaselineRuns) {
  const auto r = run({"baseline", "--m", "20", "--n", "20", "--rank", "1", "--sr", "0.8"});
  EXPECT_NE(r.code, kExitBadInput) << r.err;
  EXPECT_NE(r.out.find("method=nuclear"), std::string::npos);
}

}  // namespace
}  // namespace irsvm::cli
