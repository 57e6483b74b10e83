#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperspec/io.hpp"

using namespace hyperspec;

namespace {

const std::string kCli = HYPERSPEC_CLI_PATH;
const std::string kData = HYPERSPEC_DATA_DIR;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + kCli + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hyperspec_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, TensorDumpHasExactEntries) {
  const auto r = run("tensor " + kData + "/ex123.json --kind A");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"1/3\""), std::string::npos);
  const auto rw = run("tensor " + kData + "/ex123.json --kind RW");
  const auto j = Json::parse(rw.out);
  bool found = false;
  for (const auto& e : j["entries"]) {
    if (e["row"] == 3 && e["support"] == Json::array({1, 2, 3})) found = e["exact"] == "-1/2";
  }
  EXPECT_TRUE(found);
}

TEST(Cli, TensorDumpMatchesInMemoryContraction) {
  const auto g = read_hypergraph_file(kData + "/protein.json");
  const auto t = build(g, TensorKind::KPlus);
  std::istringstream in(run("tensor " + kData + "/protein.json --kind K+").out);
  const auto u = read_tensor(in);
  const ComplexVector x = {{0.5, 1}, {-1, 0.25}, {2, -0.5}, {0.125, 0.75}, {-0.3, -1.1}};
  EXPECT_EQ(contract(t, x), contract(u, x));
}

TEST(Cli, ZeroDegreeVertexIsInputError) {
  EXPECT_EQ(run("tensor " + kData + "/isolated_vertex.json --kind L").status, 3);
  EXPECT_EQ(run("tensor " + kData + "/isolated_vertex.json --kind A").status, 0);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("tensor " + kData + "/does_not_exist.json").status, 3);
  EXPECT_EQ(run("tensor " + kData + "/ex123.json --kind Q").status, 3);
  EXPECT_EQ(run("").status, 3);
  EXPECT_EQ(run("gm " + kData + "/k2.json --eigenvalue abc").status, 3);
  EXPECT_EQ(run("check " + kData + "/k2.json --theorem nonsense").status, 3);
}

TEST(Cli, SpectrumAndPlotData) {
  const auto plot = temp_file("k2.csv");
  const auto r = run("spectrum " + kData + "/k2.json --plot-out " + plot.string());
  ASSERT_EQ(r.status, 0);
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j["eigenvalues"].size(), 2u);
  EXPECT_EQ(slurp(plot), "re,im\n-1,0\n1,0\n");
  std::filesystem::remove(plot);
}

TEST(Cli, SpectrumBytesIdenticalAcrossWorkersAndRuns) {
  const auto a = temp_file("a.json");
  const auto b = temp_file("b.json");
  ASSERT_EQ(run("spectrum " + kData + "/flower_3_2.json --kind K --seed 7 --out " + a.string()).status, 0);
  ASSERT_EQ(run("spectrum " + kData + "/flower_3_2.json --kind K --out " + b.string(),
                "HYPERSPEC_SEED=7 HYPERSPEC_WORKERS=3")
                .status,
            0);
  EXPECT_EQ(slurp(a), slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, FlowerSpectrumHasFourValues) {
  const auto j = Json::parse(run("spectrum " + kData + "/flower_3_2.json").out);
  EXPECT_EQ(j["eigenvalues"].size(), 4u);
}

TEST(Cli, GeometricMultiplicity) {
  const auto r = run("gm " + kData + "/k2.json --eigenvalue 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(Json::parse(r.out)["gm"], 1);
  const auto f = run("gm " + kData + "/flower_3_2.json --eigenvalue 0,0");
  ASSERT_EQ(f.status, 0);
  EXPECT_EQ(Json::parse(f.out)["gm"], 2);
}

TEST(Cli, CheckSelectedTheorems) {
  const auto r = run("check " + kData + "/ex123.json --theorem rowsums");
  ASSERT_EQ(r.status, 0);
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["theorem_id"], "rowsums");
  EXPECT_EQ(run("check " + kData + "/flower_3_3.json --theorem flower").status, 0);
  EXPECT_EQ(run("check " + kData + "/flower_3_2.json --theorem radius").status, 0);
}

TEST(Cli, CheckErrorIsReportedAsFailure) {
  // Not a hyperflower: the selected check fails with its error recorded.
  const auto r = run("check " + kData + "/ex123.json --theorem flower");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(Json::parse(r.out)[0]["passed"], false);
}

TEST(Cli, CheckAllOnSmallInput) {
  const auto r = run("check " + kData + "/ex123.json");
  EXPECT_EQ(r.status, 0);
  EXPECT_GE(Json::parse(r.out).size(), 8u);
}

TEST(Cli, FlowerCommand) {
  const auto r = run("flower --nabla 3 --petals 1");
  ASSERT_EQ(r.status, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["eigenvalues"].size(), 4u);
  for (const auto& p : j["prediction"]) EXPECT_EQ(p["found"], true);
  EXPECT_EQ(run("flower --nabla 2 --petals 1").status, 3);
}
