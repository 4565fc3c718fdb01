#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heis/cli.hpp"

using namespace heis;
using namespace heis::cli;

namespace {

struct ExeResult {
  int status = -1;
  std::string out;
};

// Runs the installed binary; stderr is discarded.
ExeResult run_exe(const std::string& args) {
  const std::string cmd = std::string(HEIS_BETA_EXE) + " " + args + " 2>/dev/null";
  ExeResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch_dir() {
  auto d = std::filesystem::temp_directory_path() /
           ("heis_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
  std::filesystem::create_directories(d);
  return d;
}

RunConfig parse(std::vector<const char*> args) {
  args.insert(args.begin(), "heis-beta");
  return parse_args(static_cast<int>(args.size()), args.data()).config;
}

const std::string kCheap =
    "--grid-per-axis 6 --domain-grid-per-axis 6 --fine-grid-per-axis 12 --rmin 0.01 --rmax 10 "
    "--per-decade 3 --tmin 0.01 --tmax 10 --t-per-decade 3 --box-radius 3 --no-timestamp";

}  // namespace

TEST(ParseConfig, Defaults) {
  const RunConfig c = parse({"identities"});
  EXPECT_EQ(c.suite, "identities");
  EXPECT_EQ(c.n, 1);
  EXPECT_EQ(c.field, "gaussian");
  EXPECT_EQ(c.p, 2.0);
  EXPECT_EQ(c.q, 1.0);
  EXPECT_EQ(c.alpha, 1.0);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.r_grid.r_min, 1e-3);
  EXPECT_EQ(c.r_grid.r_max, 1e2);
  EXPECT_EQ(c.r_grid.points_per_decade, 16);
  EXPECT_EQ(c.t_grid.r_min, 1e-4);
  EXPECT_EQ(c.mode, QuadMode::grid);
  EXPECT_EQ(c.format, Format::csv);
  EXPECT_TRUE(c.timestamp);
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_EQ(c.points[0], origin(1));
  const auto meta = effective_config(c);
  EXPECT_EQ(meta.front().first, "suite");
  for (const auto& [k, v] : meta) EXPECT_FALSE(k == "workers" || k == "out" || k == "format") << k;
}

TEST(ParseConfig, FlagsAndSuiteKey) {
  const RunConfig c = parse({"--suite", "beta", "--field", "vertical-wave", "--omega", "16", "--n", "2",
                             "--points", "0,0,0,0,0; 1,2,3,4,5", "--mode", "mc", "--samples", "500"});
  EXPECT_EQ(c.suite, "beta");
  EXPECT_EQ(c.n, 2);
  EXPECT_EQ(c.field_params.at("omega"), "16");
  ASSERT_EQ(c.points.size(), 2u);
  EXPECT_EQ(c.points[1], Point({1.0, 2.0, 3.0, 4.0}, 5.0));
  EXPECT_EQ(c.ball_spec().samples, 500);
  EXPECT_EQ(c.domain_spec().samples, 500);
}

TEST(ParseConfig, RejectsBadInput) {
  EXPECT_THROW(parse({"dorronsoro", "--p", "2", "--q", "4", "--n", "1"}), UsageError);
  EXPECT_NO_THROW(parse({"dorronsoro", "--p", "2", "--q", "2"}));
  EXPECT_THROW(parse({"poincare", "--p", "3"}), UsageError);
  EXPECT_THROW(parse({"identities", "--p", "1"}), UsageError);
  EXPECT_THROW(parse({"identities", "--alpha", "2"}), UsageError);
  EXPECT_THROW(parse({"squarefn", "--square", "S", "--alpha", "1"}), UsageError);
  EXPECT_THROW(parse({"beta", "--field", "nope"}), UsageError);
  EXPECT_THROW(parse({"beta", "--field", "affine"}), UsageError);
  EXPECT_THROW(parse({"beta", "--points", "1,2"}), UsageError);
  EXPECT_THROW(parse({"beta", "--seed", "-3"}), UsageError);
  EXPECT_THROW(parse({"beta", "--mode", "quasi"}), UsageError);
  EXPECT_THROW(parse({"beta", "--bogus", "1"}), UsageError);
  EXPECT_THROW(parse({"nosuchsuite"}), UsageError);
  EXPECT_THROW(parse({}), UsageError);
}

TEST(ParseConfig, FileThenFlags) {
  const auto dir = scratch_dir();
  const auto cfg = dir / "run.conf";
  std::ofstream(cfg) << "# comment line\nsuite = lemmas\nseed = 7   # trailing comment\n\nalpha=0.5\n";
  const RunConfig c = parse({"--config", cfg.c_str(), "--seed", "9"});
  EXPECT_EQ(c.suite, "lemmas");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.alpha, 0.5);

  std::ofstream(dir / "bad.conf") << "suite = lemmas\ncolour = blue\n";
  EXPECT_THROW(parse({"--config", (dir / "bad.conf").c_str()}), UsageError);
  std::ofstream(dir / "noeq.conf") << "suite lemmas\n";
  EXPECT_THROW(parse({"--config", (dir / "noeq.conf").c_str()}), std::exception);
  std::filesystem::remove_all(dir);
}

TEST(Binary, AffineBetaProfileIsZero) {
  const ExeResult r = run_exe("beta --field affine --a 1,2 --b 3 " + kCheap);
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      EXPECT_EQ(line, "r,beta,stderr");
      header = true;
      continue;
    }
    const auto cells = cli::detail::split(line, ',');
    ASSERT_EQ(cells.size(), 3u);
    EXPECT_LE(std::stod(cells[1]), 1e-10);
    ++rows;
  }
  EXPECT_GT(rows, 5);
}

TEST(Binary, EmittedConfigReproducesOutput) {
  const auto dir = scratch_dir();
  const auto cfg = dir / "effective.conf";
  const ExeResult first = run_exe("squarefn --alpha 0.5 --square S --points '0,0,0; 0.5,0.1,-0.2' " + kCheap +
                            " --emit-config " + cfg.string());
  ASSERT_EQ(first.status, 0);
  const ExeResult second = run_exe("--config " + cfg.string() + " --no-timestamp");
  ASSERT_EQ(second.status, 0);
  EXPECT_EQ(first.out, second.out);
  EXPECT_NE(first.out.find("x_id,alpha,value,trunc_low,trunc_high"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Binary, StarvedIdentitiesFail) {
  const ExeResult r = run_exe("identities --mode mc --samples 10 " + kCheap);
  EXPECT_EQ(r.status, 2);
}

TEST(Binary, UsageErrorsExitOne) {
  EXPECT_EQ(run_exe("dorronsoro --p 2 --q 4 --n 1").status, 1);
  EXPECT_EQ(run_exe("beta --no-such-flag 3").status, 1);
  EXPECT_EQ(run_exe("--config /nonexistent/heis.conf").status, 1);
  EXPECT_EQ(run_exe("beta " + kCheap + " --out /nonexistent/dir/out.csv").status, 1);
  EXPECT_EQ(run_exe("--version").status, 0);
}

TEST(Binary, OutputIndependentOfWorkersAndDestination) {
  const auto dir = scratch_dir();
  const std::string args = "lemmas " + kCheap;
  const ExeResult one = run_exe(args + " --workers 1");
  const ExeResult three = run_exe(args + " --workers 3");
  ASSERT_EQ(one.status, 0);
  EXPECT_EQ(one.out, three.out);
  ASSERT_EQ(run_exe(args + " --workers 2 --out " + (dir / "o.csv").string()).status, 0);
  EXPECT_EQ(slurp(dir / "o.csv"), one.out);
  std::filesystem::remove_all(dir);
}

TEST(Binary, TimestampOnlyWhenAsked) {
  const ExeResult with = run_exe("beta --field gaussian --grid-per-axis 6 --rmin 0.1 --rmax 1 --per-decade 2");
  ASSERT_EQ(with.status, 0);
  EXPECT_NE(with.out.find("# timestamp = "), std::string::npos);
  const ExeResult without = run_exe("beta --grid-per-axis 6 --rmin 0.1 --rmax 1 --per-decade 2 --no-timestamp");
  EXPECT_EQ(without.out.find("timestamp"), std::string::npos);
  EXPECT_NE(without.out.find("# version = "), std::string::npos);
  EXPECT_NE(without.out.find("# seed = 42"), std::string::npos);
}

TEST(Binary, JsonReports) {
  const ExeResult r = run_exe("poincare --field vertical-wave --omega 4 --scales 0.5,1 --format json " + kCheap);
  ASSERT_EQ(r.status, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["metadata"]["suite"], "poincare");
  EXPECT_EQ(doc["metadata"]["omega"], "4");
  ASSERT_EQ(doc["results"].size(), 2u);
  for (const auto& rep : doc["results"]) {
    EXPECT_TRUE(rep["ratio"].is_number());
    EXPECT_TRUE(rep["ok"].get<bool>());
    EXPECT_EQ(rep["truncation"].size(), 2u);
  }
  EXPECT_EQ(doc["results"][0]["params"]["s"], 0.5);
}
