#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "tubal/experiments.hpp"
#include "tubal/io.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tubal_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(TUBAL_CLI) + " " + args + " >" + (dir_ / "stdout").string() + " 2>" +
                            (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  nlohmann::json json(const std::string& name) const {
    std::ifstream in(dir_ / name);
    return nlohmann::json::parse(in);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenAndConvert) {
  ASSERT_EQ(run("gen --tensor StochasticC --out " + path("c.t3b")), 0);
  ASSERT_EQ(run("convert " + path("c.t3b") + " " + path("c.json")), 0);
  const auto a = tubal::readTensor(path("c.t3b")), b = tubal::readTensor(path("c.json"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, tubal::makeTensor(tubal::defaultSpec(tubal::TensorKind::StochasticC)));
}

TEST_F(Cli, PowerMethodReport) {
  ASSERT_EQ(run("run --method t-PM --tensor TridiagScaled --out " + path("pm.json")), 0);
  const auto j = json("pm.json");
  EXPECT_EQ(j["method"], "t-PM");
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_LE(j["pairs"][0]["residualNorm"].get<double>(), 1e-12);
  // The leading eigentube is real; its spatial entries invert c_k * mu_1.
  const auto ref = oracle::tridiagScaledSpectrum();
  std::vector<tubal::cplx> faces;
  for (const auto& f : ref) faces.push_back(f[0]);
  const auto spatial = oracle::idft(faces);
  const auto& got = j["pairs"][0]["eigentube"];
  ASSERT_EQ(got.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(got[i][0].get<double>(), spatial[i].real(), 1e-10);
}

TEST_F(Cli, ShiftedInverseFromFile) {
  ASSERT_EQ(run("gen --tensor TridiagScaled --out " + path("a.json")), 0);
  ASSERT_EQ(run("run --method t-SIPM --tensor " + path("a.json") + " --shift 1e-5,0 --out " + path("r.json")), 0);
  EXPECT_LE(json("r.json")["pairs"][0]["residualNorm"].get<double>(), 1e-12);
}

TEST_F(Cli, NoConvergenceExitCode) {
  EXPECT_EQ(run("run --method t-PM --tensor TridiagScaled --iter-max 3 --out " + path("pm.json")), 2);
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("run --method NoSuchMethod --tensor TridiagScaled"), 1);
  EXPECT_EQ(run("gen --tensor Hilbert --out " + path("x.t3b")), 1);
  EXPECT_EQ(run("run --method t-PM --tensor " + path("missing.t3b")), 1);
  EXPECT_EQ(run("frobnicate"), 1);
}

TEST_F(Cli, SpectrumCommand) {
  ASSERT_EQ(run("spectrum --tensor StochasticC --out " + path("s.json")), 0);
  const auto j = json("s.json");
  ASSERT_EQ(j["eigentubes"].size(), 4u);
  for (const auto& t : j["eigentubes"]) EXPECT_EQ(t["algebraic"], 1);
  // Face 0 of the leading eigentube is the Perron value 4 of the face sum.
  double face0 = 0.0;
  for (const auto& v : j["eigentubes"][0]["spatial"]) face0 += v[0].get<double>();
  EXPECT_NEAR(face0, 4.0, 1e-3);
}

TEST_F(Cli, TableWritesCsvAndManifest) {
  ASSERT_EQ(run("run --table T3 --out " + path("t3")), 0);
  EXPECT_TRUE(fs::exists(dir_ / "t3" / "T3.csv"));
  const auto j = json("t3/T3_manifest.json");
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(run("run --table T2 --iter-max 2 --out " + path("t2")), 2);
}

TEST_F(Cli, FactorManifest) {
  ASSERT_EQ(run("factor --kind svd --tensor StochasticC --out " + path("svd")), 0);
  const auto j = json("svd/manifest.json");
  EXPECT_EQ(j["factorization"], "svd");
  for (const auto& [name, file] : j["factors"].items()) EXPECT_TRUE(fs::exists(dir_ / "svd" / file.get<std::string>())) << name;
  for (const auto& [name, r] : j["residuals"].items()) EXPECT_LE(r.get<double>(), 1e-13) << name;
}
