#include <gtest/gtest.h>

#include <omp.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "tubal/eigensolvers.hpp"
#include "tubal/experiments.hpp"
#include "tubal/facewise.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/spectrum.hpp"
#include "tubal/tproduct.hpp"

using namespace tubal;

namespace {

bool same(const DenseTensor3& a, const DenseTensor3& b) {
  return a.dims() == b.dims() && std::equal(a.data().begin(), a.data().end(), b.data().begin());
}

class Parallel : public ::testing::Test {
 protected:
  // Several threads even on a single core, so the parallel path really splits.
  void SetUp() override {
    threads_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override {
    omp_set_num_threads(threads_);
    setDefaultExecution(Execution::parallel);
  }
  int threads_ = 1;
};

}  // namespace

TEST_F(Parallel, TProductBitwise) {
  std::mt19937_64 rng(61);
  for (bool real : {true, false}) {
    const DenseTensor3 a = oracle::randomTensor({6, 5, 9}, real, rng), b = oracle::randomTensor({5, 4, 9}, real, rng);
    EXPECT_TRUE(same(tProduct(a, b, Execution::serial), tProduct(a, b, Execution::parallel)));
  }
}

TEST_F(Parallel, FactorizationsBitwise) {
  std::mt19937_64 rng(62);
  const DenseTensor3 a = oracle::randomTensor({6, 6, 7}, false, rng);
  const auto qs = tQr(a, Execution::serial), qp = tQr(a, Execution::parallel);
  EXPECT_TRUE(same(qs.q, qp.q));
  EXPECT_TRUE(same(qs.r, qp.r));
  const auto ls = tLu(a, Execution::serial), lp = tLu(a, Execution::parallel);
  EXPECT_TRUE(same(ls.upper(), lp.upper()));
  EXPECT_EQ(ls.permutations(), lp.permutations());
  const auto hs = tHess(a, Execution::serial), hp = tHess(a, Execution::parallel);
  EXPECT_TRUE(same(hs.h, hp.h));
  const auto ss = tSvd(a, Execution::serial), sp = tSvd(a, Execution::parallel);
  EXPECT_TRUE(same(ss.u, sp.u));
  EXPECT_TRUE(same(ss.s, sp.s));
  EXPECT_TRUE(same(ss.v, sp.v));
  const DenseTensor3 r = oracle::randomTensor({5, 5, 6}, true, rng);
  const auto ts = realTSchur(r, Execution::serial), tp = realTSchur(r, Execution::parallel);
  EXPECT_TRUE(same(ts.q, tp.q));
  EXPECT_TRUE(same(ts.r, tp.r));
}

TEST_F(Parallel, SolversBitwiseUnderEitherDefault) {
  const DenseTensor3 a = makeTensor(defaultSpec(TensorKind::TridiagScaled));
  const DenseTensor3 c = makeTensor(defaultSpec(TensorKind::StochasticC));
  SolverConfig cfg;
  cfg.iterMax = 30000;
  setDefaultExecution(Execution::serial);
  const EigenPair ps = tPower(c, cfg);
  const SchurResult qs = tQrShifted(a, cfg);
  const auto ss = spectrumOf(c);
  setDefaultExecution(Execution::parallel);
  const EigenPair pp = tPower(c, cfg);
  const SchurResult qp = tQrShifted(a, cfg);
  const auto sp = spectrumOf(c);
  EXPECT_EQ(ps.iterations, pp.iterations);
  EXPECT_TRUE(same(ps.eigenslice, pp.eigenslice));
  EXPECT_EQ(qs.iterations, qp.iterations);
  EXPECT_TRUE(same(qs.r, qp.r));
  EXPECT_EQ(ss.faceValues, sp.faceValues);
}

TEST_F(Parallel, LowestFailingFaceIsRethrown) {
  for (auto exec : {Execution::serial, Execution::parallel}) {
    try {
      forEachFace(16, exec, [](std::size_t k) {
        if (k == 5 || k == 11) throw std::runtime_error(std::to_string(k));
      });
      FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "5");
    }
  }
}

TEST_F(Parallel, EveryFaceVisitedOnce) {
  std::vector<int> hits(37, 0);
  forEachFace(hits.size(), Execution::parallel, [&](std::size_t k) { ++hits[k]; });
  for (const int h : hits) EXPECT_EQ(h, 1);
}
