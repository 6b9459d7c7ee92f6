#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tubal/errors.hpp"
#include "tubal/tube.hpp"

using namespace tubal;

namespace {

void expectNear(const std::vector<cplx>& got, const std::vector<cplx>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_LE(std::abs(got[i] - want[i]), tol) << "entry " << i;
}

}  // namespace

TEST(TubeFft, UnitTubeMapsToOnes) {
  const Tube f = tubeFft(Tube::unit(3));
  expectNear({f.values().begin(), f.values().end()}, {1.0, 1.0, 1.0}, 1e-15);
}

TEST(TubeFft, TwoPointExamples) {
  expectNear(Tube({0.0, 1.0}).fourier(), {1.0, -1.0}, 1e-15);
  expectNear(Tube({2.0, 3.0}).fourier(), {5.0, -1.0}, 1e-15);
}

TEST(TubeFft, MatchesDirectDft) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1, 2, 3, 5, 8, 13}) {
    const Tube t = oracle::randomTube(n, false, rng);
    expectNear(t.fourier(), oracle::dft(t.spatial()), 1e-12);
  }
}

TEST(TubeFft, RoundTrip) {
  std::mt19937_64 rng(12);
  const Tube t = oracle::randomTube(7, false, rng);
  const Tube back = tubeIfft(tubeFft(t));
  EXPECT_LE(oracle::tubeDistance(back, t) / tubeNorm(t), 1e-12);
  EXPECT_EQ(tubeFft(t).domain(), Domain::fourier);
  EXPECT_EQ(back.domain(), Domain::spatial);
}

TEST(TubeMul, UnitIsIdentity) {
  std::mt19937_64 rng(13);
  const Tube b = oracle::randomTube(5, false, rng);
  EXPECT_LE(oracle::tubeDistance(tubeMul(Tube::unit(5), b), b), 1e-14);
}

TEST(TubeMul, SmallExamples) {
  expectNear(tubeMul(Tube({0.0, 1.0}), Tube({2.0, 3.0})).spatial(), {3.0, 2.0}, 1e-14);
  expectNear(tubeMul(Tube({1.0, 1.0, 1.0}), Tube({1.0, 1.0, 1.0})).spatial(), {3.0, 3.0, 3.0}, 1e-14);
}

TEST(TubeMul, MatchesCircularConvolution) {
  std::mt19937_64 rng(14);
  for (std::size_t n = 1; n <= 16; ++n) {
    const Tube a = oracle::randomTube(n, false, rng), b = oracle::randomTube(n, false, rng);
    expectNear(tubeMul(a, b).spatial(), oracle::circularConvolution(a.spatial(), b.spatial()), 1e-12);
  }
}

TEST(TubeMul, ResultIsSpatial) {
  EXPECT_EQ(tubeMul(Tube({1.0, 2.0}), Tube({3.0, 4.0})).domain(), Domain::spatial);
}

TEST(TubeMul, LengthMismatchThrows) {
  EXPECT_THROW(tubeMul(Tube({1.0, 2.0}), Tube({1.0, 2.0, 3.0})), DimensionMismatch);
  EXPECT_THROW(Tube({1.0}) + Tube({1.0, 2.0}), DimensionMismatch);
}

TEST(TubeMul, ScalarCaseIsComplexArithmetic) {
  const cplx a(1.5, -2.0), b(0.25, 3.0);
  EXPECT_EQ(tubeMul(Tube({a}), Tube({b})).spatial()[0], a * b);
  EXPECT_LE(std::abs(tubeDiv(Tube({a}), Tube({b})).spatial()[0] - a / b), 1e-15);
}

TEST(TubeDiv, ByUnit) {
  std::mt19937_64 rng(15);
  const Tube a = oracle::randomTube(4, false, rng);
  EXPECT_LE(oracle::tubeDistance(tubeDiv(a, Tube::unit(4)), a), 1e-14);
}

TEST(TubeDiv, InvertsMultiplication) {
  expectNear(tubeDiv(Tube({3.0, 2.0}), Tube({2.0, 3.0})).spatial(), {0.0, 1.0}, 1e-14);
  std::mt19937_64 rng(16);
  const Tube a = oracle::randomTube(6, false, rng), b = oracle::randomTube(6, false, rng);
  EXPECT_LE(oracle::tubeDistance(tubeMul(tubeDiv(a, b), b), a) / tubeNorm(a), 1e-10);
}

TEST(TubeDiv, ZeroDivisorReportsFace) {
  try {
    tubeDiv(Tube({1.0, 2.0}), Tube({0.0, 0.0}));
    FAIL() << "expected NearSingularTube";
  } catch (const NearSingularTube& e) {
    EXPECT_EQ(e.face(), 0u);
    EXPECT_EQ(e.magnitude(), 0.0);
  }
}

TEST(TubeDiv, VanishingSingleFace) {
  // (1, -1) has Fourier image (0, 2).
  try {
    tubeDiv(Tube({1.0, 1.0}), Tube({1.0, -1.0}));
    FAIL() << "expected NearSingularTube";
  } catch (const NearSingularTube& e) {
    EXPECT_EQ(e.face(), 0u);
  }
  // (1, 1) has Fourier image (2, 0).
  try {
    tubeDiv(Tube({1.0, 1.0}), Tube({1.0, 1.0}));
    FAIL() << "expected NearSingularTube";
  } catch (const NearSingularTube& e) {
    EXPECT_EQ(e.face(), 1u);
  }
}

TEST(TubeDiv, GateIsRelative) {
  const std::vector<cplx> big{1e20, 1e6};
  EXPECT_DOUBLE_EQ(singularityGate(big), 1e-13 * 1e20);
  const std::vector<cplx> small{1e-3, 1e-4};
  EXPECT_DOUBLE_EQ(singularityGate(small), 1e-13);
}

TEST(TubePow, MatchesRepeatedProduct) {
  std::mt19937_64 rng(17);
  const Tube a = oracle::randomTube(5, false, rng);
  Tube p = Tube::unit(5);
  for (unsigned k = 0; k <= 4; ++k) {
    EXPECT_LE(oracle::tubeDistance(tubePow(a, k), p), 1e-10 * std::max(1.0, tubeNorm(p)));
    p = tubeMul(p, a);
  }
}

TEST(TubeNorm, Examples) {
  EXPECT_DOUBLE_EQ(tubeNorm(Tube::unit(4)), 1.0);
  EXPECT_DOUBLE_EQ(tubeNorm(Tube({3.0, 4.0})), 5.0);
  EXPECT_NEAR(tubeNorm(tubeMul(Tube({0.0, 1.0}), Tube({2.0, 3.0}))), std::sqrt(13.0), 1e-14);
  EXPECT_EQ(tubeNorm(Tube::zero(3)), 0.0);
}

TEST(TubeNorm, SameInEitherDomain) {
  const Tube t({1.0, cplx(2.0, -1.0), 3.0});
  EXPECT_NEAR(tubeNorm(t.toFourier()), tubeNorm(t), 1e-14);
}

TEST(TubeNorm, Parseval) {
  std::mt19937_64 rng(18);
  for (std::size_t n : {1, 2, 3, 8}) {
    const Tube t = oracle::randomTube(n, false, rng);
    const double f = oracle::frob(oracle::dft(t.spatial()));
    EXPECT_NEAR(tubeNorm(t) * tubeNorm(t), f * f / static_cast<double>(n), 1e-12);
  }
}

TEST(ConjugateEven, Examples) {
  EXPECT_TRUE(isConjugateEven(tubeFft(Tube({1.0, 2.0, 3.0})), 1e-12));
  const std::vector<cplx> twoFace{1.0, cplx(0.0, 1.0)};
  EXPECT_FALSE(isConjugateEven(twoFace, 1e-12));
  EXPECT_FALSE(isConjugateEven(tubeFft(Tube({cplx(1.0, 1.0), 0.0, 0.0})), 1e-12));
}

TEST(ConjugateEven, RealTubesAlwaysPass) {
  std::mt19937_64 rng(19);
  for (std::size_t n = 1; n <= 9; ++n) EXPECT_TRUE(isConjugateEven(oracle::randomTube(n, true, rng), 1e-12)) << n;
}

TEST(ConjugateEven, SpatialInputIsTransformed) {
  EXPECT_TRUE(isConjugateEven(Tube({1.0, 2.0, 3.0, 4.0}), 1e-12));
  EXPECT_FALSE(isConjugateEven(Tube({1.0, cplx(0.0, 2.0), 3.0, 4.0}), 1e-12));
}

TEST(SnapReal, ZeroesRoundingLevelImaginaryParts) {
  std::vector<cplx> v{cplx(1.0, 1e-14), cplx(-2.0, -1e-15)};
  EXPECT_TRUE(snapReal(v));
  EXPECT_EQ(v[0], cplx(1.0, 0.0));
  EXPECT_EQ(v[1], cplx(-2.0, 0.0));
  std::vector<cplx> w{cplx(1.0, 1e-6)};
  EXPECT_FALSE(snapReal(w));
  EXPECT_EQ(w[0].imag(), 1e-6);
}

TEST(Tube, ProductOfRealTubesIsReal) {
  std::mt19937_64 rng(20);
  const Tube a = oracle::randomTube(6, true, rng), b = oracle::randomTube(6, true, rng);
  EXPECT_TRUE(tubeMul(a, b).isReal());
  EXPECT_TRUE(tubeDiv(a, b).isReal());
}

TEST(Tube, EqualityUsesSpatialValues) {
  const Tube t({1.0, 2.0});
  EXPECT_TRUE(t == Tube::fromFourier({3.0, -1.0}));
  EXPECT_FALSE(t == Tube({1.0, 2.5}));
}

TEST(Tube, AdjointConjugatesFourierEntries) {
  std::mt19937_64 rng(21);
  const Tube t = oracle::randomTube(5, false, rng);
  const auto f = t.fourier(), g = t.adjoint().fourier();
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_LE(std::abs(g[k] - std::conj(f[k])), 1e-12);
}

TEST(Tube, EmptyRejected) {
  EXPECT_THROW(Tube(std::vector<cplx>{}), Error);
}
