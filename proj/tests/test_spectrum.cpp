#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tubal/errors.hpp"
#include "tubal/experiments.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/spectrum.hpp"
#include "tubal/tproduct.hpp"

using namespace tubal;

namespace {

double pairResidualOracle(const DenseTensor3& a, const LateralSlice& u, const Tube& lambda) {
  return (oracle::tProduct(a, u) - tensorTubeMul(u, lambda)).frobNorm();
}

}  // namespace

TEST(SpectrumOf, IdentityEigentubesAreUnit) {
  const auto s = spectrumOf(DenseTensor3::identity(3, 4));
  ASSERT_EQ(s.size(), 3u);
  for (const auto& t : s.eigentubes) EXPECT_LE(oracle::tubeDistance(t, Tube::unit(4)), 1e-14);
  EXPECT_LE(tubeNorm(charPolyEval(DenseTensor3::identity(3, 4), Tube::unit(4))), 1e-14);
}

TEST(SpectrumOf, ScaledTridiagonalMatchesClosedForm) {
  const DenseTensor3 a = makeTensor(defaultSpec(TensorKind::TridiagScaled));
  const auto s = spectrumOf(a);
  const auto ref = oracle::tridiagScaledSpectrum();
  for (std::size_t j = 0; j < 10; ++j)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(std::abs(s.faceValues[j][k] - ref[k][j]), 1e-11 * 400.0);
  EXPECT_TRUE(s.eigentubes[0].isReal());
}

TEST(SpectrumOf, StochasticPerronValue) {
  const DenseTensor3 c = makeTensor(defaultSpec(TensorKind::StochasticC));
  oracle::Mat sum = oracle::Mat::Zero(4, 4);
  for (std::size_t k = 0; k < 4; ++k) sum += oracle::face(c, k);
  auto ev = oracle::eigenvalues(sum);
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return std::abs(x) > std::abs(y); });
  const auto s = spectrumOf(c);
  EXPECT_NEAR(ev[0].real(), 4.0, 1e-3);
  EXPECT_LE(std::abs(s.faceValues[0][0] - ev[0]), 1e-12);
  EXPECT_TRUE(s.eigentubes[0].isReal());
}

TEST(SpectrumOf, FaceValuesAreEigenvaluesAndOrdered) {
  std::mt19937_64 rng(1);
  for (bool real : {true, false}) {
    const DenseTensor3 a = oracle::randomTensor({4, 4, 5}, real, rng);
    const auto s = spectrumOf(a);
    const auto ref = oracle::faceEigenvalues(a);
    for (std::size_t k = 0; k < 5; ++k) {
      std::vector<cplx> got;
      for (std::size_t j = 0; j < 4; ++j) {
        got.push_back(s.faceValues[j][k]);
        if (j) {
          EXPECT_GE(std::abs(s.faceValues[j - 1][k]), std::abs(s.faceValues[j][k]) * (1 - 1e-12));
        }
      }
      EXPECT_LE(oracle::multisetDistance(got, ref[k]), 1e-10);
    }
    for (std::size_t j = 0; j < 4; ++j) {
      const auto f = s.eigentubes[j].fourier();
      for (std::size_t k = 0; k < 5; ++k) EXPECT_LE(std::abs(f[k] - s.faceValues[j][k]), 1e-10);
    }
  }
}

TEST(SpectrumOf, TiesOrderedByRealThenImaginaryPart) {
  // Face values 2, -2, 2i, -2i all share magnitude 2.
  oracle::Mat f = oracle::Mat::Zero(4, 4);
  f.diagonal() << cplx(0.0, -2.0), -2.0, cplx(0.0, 2.0), 2.0;
  const auto s = spectrumOf(oracle::fromFaces({f}));
  EXPECT_EQ(s.faceValues[0][0], cplx(2.0));
  EXPECT_EQ(s.faceValues[1][0], cplx(0.0, 2.0));
  EXPECT_EQ(s.faceValues[2][0], cplx(0.0, -2.0));
  EXPECT_EQ(s.faceValues[3][0], cplx(-2.0));
}

TEST(SpectrumOf, RealTensorsHaveMirroredFaces) {
  std::mt19937_64 rng(2);
  const DenseTensor3 a = oracle::randomTensor({3, 3, 6}, true, rng);
  const auto s = spectrumOf(a);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 1; k < 6; ++k) {
      // Face n-k holds the conjugates of face k; the pairing inside a face may differ.
      std::vector<cplx> x, y;
      for (std::size_t i = 0; i < 3; ++i) {
        x.push_back(s.faceValues[i][k]);
        y.push_back(std::conj(s.faceValues[i][6 - k]));
      }
      EXPECT_LE(oracle::multisetDistance(x, y), 1e-10);
    }
}

TEST(SpectrumOf, RejectsNonSquare) {
  EXPECT_THROW(spectrumOf(DenseTensor3::zeros({2, 3, 2})), DimensionMismatch);
}

TEST(CharPoly, VanishesOnEigentubes) {
  std::mt19937_64 rng(3);
  const DenseTensor3 a = oracle::randomTensor({3, 3, 4}, false, rng);
  const auto s = spectrumOf(a);
  for (const auto& t : s.eigentubes) EXPECT_LE(tubeNorm(charPolyEval(a, t)), 1e-8 * std::pow(a.frobNorm(), 3));
  EXPECT_GT(tubeNorm(charPolyEval(a, Tube::zero(4))), 1e-6);
}

TEST(Multiplicities, DiagonalizableTensor) {
  std::mt19937_64 rng(4);
  const auto s = spectrumOf(oracle::randomTensor({3, 3, 3}, false, rng), {.multiplicities = true});
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(s.algebraicMultiplicity[j], 1u);
    EXPECT_EQ(s.geometricMultiplicity[j], 1u);
    EXPECT_EQ(s.index[j], 1u);
  }
}

TEST(Multiplicities, JordanBlockInEveryFace) {
  oracle::Mat j = oracle::Mat::Zero(3, 3);
  j << 2.0, 1.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.5;
  const auto s = spectrumOf(oracle::fromFaces({j}), {.multiplicities = true});
  EXPECT_EQ(s.algebraicMultiplicity[0], 2u);
  EXPECT_EQ(s.geometricMultiplicity[0], 1u);
  EXPECT_EQ(s.index[0], 2u);
  EXPECT_EQ(s.algebraicMultiplicity[2], 1u);
}

TEST(EigensliceFor, IdentityAndSingleFace) {
  const Tube e = Tube::unit(3);
  const LateralSlice u = eigensliceFor(DenseTensor3::identity(3, 3), e);
  EXPECT_LE(pairResidualOracle(DenseTensor3::identity(3, 3), u, e), 1e-14);
  EXPECT_LE(oracle::tubeDistance(sliceInner(u, u), e), 1e-12);

  std::mt19937_64 rng(5);
  const DenseTensor3 m = oracle::randomTensor({4, 4, 1}, false, rng);
  const auto s = spectrumOf(m);
  const LateralSlice v = eigensliceFor(m, s.eigentubes[1]);
  EXPECT_LE(pairResidualOracle(m, v, s.eigentubes[1]), 1e-12 * m.frobNorm());
}

TEST(EigensliceFor, ScaledTridiagonalLeadingPair) {
  const DenseTensor3 a = makeTensor(defaultSpec(TensorKind::TridiagScaled));
  const auto s = spectrumOf(a);
  const LateralSlice u = eigensliceFor(a, s.eigentubes[0]);
  EXPECT_TRUE(u.isReal());
  EXPECT_LE(pairResidualOracle(a, u, s.eigentubes[0]), 1e-10);
}

TEST(EigensliceFor, EveryEigentubeOfRandomTensors) {
  std::mt19937_64 rng(6);
  for (bool real : {true, false}) {
    const DenseTensor3 a = oracle::randomTensor({4, 4, 4}, real, rng);
    const auto s = spectrumOf(a);
    for (const auto& t : s.eigentubes) {
      const LateralSlice u = eigensliceFor(a, t);
      EXPECT_LE(pairResidualOracle(a, u, t), 1e-8 * a.frobNorm());
      EXPECT_LE(oracle::tubeDistance(sliceInner(u, u), Tube::unit(4)), 1e-10);
    }
  }
}

TEST(EigensliceFor, NotAnEigentube) {
  std::mt19937_64 rng(7);
  const DenseTensor3 a = oracle::randomTensor({3, 3, 2}, false, rng);
  auto f = spectrumOf(a).eigentubes[0].fourier();
  f[1] += 0.5;
  try {
    eigensliceFor(a, Tube::fromFourier(f));
    FAIL() << "expected NotAnEigentube";
  } catch (const NotAnEigentube& e) {
    EXPECT_EQ(e.face(), 1u);
  }
}

TEST(EigensliceFor, DefectiveFace) {
  oracle::Mat j = oracle::Mat::Zero(2, 2);
  j << 1.0, 1.0, 0.0, 1.0;
  const DenseTensor3 a = oracle::fromFaces({j});
  EXPECT_THROW(eigensliceFor(a, Tube({1.0})), DefectiveFace);
}

TEST(LeftEigenslice, AdjointLaw) {
  std::mt19937_64 rng(8);
  const DenseTensor3 a = oracle::randomTensor({4, 4, 3}, false, rng);
  const auto s = spectrumOf(a);
  const DenseTensor3 ah = conjTranspose(a);
  for (const auto& t : s.eigentubes) {
    const LateralSlice v = leftEigensliceFor(a, t);
    EXPECT_LE(pairResidualOracle(ah, v, t.adjoint()), 1e-8 * a.frobNorm());
  }
}

TEST(SvdLink, SquaredSingularTubesAreEigentubesOfGram) {
  std::mt19937_64 rng(9);
  const DenseTensor3 a = oracle::randomTensor({4, 3, 3}, false, rng);
  const TSvdResult svd = tSvd(a);
  const auto s = spectrumOf(tProduct(conjTranspose(a), a));
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<cplx> sq, ev;
    for (std::size_t i = 0; i < 3; ++i) {
      const cplx v = svd.singularTubes[i].fourier()[k];
      sq.push_back(std::norm(v));
      ev.push_back(s.faceValues[i][k]);
    }
    EXPECT_LE(oracle::multisetDistance(sq, ev), 1e-8 * a.frobNorm() * a.frobNorm());
  }
}
