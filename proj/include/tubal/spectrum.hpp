#pragma once

#include <cstddef>
#include <vector>

#include "tubal/tensor.hpp"
#include "tubal/tube.hpp"

namespace tubal {

/// Eigentubes of a square tensor, stitched from the per-face eigenvalues
/// sorted by decreasing magnitude. Equal magnitudes (within 1e-12 relative)
/// are ordered by decreasing real part, then decreasing imaginary part.
struct EigentubeSpectrum {
  std::vector<Tube> eigentubes;
  /// faceValues[j][k]: Fourier entry k of eigentube j.
  std::vector<std::vector<cplx>> faceValues;
  // f-multiplicities (minimum over faces) and index (maximum over faces),
  // filled when requested.
  std::vector<std::size_t> algebraicMultiplicity;
  std::vector<std::size_t> geometricMultiplicity;
  std::vector<std::size_t> index;

  std::size_t size() const noexcept { return eigentubes.size(); }
  /// f-diagonal tensor of the leading `count` eigentubes.
  DenseTensor3 diagonal(std::size_t count) const;
};

struct SpectrumOptions {
  bool multiplicities = false;
};

EigentubeSpectrum spectrumOf(const DenseTensor3& a, SpectrumOptions options = {});

/// Sorts each face of a set of tubes by the eigentube ordering rule, used to
/// compare computed eigentubes with a reference.
std::vector<Tube> sortFacewise(const std::vector<Tube>& tubes);

/// P_A(x) = tdet(A - I * x).
Tube charPolyEval(const DenseTensor3& a, const Tube& x);

/// Eigenslice of A for eigentube lambda, stitched from per-face null vectors.
/// Each face of the result has unit 2-norm, so <U, U> = e.
/// Throws NotAnEigentube when lambda_hat^(k) is not an eigenvalue of face k
/// (smallest singular value of A_hat^(k) - lambda_hat^(k) I above
/// 1e-8 * max(1, ||A_hat^(k)||_2)), and DefectiveFace when that eigenvalue's
/// algebraic multiplicity exceeds its geometric multiplicity.
LateralSlice eigensliceFor(const DenseTensor3& a, const Tube& lambda);

/// Left eigenslice V with A^H * V = lambda^H * V.
LateralSlice leftEigensliceFor(const DenseTensor3& a, const Tube& lambda);

}  // namespace tubal
