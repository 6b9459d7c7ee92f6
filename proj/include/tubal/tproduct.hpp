#pragma once

#include <utility>

#include "tubal/tensor.hpp"
#include "tubal/tube.hpp"

namespace tubal {

/// Facewise product of Fourier images. When both operands are conjugate-even
/// only the leading floor(n/2)+1 faces are multiplied and the rest mirrored.
FourierTensor multiplyFaces(const FourierTensor& a, const FourierTensor& b,
                            Execution exec = defaultExecution());

/// t-product A * B through the Fourier domain. Real inputs give a real result.
DenseTensor3 tProduct(const DenseTensor3& a, const DenseTensor3& b, Execution exec = defaultExecution());

/// A^k, k >= 0 (A^0 is the identity).
DenseTensor3 tPowerOf(const DenseTensor3& a, unsigned k);

/// Every Fourier face of A scaled by the matching Fourier entry of b.
DenseTensor3 tensorTubeMul(const DenseTensor3& a, const Tube& b);
/// Facewise quotient; throws NearSingularTube through the tubeDiv gate.
DenseTensor3 tensorTubeDiv(const DenseTensor3& a, const Tube& b, double gate = -1.0);

FourierTensor scaleFaces(const FourierTensor& a, std::span<const cplx> tubeFourier);

/// A + s * I for square A.
DenseTensor3 addScaledIdentity(const DenseTensor3& a, const Tube& s);

/// <X, Y> = X^H * Y for lateral slices.
Tube sliceInner(const LateralSlice& x, const LateralSlice& y);

/// ||<Y,Y>||_F / ||Y||_F.
double sliceNorm(const LateralSlice& y);

/// Y = X * a with X facewise unit-norm (so <X,X> = e). Throws NearSingularTube
/// when some Fourier face of Y vanishes.
std::pair<LateralSlice, Tube> sliceNormalize(const LateralSlice& y);

}  // namespace tubal
