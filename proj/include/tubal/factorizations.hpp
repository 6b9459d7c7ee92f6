#pragma once

#include <cstddef>
#include <vector>

#include "tubal/tensor.hpp"
#include "tubal/tube.hpp"

namespace tubal {

/// A = Q * R with Q f-unitary (rows x rows) and R f-upper-triangular.
struct TQrResult {
  DenseTensor3 q;
  DenseTensor3 r;
};

/// Thin variant: Q is rows x cols with f-orthonormal columns, R is cols x cols.
/// Requires rows >= cols.
struct TQrThinResult {
  DenseTensor3 q;
  DenseTensor3 r;
};

/// P * A = L * U computed facewise with partial pivoting. The permutation is
/// held as one row-index vector per Fourier face; permutationTensor()
/// materializes P on demand.
class TLuResult {
 public:
  TLuResult(FourierTensor lu, std::vector<std::vector<std::size_t>> permutations);

  DenseTensor3 lower() const;
  DenseTensor3 upper() const;
  DenseTensor3 permutationTensor() const;
  const std::vector<std::vector<std::size_t>>& permutations() const noexcept { return permutations_; }

  /// Solves A * X = B facewise using the stored factors.
  DenseTensor3 solve(const DenseTensor3& b) const;
  FourierTensor solveFourier(const FourierTensor& b) const;

 private:
  FourierTensor lu_;  // unit-lower L below the diagonal, U on and above
  std::vector<std::vector<std::size_t>> permutations_;
};

/// H = W^H * A * W with every Fourier face of H upper Hessenberg.
struct THessResult {
  DenseTensor3 w;
  DenseTensor3 h;
};

/// A = U * S * V^H with S f-diagonal; singular values sigma_i = ||s_i||_F.
struct TSvdResult {
  DenseTensor3 u;
  DenseTensor3 s;
  DenseTensor3 v;
  std::vector<Tube> singularTubes;
  std::vector<double> singularValues;
};

/// Q * A * Q^H = R with Q real f-orthogonal and R f-quasi-upper-triangular.
struct TSchurResult {
  DenseTensor3 q;
  DenseTensor3 r;
};

TQrResult tQr(const DenseTensor3& a, Execution exec = defaultExecution());
TQrThinResult tQrThin(const DenseTensor3& a, Execution exec = defaultExecution());
FourierTensor thinQFaces(const FourierTensor& a, Execution exec = defaultExecution());

/// Throws SingularFace when a pivot falls below 1e-13 * ||face||_F.
TLuResult tLu(const DenseTensor3& a, Execution exec = defaultExecution());

THessResult tHess(const DenseTensor3& a, Execution exec = defaultExecution());

TSvdResult tSvd(const DenseTensor3& a, Execution exec = defaultExecution());

TSchurResult realTSchur(const DenseTensor3& a, Execution exec = defaultExecution());

/// Tube whose Fourier entries are the determinants of the Fourier faces.
Tube tDet(const DenseTensor3& a);

/// Lateral slices spanning the t-null space: r = min facewise nullity, where
/// singular values <= 1e-10 * sigma_max of the face count as zero.
std::vector<LateralSlice> tNullBasis(const DenseTensor3& a);

/// True when every Fourier face of x lies in the column space of the matching
/// face of A, up to relative residual tol.
bool inRange(const DenseTensor3& a, const LateralSlice& x, double tol = 1e-10);

/// Per-face mass of entries strictly below the given subdiagonal offset,
/// summed in the Fourier domain and scaled to the spatial norm.
double belowDiagonalNorm(const FourierTensor& a, std::ptrdiff_t offset);

}  // namespace tubal
