#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tubal/tensor.hpp"
#include "tubal/tube.hpp"

namespace tubal {

enum class DeflationVariant { DE, DLE, DS };

/// How the shifted inverse iteration turns the converged scaling tube alpha
/// into an eigentube. `standard` is e/alpha + sigma; `printed` is
/// e/(alpha + sigma), kept for comparison runs.
enum class InverseRecovery { standard, printed };

/// Shift rule of the shifted t-QR iteration: sigma = H(r,r,:) or
/// sigma = H(r,r,:) + i*H(r,r,:).
enum class QrShift { rayleigh, complexRayleigh };

struct SolverConfig {
  double tol = 1e-15;
  std::size_t iterMax = 3000;
  unsigned powerIndex = 1;
  std::optional<Tube> shift;
  DeflationVariant deflationVariant = DeflationVariant::DE;
  std::uint64_t rngSeed = 1;
  InverseRecovery inverseRecovery = InverseRecovery::standard;
  QrShift qrShift = QrShift::rayleigh;
  /// t-QR: iterations without a deflation before switching to the complex shift.
  std::size_t stagnationLimit = 500;

  /// Throws std::invalid_argument on tol <= 0, iterMax == 0 or powerIndex == 0.
  void validate() const;
};

struct EigenPair {
  Tube eigentube;
  LateralSlice eigenslice;
  double residualNorm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Stopping quantity per iteration.
  std::vector<double> trace;
};

struct SchurResult {
  LateralSliceSet u;
  DenseTensor3 r;
  std::vector<double> trace;
  std::size_t iterations = 0;
  bool converged = false;

  /// Diagonal tubes of R.
  std::vector<Tube> diagonalTubes() const;
};

/// Tube of largest Frobenius norm in a lateral slice; ties go to the smallest row.
Tube tMax(const LateralSlice& x);
std::size_t tMaxIndex(const LateralSlice& x);

/// Standard-normal lateral slice set (rows x cols x faces). Complex entries
/// draw independent real and imaginary parts.
DenseTensor3 randomSlices(std::size_t rows, std::size_t cols, std::size_t faces, bool real, std::mt19937_64& rng);

/// True when A is real and its eigentube of largest norm is a real tube, the
/// condition for a real starting slice.
bool wantsRealStart(const DenseTensor3& a, std::size_t eigentube = 0);

EigenPair tPower(const DenseTensor3& a, const LateralSlice& v0, const SolverConfig& cfg = {});
/// Starts from a seeded random slice, real when wantsRealStart(a).
EigenPair tPower(const DenseTensor3& a, const SolverConfig& cfg = {});

/// Shifted inverse iteration; cfg.shift is the tube sigma (zero when unset).
EigenPair tInversePower(const DenseTensor3& a, const LateralSlice& v0, const SolverConfig& cfg);
EigenPair tInversePower(const DenseTensor3& a, const SolverConfig& cfg);

/// A - sigma * U1 * V^H. Checks V^H * U1 = e and that no other eigentube of A
/// lands on lambda1 - sigma in some face.
DenseTensor3 deflate(const DenseTensor3& a, const Tube& lambda1, const LateralSlice& u1, const LateralSlice& v,
                     const Tube& sigma);

struct DeflationResult {
  std::vector<EigenPair> stages;  // power runs on A_1, A_2, ...
  std::vector<EigenPair> pairs;   // eigenpairs of the input tensor
  LateralSliceSet u;              // p x k, slices of `pairs`
  DenseTensor3 d;                 // k x k f-diagonal
  std::size_t iterations = 0;     // sum over stages of power (and left power) iterations
};

/// k eigenpairs through repeated power runs on deflated tensors. The deflation
/// slice is the stage eigenslice (DE), left eigenslice (DLE) or Schur slice (DS).
DeflationResult deflatedPowerSweep(const DenseTensor3& a, std::size_t k, const SolverConfig& cfg);

/// Subspace iteration with power index cfg.powerIndex on the columns of x0.
SchurResult tSubspaceIteration(const DenseTensor3& a, const LateralSliceSet& x0, const SolverConfig& cfg);
SchurResult tSubspaceIteration(const DenseTensor3& a, std::size_t m, const SolverConfig& cfg);

/// Unshifted t-QR; stops when the strictly lower part of A_k falls to
/// cfg.tol * max(1, ||A||_F).
SchurResult tQrUnshifted(const DenseTensor3& a, const SolverConfig& cfg);

struct QrStep {
  DenseTensor3 q;
  DenseTensor3 r;
  DenseTensor3 next;  // R * Q
};
/// The first `count` unshifted t-QR steps, A_k = Q_k * R_k and A_{k+1} = R_k * Q_k.
std::vector<QrStep> unshiftedQrSteps(const DenseTensor3& a, std::size_t count);

/// Shifted t-QR with f-Hessenberg reduction. Deflates the active block
/// when ||H(r,r-1,:)||_F <= 1e-14 * ||A||_F.
SchurResult tQrShifted(const DenseTensor3& a, const SolverConfig& cfg);

/// ||D~ - D||_F over paired diagonal tubes.
double errorMetric(const std::vector<Tube>& computed, const std::vector<Tube>& reference);
/// ||F * U - U * lambda||_F.
double pairResidual(const DenseTensor3& f, const LateralSlice& u, const Tube& lambda);
/// ||F * U - U * R||_F.
double blockResidual(const DenseTensor3& f, const LateralSliceSet& u, const DenseTensor3& r);

}  // namespace tubal
