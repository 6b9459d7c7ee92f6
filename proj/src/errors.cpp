#include "tubal/errors.hpp"

#include <sstream>

namespace tubal {
namespace {

template <class... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace

const char* axisName(Axis axis) noexcept {
  switch (axis) {
    case Axis::rows: return "rows";
    case Axis::cols: return "cols";
    case Axis::faces: return "faces";
    case Axis::inner: return "inner";
    case Axis::tube: return "tube";
  }
  return "?";
}

DimensionMismatch::DimensionMismatch(Axis axis, std::size_t lhs, std::size_t rhs, const std::string& where)
    : Error(concat(where, ": ", axisName(axis), " mismatch (", lhs, " vs ", rhs, ")")),
      axis_(axis), lhs_(lhs), rhs_(rhs) {}

NearSingularTube::NearSingularTube(std::size_t face, double magnitude, double gate)
    : Error(concat("tube is near singular at Fourier face ", face, ": |b| = ", magnitude, " <= ", gate)),
      face_(face), magnitude_(magnitude) {}

SingularFace::SingularFace(std::size_t face, double pivot)
    : Error(concat("Fourier face ", face, " is singular (pivot ", pivot, ")")), face_(face) {}

NotAnEigentube::NotAnEigentube(std::size_t face, double distance)
    : Error(concat("not an eigentube: face ", face, " has sigma_min ", distance)), face_(face) {}

DefectiveFace::DefectiveFace(std::size_t face, std::size_t algebraic, std::size_t geometric)
    : Error(concat("Fourier face ", face, " is defective (algebraic ", algebraic, ", geometric ", geometric, ")")),
      face_(face) {}

NoConvergence::NoConvergence(std::size_t iterations, double lastResidual, std::vector<double> trace)
    : Error(concat("no convergence after ", iterations, " iterations (residual ", lastResidual, ")")),
      iterations_(iterations), lastResidual_(lastResidual), trace_(std::move(trace)) {}

DivisionFailure::DivisionFailure(std::size_t iteration, std::size_t face)
    : Error(concat("scaling tube not invertible at iteration ", iteration, ", face ", face)) {}

SingularShift::SingularShift(std::size_t face)
    : Error(concat("shifted tensor is singular at Fourier face ", face)) {}

BadPairing::BadPairing(double deviation)
    : Error(concat("<U, V> deviates from e by ", deviation)) {}

ShiftCollision::ShiftCollision(std::size_t eigentube, std::size_t face)
    : Error(concat("deflation moved eigentube ", eigentube, " onto zero at face ", face)) {}

}  // namespace tubal
