#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axis { rows, cols, faces, inner, tube };
const char* axisName(Axis axis) noexcept;

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(Axis axis, std::size_t lhs, std::size_t rhs, const std::string& where);
  Axis axis() const noexcept { return axis_; }
  std::size_t lhs() const noexcept { return lhs_; }
  std::size_t rhs() const noexcept { return rhs_; }

 private:
  Axis axis_;
  std::size_t lhs_;
  std::size_t rhs_;
};

/// A Fourier entry of a divisor tube fell below the singularity gate.
class NearSingularTube : public Error {
 public:
  NearSingularTube(std::size_t face, double magnitude, double gate);
  std::size_t face() const noexcept { return face_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::size_t face_;
  double magnitude_;
};

class SingularFace : public Error {
 public:
  SingularFace(std::size_t face, double pivot);
  std::size_t face() const noexcept { return face_; }

 private:
  std::size_t face_;
};

class NotAnEigentube : public Error {
 public:
  NotAnEigentube(std::size_t face, double distance);
  std::size_t face() const noexcept { return face_; }

 private:
  std::size_t face_;
};

class DefectiveFace : public Error {
 public:
  DefectiveFace(std::size_t face, std::size_t algebraic, std::size_t geometric);
  std::size_t face() const noexcept { return face_; }

 private:
  std::size_t face_;
};

class ZeroSlice : public Error {
 public:
  ZeroSlice() : Error("lateral slice is zero") {}
};

class NoConvergence : public Error {
 public:
  NoConvergence(std::size_t iterations, double lastResidual, std::vector<double> trace = {});
  std::size_t iterations() const noexcept { return iterations_; }
  double lastResidual() const noexcept { return lastResidual_; }
  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::size_t iterations_;
  double lastResidual_;
  std::vector<double> trace_;
};

/// The scaling tube of an iteration could not be inverted.
class DivisionFailure : public Error {
 public:
  DivisionFailure(std::size_t iteration, std::size_t face);
};

class SingularShift : public Error {
 public:
  explicit SingularShift(std::size_t face);
};

class BadPairing : public Error {
 public:
  explicit BadPairing(double deviation);
};

class ShiftCollision : public Error {
 public:
  ShiftCollision(std::size_t eigentube, std::size_t face);
};

class MalformedFile : public Error {
 public:
  using Error::Error;
};

class UnknownKind : public Error {
 public:
  using Error::Error;
};

}  // namespace tubal
