#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace tubal {

using cplx = std::complex<double>;

/// Dense complex matrix stored row-major, the layout of one frontal face.
using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

enum class Domain { spatial, fourier };
enum class Reality { real, complex };

/// Execution policy for facewise loops. Both policies produce bitwise
/// identical results; `serial` is kept as the reference path.
enum class Execution { serial, parallel };

Execution defaultExecution() noexcept;
void setDefaultExecution(Execution exec) noexcept;

struct Dims {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t faces = 0;

  std::size_t faceSize() const noexcept { return rows * cols; }
  std::size_t count() const noexcept { return rows * cols * faces; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

}  // namespace tubal
