#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tubal/tube.hpp"
#include "tubal/types.hpp"

namespace tubal {

using FaceMap = Eigen::Map<Matrix>;
using ConstFaceMap = Eigen::Map<const Matrix>;

/// A rows x cols x faces complex tensor. Storage is face-major, row-major
/// within each face: entry (i, j, k) sits at k*rows*cols + i*cols + j.
/// Immutable after construction.
class DenseTensor3 {
 public:
  DenseTensor3() = default;
  /// Reality is detected from the data.
  DenseTensor3(Dims dims, std::vector<cplx> data);
  /// Throws when `hint` is Reality::real but some entry has nonzero imaginary part.
  DenseTensor3(Dims dims, std::vector<cplx> data, Reality hint);

  static DenseTensor3 zeros(Dims dims);
  static DenseTensor3 identity(std::size_t p, std::size_t n);
  static DenseTensor3 fromFaces(const std::vector<Matrix>& faces);
  static DenseTensor3 generate(Dims dims, const std::function<cplx(std::size_t, std::size_t, std::size_t)>& f);
  /// f-diagonal tensor with the given diagonal tubes.
  static DenseTensor3 diagonal(const std::vector<Tube>& tubes);
  /// Canonical lateral slice E_j (j zero-based) of length rows.
  static DenseTensor3 canonicalSlice(std::size_t rows, std::size_t j, std::size_t n);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t rows() const noexcept { return dims_.rows; }
  std::size_t cols() const noexcept { return dims_.cols; }
  std::size_t faces() const noexcept { return dims_.faces; }
  Reality reality() const noexcept { return reality_; }
  bool isReal() const noexcept { return reality_ == Reality::real; }
  bool isSquare() const noexcept { return dims_.rows == dims_.cols; }

  std::span<const cplx> data() const noexcept { return data_; }
  const cplx& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[k * dims_.faceSize() + i * dims_.cols + j];
  }
  ConstFaceMap face(std::size_t k) const;

  Tube tube(std::size_t i, std::size_t j) const;
  DenseTensor3 lateralSlice(std::size_t j) const;
  /// Columns [first, first+count) as a rows x count x faces tensor.
  DenseTensor3 lateralSlices(std::size_t first, std::size_t count) const;
  DenseTensor3 block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;

  double frobNorm() const;

  DenseTensor3& operator+=(const DenseTensor3& rhs);
  DenseTensor3& operator-=(const DenseTensor3& rhs);
  DenseTensor3& operator*=(cplx c);
  friend DenseTensor3 operator+(DenseTensor3 a, const DenseTensor3& b) { return a += b; }
  friend DenseTensor3 operator-(DenseTensor3 a, const DenseTensor3& b) { return a -= b; }
  friend DenseTensor3 operator*(DenseTensor3 a, cplx c) { return a *= c; }
  friend DenseTensor3 operator*(cplx c, DenseTensor3 a) { return a *= c; }
  friend bool operator==(const DenseTensor3& a, const DenseTensor3& b) {
    return a.dims_ == b.dims_ && a.data_ == b.data_;
  }

 private:
  void refreshReality();

  Dims dims_{};
  std::vector<cplx> data_;
  Reality reality_ = Reality::real;
};

using LateralSlice = DenseTensor3;
using LateralSliceSet = DenseTensor3;

/// The mode-3 DFT image of a tensor. When `conjugateEven` is set the faces
/// satisfy F^(n-k) = conj(F^(k)), which is the image of a real tensor; the
/// inverse transform then returns a real tensor.
class FourierTensor {
 public:
  FourierTensor() = default;
  FourierTensor(Dims dims, bool conjugateEven);
  FourierTensor(Dims dims, std::vector<cplx> data, bool conjugateEven);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t rows() const noexcept { return dims_.rows; }
  std::size_t cols() const noexcept { return dims_.cols; }
  std::size_t faces() const noexcept { return dims_.faces; }
  bool conjugateEven() const noexcept { return conjugateEven_; }
  void setConjugateEven(bool v) noexcept { conjugateEven_ = v; }

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }
  FaceMap face(std::size_t k);
  ConstFaceMap face(std::size_t k) const;

  /// Number of leading faces that determine the rest under conjugate symmetry
  /// (floor(n/2)+1), or n when the symmetry flag is off.
  std::size_t independentFaces() const noexcept;
  /// Overwrites faces past independentFaces() with conjugates of their mirrors.
  void mirrorConjugates();

  /// Fourier entries of tube (i, j).
  std::vector<cplx> tube(std::size_t i, std::size_t j) const;

  /// Frobenius norm of the spatial-domain tensor, via Parseval.
  double spatialFrobNorm() const;

 private:
  Dims dims_{};
  std::vector<cplx> data_;
  bool conjugateEven_ = false;
};

FourierTensor fft3(const DenseTensor3& a);
DenseTensor3 ifft3(const FourierTensor& a);

/// Conjugate transpose: each face transposed and conjugated, faces 2..n reversed.
DenseTensor3 conjTranspose(const DenseTensor3& a);

/// Frobenius inner product sum conj(a)*b.
cplx innerProduct(const DenseTensor3& a, const DenseTensor3& b);
cplx innerProduct(const FourierTensor& a, const FourierTensor& b);

/// Conjugate-transposes every Fourier face (the image of conjTranspose).
FourierTensor adjointFaces(const FourierTensor& a);

/// Throws DimensionMismatch naming the first differing axis.
void requireSameDims(const Dims& a, const Dims& b, const char* where);

/// Relative Frobenius error ||a - b|| / max(||b||, tiny).
double relativeError(const DenseTensor3& a, const DenseTensor3& b);

}  // namespace tubal
