#include "tubal/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "tubal/dft.hpp"
#include "tubal/errors.hpp"

namespace tubal {
namespace {
std::atomic<Execution> gExecution{Execution::parallel};
}  // namespace

Execution defaultExecution() noexcept { return gExecution.load(std::memory_order_relaxed); }
void setDefaultExecution(Execution exec) noexcept { gExecution.store(exec, std::memory_order_relaxed); }

DenseTensor3::DenseTensor3(Dims dims, std::vector<cplx> data) : dims_(dims), data_(std::move(data)) {
  if (dims_.rows == 0 || dims_.cols == 0 || dims_.faces == 0) throw Error("tensor dimensions must be positive");
  if (data_.size() != dims_.count()) throw DimensionMismatch(Axis::tube, data_.size(), dims_.count(), "tensor data");
  refreshReality();
}

DenseTensor3::DenseTensor3(Dims dims, std::vector<cplx> data, Reality hint)
    : DenseTensor3(dims, std::move(data)) {
  if (hint == Reality::real && reality_ != Reality::real)
    throw Error("reality hint Real contradicts nonzero imaginary entries");
  reality_ = hint;
}

void DenseTensor3::refreshReality() {
  const bool real = std::all_of(data_.begin(), data_.end(), [](cplx z) { return z.imag() == 0.0; });
  reality_ = real ? Reality::real : Reality::complex;
}

DenseTensor3 DenseTensor3::zeros(Dims dims) { return DenseTensor3(dims, std::vector<cplx>(dims.count())); }

DenseTensor3 DenseTensor3::identity(std::size_t p, std::size_t n) {
  std::vector<cplx> data(p * p * n);
  for (std::size_t i = 0; i < p; ++i) data[i * p + i] = 1.0;
  return DenseTensor3({p, p, n}, std::move(data));
}

DenseTensor3 DenseTensor3::fromFaces(const std::vector<Matrix>& faces) {
  if (faces.empty()) throw Error("fromFaces needs at least one face");
  const Dims dims{static_cast<std::size_t>(faces[0].rows()), static_cast<std::size_t>(faces[0].cols()),
                  faces.size()};
  std::vector<cplx> data(dims.count());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    if (static_cast<std::size_t>(faces[k].rows()) != dims.rows)
      throw DimensionMismatch(Axis::rows, faces[k].rows(), dims.rows, "fromFaces");
    if (static_cast<std::size_t>(faces[k].cols()) != dims.cols)
      throw DimensionMismatch(Axis::cols, faces[k].cols(), dims.cols, "fromFaces");
    FaceMap(data.data() + k * dims.faceSize(), dims.rows, dims.cols) = faces[k];
  }
  return DenseTensor3(dims, std::move(data));
}

DenseTensor3 DenseTensor3::generate(Dims dims,
                                    const std::function<cplx(std::size_t, std::size_t, std::size_t)>& f) {
  std::vector<cplx> data(dims.count());
  for (std::size_t k = 0; k < dims.faces; ++k)
    for (std::size_t i = 0; i < dims.rows; ++i)
      for (std::size_t j = 0; j < dims.cols; ++j) data[k * dims.faceSize() + i * dims.cols + j] = f(i, j, k);
  return DenseTensor3(dims, std::move(data));
}

DenseTensor3 DenseTensor3::diagonal(const std::vector<Tube>& tubes) {
  if (tubes.empty()) throw Error("diagonal needs at least one tube");
  const std::size_t p = tubes.size();
  const std::size_t n = tubes[0].size();
  std::vector<cplx> data(p * p * n);
  for (std::size_t i = 0; i < p; ++i) {
    if (tubes[i].size() != n) throw DimensionMismatch(Axis::tube, tubes[i].size(), n, "diagonal");
    const auto s = tubes[i].spatial();
    for (std::size_t k = 0; k < n; ++k) data[k * p * p + i * p + i] = s[k];
  }
  return DenseTensor3({p, p, n}, std::move(data));
}

DenseTensor3 DenseTensor3::canonicalSlice(std::size_t rows, std::size_t j, std::size_t n) {
  std::vector<cplx> data(rows * n);
  data.at(j) = 1.0;
  return DenseTensor3({rows, 1, n}, std::move(data));
}

ConstFaceMap DenseTensor3::face(std::size_t k) const {
  return ConstFaceMap(data_.data() + k * dims_.faceSize(), dims_.rows, dims_.cols);
}

Tube DenseTensor3::tube(std::size_t i, std::size_t j) const {
  std::vector<cplx> v(dims_.faces);
  for (std::size_t k = 0; k < dims_.faces; ++k) v[k] = (*this)(i, j, k);
  return Tube(std::move(v));
}

DenseTensor3 DenseTensor3::lateralSlice(std::size_t j) const { return lateralSlices(j, 1); }

DenseTensor3 DenseTensor3::lateralSlices(std::size_t first, std::size_t count) const {
  return block(0, first, dims_.rows, count);
}

DenseTensor3 DenseTensor3::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
  if (row0 + rows > dims_.rows) throw DimensionMismatch(Axis::rows, row0 + rows, dims_.rows, "block");
  if (col0 + cols > dims_.cols) throw DimensionMismatch(Axis::cols, col0 + cols, dims_.cols, "block");
  std::vector<cplx> data(rows * cols * dims_.faces);
  for (std::size_t k = 0; k < dims_.faces; ++k)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) data[(k * rows + i) * cols + j] = (*this)(row0 + i, col0 + j, k);
  return DenseTensor3({rows, cols, dims_.faces}, std::move(data));
}

double DenseTensor3::frobNorm() const {
  double sum = 0.0;
  for (auto v : data_) sum += std::norm(v);
  return std::sqrt(sum);
}

DenseTensor3& DenseTensor3::operator+=(const DenseTensor3& rhs) {
  requireSameDims(dims_, rhs.dims_, "tensor addition");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += rhs.data_[q];
  refreshReality();
  return *this;
}

DenseTensor3& DenseTensor3::operator-=(const DenseTensor3& rhs) {
  requireSameDims(dims_, rhs.dims_, "tensor subtraction");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] -= rhs.data_[q];
  refreshReality();
  return *this;
}

DenseTensor3& DenseTensor3::operator*=(cplx c) {
  for (auto& v : data_) v *= c;
  refreshReality();
  return *this;
}

// FourierTensor

FourierTensor::FourierTensor(Dims dims, bool conjugateEven)
    : dims_(dims), data_(dims.count()), conjugateEven_(conjugateEven) {}

FourierTensor::FourierTensor(Dims dims, std::vector<cplx> data, bool conjugateEven)
    : dims_(dims), data_(std::move(data)), conjugateEven_(conjugateEven) {
  if (data_.size() != dims_.count()) throw DimensionMismatch(Axis::tube, data_.size(), dims_.count(), "fourier data");
}

FaceMap FourierTensor::face(std::size_t k) {
  return FaceMap(data_.data() + k * dims_.faceSize(), dims_.rows, dims_.cols);
}

ConstFaceMap FourierTensor::face(std::size_t k) const {
  return ConstFaceMap(data_.data() + k * dims_.faceSize(), dims_.rows, dims_.cols);
}

std::size_t FourierTensor::independentFaces() const noexcept {
  return conjugateEven_ ? dims_.faces / 2 + 1 : dims_.faces;
}

void FourierTensor::mirrorConjugates() {
  if (!conjugateEven_) return;
  const std::size_t n = dims_.faces;
  const std::size_t fs = dims_.faceSize();
  for (std::size_t k = independentFaces(); k < n; ++k) {
    const cplx* src = data_.data() + (n - k) * fs;
    cplx* dst = data_.data() + k * fs;
    for (std::size_t q = 0; q < fs; ++q) dst[q] = std::conj(src[q]);
  }
}

std::vector<cplx> FourierTensor::tube(std::size_t i, std::size_t j) const {
  std::vector<cplx> v(dims_.faces);
  for (std::size_t k = 0; k < dims_.faces; ++k) v[k] = data_[k * dims_.faceSize() + i * dims_.cols + j];
  return v;
}

double FourierTensor::spatialFrobNorm() const {
  double sum = 0.0;
  for (auto v : data_) sum += std::norm(v);
  return std::sqrt(sum / static_cast<double>(dims_.faces));
}

FourierTensor fft3(const DenseTensor3& a) {
  std::vector<cplx> data(a.data().begin(), a.data().end());
  dft::forwardTubes(data, a.faces(), a.dims().faceSize());
  FourierTensor out(a.dims(), std::move(data), a.isReal());
  // Exact symmetry: the mirror faces of a real input are conjugates by definition.
  out.mirrorConjugates();
  if (a.isReal()) {
    for (std::size_t q = 0; q < a.dims().faceSize(); ++q) {
      auto& v = out.data()[q];
      v = cplx(v.real(), 0.0);
    }
    if (a.faces() % 2 == 0) {
      auto mid = out.face(a.faces() / 2);
      for (Eigen::Index q = 0; q < mid.size(); ++q) mid.data()[q] = cplx(mid.data()[q].real(), 0.0);
    }
  }
  return out;
}

DenseTensor3 ifft3(const FourierTensor& a) {
  std::vector<cplx> data(a.data().begin(), a.data().end());
  dft::inverseTubes(data, a.faces(), a.dims().faceSize());
  if (a.conjugateEven()) {
    for (auto& v : data) v = cplx(v.real(), 0.0);
    return DenseTensor3(a.dims(), std::move(data), Reality::real);
  }
  return DenseTensor3(a.dims(), std::move(data));
}

DenseTensor3 conjTranspose(const DenseTensor3& a) {
  const std::size_t n = a.faces();
  const Dims out{a.cols(), a.rows(), n};
  std::vector<cplx> data(out.count());
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = k == 0 ? 0 : n - k;
    FaceMap(data.data() + k * out.faceSize(), out.rows, out.cols) = a.face(src).adjoint();
  }
  return DenseTensor3(out, std::move(data));
}

FourierTensor adjointFaces(const FourierTensor& a) {
  const Dims out{a.cols(), a.rows(), a.faces()};
  FourierTensor r(out, a.conjugateEven());
  for (std::size_t k = 0; k < a.faces(); ++k) r.face(k) = a.face(k).adjoint();
  return r;
}

cplx innerProduct(const DenseTensor3& a, const DenseTensor3& b) {
  requireSameDims(a.dims(), b.dims(), "innerProduct");
  cplx sum = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q) sum += std::conj(a.data()[q]) * b.data()[q];
  return sum;
}

cplx innerProduct(const FourierTensor& a, const FourierTensor& b) {
  requireSameDims(a.dims(), b.dims(), "innerProduct");
  cplx sum = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q) sum += std::conj(a.data()[q]) * b.data()[q];
  return sum;
}

void requireSameDims(const Dims& a, const Dims& b, const char* where) {
  if (a.rows != b.rows) throw DimensionMismatch(Axis::rows, a.rows, b.rows, where);
  if (a.cols != b.cols) throw DimensionMismatch(Axis::cols, a.cols, b.cols, where);
  if (a.faces != b.faces) throw DimensionMismatch(Axis::faces, a.faces, b.faces, where);
}

double relativeError(const DenseTensor3& a, const DenseTensor3& b) {
  requireSameDims(a.dims(), b.dims(), "relativeError");
  double diff = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q) diff += std::norm(a.data()[q] - b.data()[q]);
  return std::sqrt(diff) / std::max(b.frobNorm(), 1e-300);
}

}  // namespace tubal
