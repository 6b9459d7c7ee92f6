#include "tubal/circulant.hpp"

#include <cmath>
#include <numbers>

#include "tubal/errors.hpp"

namespace tubal {
namespace {
void guardSize(std::size_t rows, std::size_t cols) {
  if (rows * cols > kMaxCirculantEntries)
    throw Error("block-circulant materialization limited to 1e6 entries");
}
}  // namespace

Matrix bcirc(const DenseTensor3& a) {
  const std::size_t l = a.rows(), p = a.cols(), n = a.faces();
  guardSize(l * n, p * n);
  Matrix m(l * n, p * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m.block(r * l, c * p, l, p) = a.face((r + n - c) % n);
  return m;
}

Matrix bdiag(const FourierTensor& a) {
  const std::size_t l = a.rows(), p = a.cols(), n = a.faces();
  guardSize(l * n, p * n);
  Matrix m = Matrix::Zero(l * n, p * n);
  for (std::size_t k = 0; k < n; ++k) m.block(k * l, k * p, l, p) = a.face(k);
  return m;
}

Matrix unfold(const DenseTensor3& a) {
  const std::size_t l = a.rows(), p = a.cols(), n = a.faces();
  Matrix m(l * n, p);
  for (std::size_t k = 0; k < n; ++k) m.block(k * l, 0, l, p) = a.face(k);
  return m;
}

DenseTensor3 fold(const Matrix& m, std::size_t faces) {
  if (faces == 0 || m.rows() % static_cast<Eigen::Index>(faces) != 0)
    throw DimensionMismatch(Axis::rows, m.rows(), faces, "fold");
  const std::size_t l = m.rows() / faces;
  std::vector<Matrix> f(faces);
  for (std::size_t k = 0; k < faces; ++k) f[k] = m.block(k * l, 0, l, m.cols());
  return DenseTensor3::fromFaces(f);
}

DenseTensor3 tProductReference(const DenseTensor3& a, const DenseTensor3& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch(Axis::inner, a.cols(), b.rows(), "tProductReference");
  if (a.faces() != b.faces()) throw DimensionMismatch(Axis::faces, a.faces(), b.faces(), "tProductReference");
  Matrix c = bcirc(a) * unfold(b);
  return fold(c, a.faces());
}

Matrix dftKron(std::size_t n, std::size_t m) {
  guardSize(n * m, n * m);
  Matrix f = Matrix::Zero(n * m, n * m);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      const cplx w = std::polar(1.0, angle);
      for (std::size_t i = 0; i < m; ++i) f(j * m + i, k * m + i) = w;
    }
  return f;
}

}  // namespace tubal
