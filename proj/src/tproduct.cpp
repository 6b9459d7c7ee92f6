#include "tubal/tproduct.hpp"

#include <cmath>

#include "tubal/errors.hpp"
#include "tubal/facewise.hpp"

namespace tubal {

FourierTensor multiplyFaces(const FourierTensor& a, const FourierTensor& b, Execution exec) {
  if (a.cols() != b.rows()) throw DimensionMismatch(Axis::inner, a.cols(), b.rows(), "tProduct");
  if (a.faces() != b.faces()) throw DimensionMismatch(Axis::faces, a.faces(), b.faces(), "tProduct");
  FourierTensor c({a.rows(), b.cols(), a.faces()}, a.conjugateEven() && b.conjugateEven());
  forEachFace(c.independentFaces(), exec, [&](std::size_t k) { c.face(k).noalias() = a.face(k) * b.face(k); });
  c.mirrorConjugates();
  return c;
}

DenseTensor3 tProduct(const DenseTensor3& a, const DenseTensor3& b, Execution exec) {
  if (a.cols() != b.rows()) throw DimensionMismatch(Axis::inner, a.cols(), b.rows(), "tProduct");
  if (a.faces() != b.faces()) throw DimensionMismatch(Axis::faces, a.faces(), b.faces(), "tProduct");
  return ifft3(multiplyFaces(fft3(a), fft3(b), exec));
}

DenseTensor3 tPowerOf(const DenseTensor3& a, unsigned k) {
  if (!a.isSquare()) throw DimensionMismatch(Axis::cols, a.cols(), a.rows(), "tPowerOf");
  const FourierTensor fa = fft3(a);
  FourierTensor acc = fft3(DenseTensor3::identity(a.rows(), a.faces()));
  for (unsigned q = 0; q < k; ++q) acc = multiplyFaces(fa, acc);
  return ifft3(acc);
}

FourierTensor scaleFaces(const FourierTensor& a, std::span<const cplx> t) {
  if (t.size() != a.faces()) throw DimensionMismatch(Axis::faces, t.size(), a.faces(), "tensor-tube product");
  FourierTensor c = a;
  c.setConjugateEven(a.conjugateEven() && isConjugateEven(t, 0.0));
  for (std::size_t k = 0; k < a.faces(); ++k) c.face(k) *= t[k];
  return c;
}

DenseTensor3 tensorTubeMul(const DenseTensor3& a, const Tube& b) {
  if (b.size() != a.faces()) throw DimensionMismatch(Axis::faces, b.size(), a.faces(), "tensorTubeMul");
  FourierTensor fa = fft3(a);
  const bool real = a.isReal() && b.isReal();
  const auto fb = b.fourier();
  for (std::size_t k = 0; k < a.faces(); ++k) fa.face(k) *= fb[k];
  fa.setConjugateEven(real);
  return ifft3(fa);
}

DenseTensor3 tensorTubeDiv(const DenseTensor3& a, const Tube& b, double gate) {
  if (b.size() != a.faces()) throw DimensionMismatch(Axis::faces, b.size(), a.faces(), "tensorTubeDiv");
  const auto fb = b.fourier();
  if (gate < 0.0) gate = singularityGate(fb);
  FourierTensor fa = fft3(a);
  for (std::size_t k = 0; k < a.faces(); ++k) {
    const double mag = std::abs(fb[k]);
    if (!(mag > gate)) throw NearSingularTube(k, mag, gate);
    fa.face(k) /= fb[k];
  }
  fa.setConjugateEven(a.isReal() && b.isReal());
  return ifft3(fa);
}

DenseTensor3 addScaledIdentity(const DenseTensor3& a, const Tube& s) {
  if (!a.isSquare()) throw DimensionMismatch(Axis::cols, a.cols(), a.rows(), "addScaledIdentity");
  if (s.size() != a.faces()) throw DimensionMismatch(Axis::faces, s.size(), a.faces(), "addScaledIdentity");
  const auto sv = s.spatial();
  std::vector<cplx> data(a.data().begin(), a.data().end());
  const std::size_t p = a.rows();
  for (std::size_t k = 0; k < a.faces(); ++k)
    for (std::size_t i = 0; i < p; ++i) data[k * p * p + i * p + i] += sv[k];
  return DenseTensor3(a.dims(), std::move(data));
}

namespace {
void requireSlice(const DenseTensor3& x, const char* where) {
  if (x.cols() != 1) throw DimensionMismatch(Axis::cols, x.cols(), 1, where);
}
}  // namespace

Tube sliceInner(const LateralSlice& x, const LateralSlice& y) {
  requireSlice(x, "sliceInner");
  requireSlice(y, "sliceInner");
  requireSameDims(x.dims(), y.dims(), "sliceInner");
  const DenseTensor3 t = tProduct(conjTranspose(x), y);
  return t.tube(0, 0);
}

double sliceNorm(const LateralSlice& y) {
  requireSlice(y, "sliceNorm");
  const double f = y.frobNorm();
  if (f == 0.0) return 0.0;
  return tubeNorm(sliceInner(y, y)) / f;
}

std::pair<LateralSlice, Tube> sliceNormalize(const LateralSlice& y) {
  requireSlice(y, "sliceNormalize");
  FourierTensor fy = fft3(y);
  const std::size_t n = y.faces();
  std::vector<cplx> a(n);
  std::vector<cplx> gram(n);
  for (std::size_t k = 0; k < n; ++k) gram[k] = fy.face(k).squaredNorm();
  const double gate = singularityGate(gram);
  for (std::size_t k = 0; k < n; ++k) {
    const double g = gram[k].real();
    if (!(g > gate)) throw NearSingularTube(k, g, gate);
    a[k] = std::sqrt(g);
    fy.face(k) /= a[k];
  }
  Tube scale = Tube::fromFourier(std::move(a)).toSpatial();
  auto sv = std::vector<cplx>(scale.values().begin(), scale.values().end());
  snapReal(sv);
  return {ifft3(fy), Tube(std::move(sv))};
}

}  // namespace tubal
