#include "tubal/tube.hpp"

#include <algorithm>
#include <cmath>

#include "tubal/dft.hpp"
#include "tubal/errors.hpp"

namespace tubal {
namespace {

void requireSameLength(const Tube& a, const Tube& b, const char* where) {
  if (a.size() != b.size()) throw DimensionMismatch(Axis::tube, a.size(), b.size(), where);
}

Tube fromFourierProduct(std::vector<cplx> fourier, bool realInputs) {
  dft::inverseTubes(fourier, fourier.size(), 1);
  if (realInputs) snapReal(fourier);
  return Tube(std::move(fourier));
}

}  // namespace

Tube::Tube(std::vector<cplx> values, Domain domain) : values_(std::move(values)), domain_(domain) {
  if (values_.empty()) throw Error("tube length must be at least 1");
}

Tube Tube::zero(std::size_t n) { return Tube(std::vector<cplx>(n)); }

Tube Tube::unit(std::size_t n) { return scalar(1.0, n); }

Tube Tube::scalar(cplx c, std::size_t n) {
  std::vector<cplx> v(n);
  v.at(0) = c;
  return Tube(std::move(v));
}

std::vector<cplx> Tube::spatial() const {
  if (domain_ == Domain::spatial) return values_;
  std::vector<cplx> v = values_;
  dft::inverseTubes(v, v.size(), 1);
  return v;
}

std::vector<cplx> Tube::fourier() const {
  if (domain_ == Domain::fourier) return values_;
  std::vector<cplx> v = values_;
  dft::forwardTubes(v, v.size(), 1);
  return v;
}

Tube Tube::toSpatial() const { return Tube(spatial(), Domain::spatial); }
Tube Tube::toFourier() const { return Tube(fourier(), Domain::fourier); }

bool Tube::isReal(double tol) const {
  const auto v = spatial();
  return std::all_of(v.begin(), v.end(), [tol](cplx z) { return std::abs(z.imag()) <= tol; });
}

Tube Tube::adjoint() const {
  // conj of every entry, then reverse entries 2..n
  std::vector<cplx> s = spatial();
  std::vector<cplx> out(s.size());
  out[0] = std::conj(s[0]);
  for (std::size_t k = 1; k < s.size(); ++k) out[k] = std::conj(s[s.size() - k]);
  return Tube(std::move(out));
}

Tube& Tube::operator+=(const Tube& rhs) {
  requireSameLength(*this, rhs, "tube addition");
  if (rhs.domain_ == domain_) {
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += rhs.values_[k];
  } else {
    const auto r = domain_ == Domain::spatial ? rhs.spatial() : rhs.fourier();
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += r[k];
  }
  return *this;
}

Tube& Tube::operator-=(const Tube& rhs) { return *this += (-1.0) * rhs; }

Tube& Tube::operator*=(cplx c) {
  for (auto& v : values_) v *= c;
  return *this;
}

bool operator==(const Tube& a, const Tube& b) { return a.spatial() == b.spatial(); }

Tube tubeFft(const Tube& t) { return t.toFourier(); }
Tube tubeIfft(const Tube& t) { return t.toSpatial(); }

Tube tubeMul(const Tube& a, const Tube& b) {
  requireSameLength(a, b, "tubeMul");
  auto fa = a.fourier();
  const auto fb = b.fourier();
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  return fromFourierProduct(std::move(fa), a.isReal() && b.isReal());
}

double singularityGate(std::span<const cplx> fourierValues) noexcept {
  double peak = 0.0;
  for (auto v : fourierValues) peak = std::max(peak, std::abs(v));
  return 1e-13 * std::max(1.0, peak);
}

Tube tubeDiv(const Tube& a, const Tube& b, double gate) {
  requireSameLength(a, b, "tubeDiv");
  auto fa = a.fourier();
  const auto fb = b.fourier();
  if (gate < 0.0) gate = singularityGate(fb);
  for (std::size_t k = 0; k < fb.size(); ++k) {
    const double mag = std::abs(fb[k]);
    if (!(mag > gate)) throw NearSingularTube(k, mag, gate);
    fa[k] /= fb[k];
  }
  return fromFourierProduct(std::move(fa), a.isReal() && b.isReal());
}

Tube tubePow(const Tube& a, unsigned k) {
  auto fa = a.fourier();
  for (auto& v : fa) v = std::pow(v, static_cast<double>(k));
  if (k == 0) std::fill(fa.begin(), fa.end(), cplx(1.0));
  return fromFourierProduct(std::move(fa), a.isReal());
}

double tubeNorm(const Tube& t) {
  double sum = 0.0;
  for (auto v : t.spatial()) sum += std::norm(v);
  return std::sqrt(sum);
}

bool isConjugateEven(std::span<const cplx> f, double tol) {
  const std::size_t n = f.size();
  if (n == 0) return true;
  if (std::abs(f[0].imag()) > tol) return false;
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs(f[j] - std::conj(f[n - j])) > tol) return false;
  }
  return true;
}

bool isConjugateEven(const Tube& t, double tol) {
  const auto f = t.fourier();
  return isConjugateEven(std::span<const cplx>(f), tol);
}

bool snapReal(std::span<cplx> values) {
  for (auto v : values) {
    if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real()))) return false;
  }
  for (auto& v : values) v = cplx(v.real(), 0.0);
  return true;
}

}  // namespace tubal
