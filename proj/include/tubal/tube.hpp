#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tubal/types.hpp"

namespace tubal {

/// An element of the tube ring: a length-n complex fiber multiplied by
/// circular convolution. Values are held in one domain and converted on demand;
/// equality always compares spatial values.
class Tube {
 public:
  Tube() = default;
  explicit Tube(std::vector<cplx> values, Domain domain = Domain::spatial);

  static Tube zero(std::size_t n);
  /// The multiplicative identity e = (1, 0, ..., 0).
  static Tube unit(std::size_t n);
  /// c * e.
  static Tube scalar(cplx c, std::size_t n);
  static Tube fromFourier(std::vector<cplx> values) { return Tube(std::move(values), Domain::fourier); }

  std::size_t size() const noexcept { return values_.size(); }
  Domain domain() const noexcept { return domain_; }
  std::span<const cplx> values() const noexcept { return values_; }

  std::vector<cplx> spatial() const;
  std::vector<cplx> fourier() const;
  Tube toSpatial() const;
  Tube toFourier() const;

  /// True when every spatial entry has |imag| <= tol.
  bool isReal(double tol = 0.0) const;

  /// Conjugate transpose of the 1x1xn tensor; conjugates every Fourier entry.
  Tube adjoint() const;

  Tube& operator+=(const Tube& rhs);
  Tube& operator-=(const Tube& rhs);
  Tube& operator*=(cplx c);
  friend Tube operator+(Tube a, const Tube& b) { return a += b; }
  friend Tube operator-(Tube a, const Tube& b) { return a -= b; }
  friend Tube operator-(Tube a) { return a *= -1.0; }
  friend Tube operator*(Tube a, cplx c) { return a *= c; }
  friend Tube operator*(cplx c, Tube a) { return a *= c; }
  friend bool operator==(const Tube& a, const Tube& b);

 private:
  std::vector<cplx> values_;
  Domain domain_ = Domain::spatial;
};

Tube tubeFft(const Tube& t);
Tube tubeIfft(const Tube& t);

Tube tubeMul(const Tube& a, const Tube& b);

/// Default division gate: 1e-13 * max(1, max_i |b_hat_i|).
double singularityGate(std::span<const cplx> fourierValues) noexcept;

/// Entry-wise Fourier quotient. Throws NearSingularTube when some Fourier
/// entry of b has magnitude at or below `gate` (default: singularityGate).
Tube tubeDiv(const Tube& a, const Tube& b, double gate = -1.0);

/// a^k through the Fourier domain; k >= 0.
Tube tubePow(const Tube& a, unsigned k);

/// Frobenius norm of the spatial values.
double tubeNorm(const Tube& t);

/// Checks the DFT symmetry of real signals: imag(v_1) ~ 0 and
/// v_j = conj(v_{n-j+2}) within tol. Accepts either domain; a spatial tube is
/// transformed first.
bool isConjugateEven(const Tube& t, double tol);
bool isConjugateEven(std::span<const cplx> fourierValues, double tol);

/// Zeroes imaginary parts that are at rounding level relative to the real
/// parts: |imag| <= 1e-12 * (1 + |real|) for every entry.
bool snapReal(std::span<cplx> spatialValues);

}  // namespace tubal
