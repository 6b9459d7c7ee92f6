#pragma once

#include <cstddef>

#include "tubal/tensor.hpp"

namespace tubal {

// Reference constructions. These materialize (rows*n) x (cols*n) matrices and
// are meant for oracles and small inputs only.

inline constexpr std::size_t kMaxCirculantEntries = 1'000'000;

/// Block circulant matrix: block (r, c) is face (r - c) mod n.
Matrix bcirc(const DenseTensor3& a);
/// Block diagonal matrix of the faces.
Matrix bdiag(const FourierTensor& a);
/// Faces stacked vertically: (rows*n) x cols.
Matrix unfold(const DenseTensor3& a);
DenseTensor3 fold(const Matrix& m, std::size_t faces);

/// fold(bcirc(A) * unfold(B)); the definition of the t-product.
DenseTensor3 tProductReference(const DenseTensor3& a, const DenseTensor3& b);

/// F_n kron I_m with F_n(j,k) = exp(-2*pi*i*j*k/n).
Matrix dftKron(std::size_t n, std::size_t m);

}  // namespace tubal
