#include "tubal/factorizations.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "tubal/errors.hpp"
#include "tubal/facewise.hpp"
#include "tubal/tproduct.hpp"

namespace tubal {
namespace {

using ColMatrix = Eigen::MatrixXcd;

void requireSquare(const DenseTensor3& a, const char* where) {
  if (!a.isSquare()) throw DimensionMismatch(Axis::cols, a.cols(), a.rows(), where);
}

// Faces that are their own mirror under conjugate symmetry hold real data.
bool selfMirror(std::size_t k, std::size_t n) { return k == 0 || 2 * k == n; }

}  // namespace

// QR

TQrResult tQr(const DenseTensor3& a, Execution exec) {
  const FourierTensor fa = fft3(a);
  const std::size_t l = a.rows(), p = a.cols();
  FourierTensor q({l, l, a.faces()}, fa.conjugateEven());
  FourierTensor r({l, p, a.faces()}, fa.conjugateEven());
  forEachFace(fa.independentFaces(), exec, [&](std::size_t k) {
    Eigen::HouseholderQR<ColMatrix> qr(ColMatrix(fa.face(k)));
    q.face(k) = qr.householderQ() * ColMatrix::Identity(l, l);
    r.face(k) = qr.matrixQR().triangularView<Eigen::Upper>();
  });
  q.mirrorConjugates();
  r.mirrorConjugates();
  return {ifft3(q), ifft3(r)};
}

FourierTensor thinQFaces(const FourierTensor& fa, Execution exec) {
  const std::size_t l = fa.rows(), p = fa.cols();
  if (l < p) throw DimensionMismatch(Axis::rows, l, p, "thin QR");
  FourierTensor q({l, p, fa.faces()}, fa.conjugateEven());
  forEachFace(fa.independentFaces(), exec, [&](std::size_t k) {
    Eigen::HouseholderQR<ColMatrix> qr(ColMatrix(fa.face(k)));
    q.face(k) = qr.householderQ() * ColMatrix::Identity(l, p);
  });
  q.mirrorConjugates();
  return q;
}

TQrThinResult tQrThin(const DenseTensor3& a, Execution exec) {
  const FourierTensor fa = fft3(a);
  const std::size_t l = a.rows(), p = a.cols();
  if (l < p) throw DimensionMismatch(Axis::rows, l, p, "tQrThin");
  FourierTensor q({l, p, a.faces()}, fa.conjugateEven());
  FourierTensor r({p, p, a.faces()}, fa.conjugateEven());
  forEachFace(fa.independentFaces(), exec, [&](std::size_t k) {
    Eigen::HouseholderQR<ColMatrix> qr(ColMatrix(fa.face(k)));
    q.face(k) = qr.householderQ() * ColMatrix::Identity(l, p);
    r.face(k) = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  });
  q.mirrorConjugates();
  r.mirrorConjugates();
  return {ifft3(q), ifft3(r)};
}

// LU

TLuResult::TLuResult(FourierTensor lu, std::vector<std::vector<std::size_t>> permutations)
    : lu_(std::move(lu)), permutations_(std::move(permutations)) {}

DenseTensor3 TLuResult::lower() const {
  FourierTensor l(lu_.dims(), lu_.conjugateEven());
  for (std::size_t k = 0; k < lu_.faces(); ++k) {
    Matrix m = lu_.face(k).triangularView<Eigen::StrictlyLower>();
    m.diagonal().setOnes();
    l.face(k) = m;
  }
  return ifft3(l);
}

DenseTensor3 TLuResult::upper() const {
  FourierTensor u(lu_.dims(), lu_.conjugateEven());
  for (std::size_t k = 0; k < lu_.faces(); ++k) u.face(k) = lu_.face(k).triangularView<Eigen::Upper>();
  return ifft3(u);
}

DenseTensor3 TLuResult::permutationTensor() const {
  FourierTensor pt(lu_.dims(), lu_.conjugateEven());
  for (std::size_t k = 0; k < lu_.faces(); ++k) {
    auto f = pt.face(k);
    f.setZero();
    for (std::size_t i = 0; i < permutations_[k].size(); ++i) f(i, permutations_[k][i]) = 1.0;
  }
  return ifft3(pt);
}

FourierTensor TLuResult::solveFourier(const FourierTensor& b) const {
  if (b.rows() != lu_.rows()) throw DimensionMismatch(Axis::rows, b.rows(), lu_.rows(), "lu solve");
  if (b.faces() != lu_.faces()) throw DimensionMismatch(Axis::faces, b.faces(), lu_.faces(), "lu solve");
  FourierTensor x(b.dims(), b.conjugateEven() && lu_.conjugateEven());
  const std::size_t p = lu_.rows();
  forEachFace(x.independentFaces(), defaultExecution(), [&](std::size_t k) {
    Matrix rhs(p, b.cols());
    for (std::size_t i = 0; i < p; ++i) rhs.row(i) = b.face(k).row(permutations_[k][i]);
    const auto f = lu_.face(k);
    f.triangularView<Eigen::UnitLower>().solveInPlace(rhs);
    f.triangularView<Eigen::Upper>().solveInPlace(rhs);
    x.face(k) = rhs;
  });
  x.mirrorConjugates();
  return x;
}

DenseTensor3 TLuResult::solve(const DenseTensor3& b) const { return ifft3(solveFourier(fft3(b))); }

TLuResult tLu(const DenseTensor3& a, Execution exec) {
  requireSquare(a, "tLu");
  const FourierTensor fa = fft3(a);
  const std::size_t p = a.rows(), n = a.faces();
  FourierTensor lu(a.dims(), fa.conjugateEven());
  std::vector<std::vector<std::size_t>> perms(n, std::vector<std::size_t>(p));
  forEachFace(fa.independentFaces(), exec, [&](std::size_t k) {
    const ColMatrix face = fa.face(k);
    Eigen::PartialPivLU<ColMatrix> dec(face);
    const double scale = face.norm();
    const auto diag = dec.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      if (!(std::abs(diag(i)) > 1e-13 * scale)) throw SingularFace(k, std::abs(diag(i)));
    }
    lu.face(k) = dec.matrixLU();
    // P*A = L*U with row i of P*A equal to row perms[k][i] of A.
    const auto& ind = dec.permutationP().indices();
    for (Eigen::Index src = 0; src < ind.size(); ++src) perms[k][ind(src)] = static_cast<std::size_t>(src);
  });
  for (std::size_t k = fa.independentFaces(); k < n; ++k) perms[k] = perms[n - k];
  lu.mirrorConjugates();
  return TLuResult(std::move(lu), std::move(perms));
}

// Hessenberg

THessResult tHess(const DenseTensor3& a, Execution exec) {
  requireSquare(a, "tHess");
  const FourierTensor fa = fft3(a);
  FourierTensor w(a.dims(), fa.conjugateEven());
  FourierTensor h(a.dims(), fa.conjugateEven());
  forEachFace(fa.independentFaces(), exec, [&](std::size_t k) {
    Eigen::HessenbergDecomposition<ColMatrix> hd(ColMatrix(fa.face(k)));
    ColMatrix hm = hd.matrixH();
    for (Eigen::Index j = 0; j < hm.cols(); ++j)
      for (Eigen::Index i = j + 2; i < hm.rows(); ++i) hm(i, j) = 0.0;
    w.face(k) = ColMatrix(hd.matrixQ());
    h.face(k) = hm;
  });
  w.mirrorConjugates();
  h.mirrorConjugates();
  return {ifft3(w), ifft3(h)};
}

// SVD

TSvdResult tSvd(const DenseTensor3& a, Execution exec) {
  const FourierTensor fa = fft3(a);
  const std::size_t l = a.rows(), p = a.cols(), n = a.faces(), m = std::min(l, p);
  FourierTensor u({l, l, n}, fa.conjugateEven());
  FourierTensor s({l, p, n}, fa.conjugateEven());
  FourierTensor v({p, p, n}, fa.conjugateEven());
  forEachFace(fa.independentFaces(), exec, [&](std::size_t k) {
    Eigen::JacobiSVD<ColMatrix> svd(ColMatrix(fa.face(k)), Eigen::ComputeFullU | Eigen::ComputeFullV);
    u.face(k) = svd.matrixU();
    v.face(k) = svd.matrixV();
    auto sf = s.face(k);
    sf.setZero();
    for (std::size_t i = 0; i < m; ++i) sf(i, i) = svd.singularValues()(i);
  });
  u.mirrorConjugates();
  s.mirrorConjugates();
  v.mirrorConjugates();
  TSvdResult out{ifft3(u), ifft3(s), ifft3(v), {}, {}};
  for (std::size_t i = 0; i < m; ++i) {
    out.singularTubes.push_back(out.s.tube(i, i));
    out.singularValues.push_back(tubeNorm(out.singularTubes.back()));
  }
  return out;
}

// Real Schur

TSchurResult realTSchur(const DenseTensor3& a, Execution exec) {
  requireSquare(a, "realTSchur");
  if (!a.isReal()) throw Error("realTSchur requires a real tensor");
  const FourierTensor fa = fft3(a);
  const std::size_t n = a.faces();
  FourierTensor q(a.dims(), true);
  FourierTensor r(a.dims(), true);
  forEachFace(fa.independentFaces(), exec, [&](std::size_t k) {
    if (selfMirror(k, n)) {
      const Eigen::MatrixXd face = fa.face(k).real();
      Eigen::RealSchur<Eigen::MatrixXd> rs(face);
      q.face(k) = rs.matrixU().transpose().cast<cplx>();
      r.face(k) = rs.matrixT().cast<cplx>();
    } else {
      Eigen::ComplexSchur<ColMatrix> cs(ColMatrix(fa.face(k)));
      q.face(k) = cs.matrixU().adjoint();
      r.face(k) = cs.matrixT();
    }
  });
  q.mirrorConjugates();
  r.mirrorConjugates();
  return {ifft3(q), ifft3(r)};
}

// Determinant, null space, range

Tube tDet(const DenseTensor3& a) {
  requireSquare(a, "tDet");
  const FourierTensor fa = fft3(a);
  std::vector<cplx> d(a.faces());
  for (std::size_t k = 0; k < fa.independentFaces(); ++k) d[k] = ColMatrix(fa.face(k)).determinant();
  for (std::size_t k = fa.independentFaces(); k < a.faces(); ++k) d[k] = std::conj(d[a.faces() - k]);
  std::vector<cplx> sp = Tube::fromFourier(std::move(d)).spatial();
  if (fa.conjugateEven()) snapReal(sp);
  return Tube(std::move(sp));
}

std::vector<LateralSlice> tNullBasis(const DenseTensor3& a) {
  const FourierTensor fa = fft3(a);
  const std::size_t p = a.cols(), n = a.faces();
  std::vector<ColMatrix> vs(n);
  std::vector<std::size_t> nullity(n);
  for (std::size_t k = 0; k < fa.independentFaces(); ++k) {
    Eigen::JacobiSVD<ColMatrix> svd(ColMatrix(fa.face(k)), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10 * smax) ++rank;
    nullity[k] = p - rank;
    vs[k] = svd.matrixV();
  }
  for (std::size_t k = fa.independentFaces(); k < n; ++k) {
    nullity[k] = nullity[n - k];
    vs[k] = vs[n - k].conjugate();
  }
  const std::size_t r = *std::min_element(nullity.begin(), nullity.end());
  std::vector<LateralSlice> basis;
  for (std::size_t j = 0; j < r; ++j) {
    FourierTensor x({p, 1, n}, fa.conjugateEven());
    for (std::size_t k = 0; k < n; ++k) x.face(k) = vs[k].col(p - 1 - j);
    basis.push_back(ifft3(x));
  }
  return basis;
}

bool inRange(const DenseTensor3& a, const LateralSlice& x, double tol) {
  if (x.rows() != a.rows()) throw DimensionMismatch(Axis::rows, x.rows(), a.rows(), "inRange");
  if (x.faces() != a.faces()) throw DimensionMismatch(Axis::faces, x.faces(), a.faces(), "inRange");
  const FourierTensor fa = fft3(a);
  const FourierTensor fx = fft3(x);
  for (std::size_t k = 0; k < a.faces(); ++k) {
    Eigen::JacobiSVD<ColMatrix> svd(ColMatrix(fa.face(k)), Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10 * smax) ++rank;
    const ColMatrix basis = svd.matrixU().leftCols(rank);
    const ColMatrix xk = fx.face(k);
    const ColMatrix resid = xk - basis * (basis.adjoint() * xk);
    if (resid.norm() > tol * std::max(1.0, xk.norm())) return false;
  }
  return true;
}

double belowDiagonalNorm(const FourierTensor& a, std::ptrdiff_t offset) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.faces(); ++k) {
    const auto f = a.face(k);
    for (Eigen::Index i = 0; i < f.rows(); ++i)
      for (Eigen::Index j = 0; j < f.cols(); ++j)
        if (i - j > offset) sum += std::norm(f(i, j));
  }
  return std::sqrt(sum / static_cast<double>(a.faces()));
}

}  // namespace tubal
