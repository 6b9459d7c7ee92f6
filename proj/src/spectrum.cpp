#include "tubal/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "tubal/errors.hpp"
#include "tubal/facewise.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/tproduct.hpp"

namespace tubal {
namespace {

using ColMatrix = Eigen::MatrixXcd;

bool selfMirror(std::size_t k, std::size_t n) { return k == 0 || 2 * k == n; }

void orderEigenvalues(std::vector<cplx>& v) {
  std::stable_sort(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  std::size_t start = 0;
  while (start < v.size()) {
    const double m = std::abs(v[start]);
    std::size_t end = start + 1;
    while (end < v.size() && m - std::abs(v[end]) <= 1e-12 * m) ++end;
    std::stable_sort(v.begin() + start, v.begin() + end, [](cplx a, cplx b) {
      if (a.real() != b.real()) return a.real() > b.real();
      return a.imag() > b.imag();
    });
    start = end;
  }
}

std::vector<cplx> faceEigenvalues(const ConstFaceMap& face, bool realFace) {
  std::vector<cplx> out(face.rows());
  if (realFace) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(face.real(), false);
    for (Eigen::Index i = 0; i < face.rows(); ++i) out[i] = es.eigenvalues()(i);
  } else {
    Eigen::ComplexEigenSolver<ColMatrix> es(ColMatrix(face), false);
    for (Eigen::Index i = 0; i < face.rows(); ++i) out[i] = es.eigenvalues()(i);
  }
  return out;
}

double clusterTolerance(const std::vector<cplx>& values) {
  double rho = 0.0;
  for (auto v : values) rho = std::max(rho, std::abs(v));
  return 1e-6 * std::max(1.0, rho);
}

struct Cluster {
  std::size_t count = 0;
  cplx mean = 0.0;
};

Cluster clusterAround(const std::vector<cplx>& values, cplx gamma) {
  const double tol = clusterTolerance(values);
  Cluster c;
  for (auto v : values) {
    if (std::abs(v - gamma) <= tol) {
      ++c.count;
      c.mean += v;
    }
  }
  if (c.count) c.mean /= static_cast<double>(c.count);
  return c;
}

double spectralNorm(const ColMatrix& m) {
  Eigen::JacobiSVD<ColMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

std::size_t nullity(const ColMatrix& m, double gate) {
  Eigen::JacobiSVD<ColMatrix> svd(m);
  const auto& sv = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > gate) ++rank;
  return static_cast<std::size_t>(m.cols()) - rank;
}

Tube tubeFromFourier(std::vector<cplx> f, bool conjugateEven) {
  std::vector<cplx> s = Tube::fromFourier(std::move(f)).spatial();
  if (conjugateEven) snapReal(s);
  return Tube(std::move(s));
}

}  // namespace

DenseTensor3 EigentubeSpectrum::diagonal(std::size_t count) const {
  count = std::min(count, eigentubes.size());
  return DenseTensor3::diagonal(std::vector<Tube>(eigentubes.begin(), eigentubes.begin() + count));
}

EigentubeSpectrum spectrumOf(const DenseTensor3& a, SpectrumOptions options) {
  if (!a.isSquare()) throw DimensionMismatch(Axis::cols, a.cols(), a.rows(), "spectrumOf");
  const FourierTensor fa = fft3(a);
  const std::size_t p = a.rows(), n = a.faces();
  const bool ce = fa.conjugateEven();

  std::vector<std::vector<cplx>> perFace(n);
  forEachFace(fa.independentFaces(), defaultExecution(), [&](std::size_t k) {
    perFace[k] = faceEigenvalues(fa.face(k), ce && selfMirror(k, n));
    orderEigenvalues(perFace[k]);
  });
  for (std::size_t k = fa.independentFaces(); k < n; ++k) {
    perFace[k] = perFace[n - k];
    for (auto& v : perFace[k]) v = std::conj(v);
  }

  EigentubeSpectrum s;
  s.faceValues.assign(p, std::vector<cplx>(n));
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = 0; k < n; ++k) s.faceValues[j][k] = perFace[k][j];
  for (std::size_t j = 0; j < p; ++j) s.eigentubes.push_back(tubeFromFourier(s.faceValues[j], ce));

  if (options.multiplicities) {
    s.algebraicMultiplicity.assign(p, p);
    s.geometricMultiplicity.assign(p, p);
    s.index.assign(p, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const ColMatrix face = fa.face(k);
      const double gate = 1e-10 * std::max(1.0, spectralNorm(face));
      const ColMatrix id = ColMatrix::Identity(p, p);
      for (std::size_t j = 0; j < p; ++j) {
        const Cluster c = clusterAround(perFace[k], s.faceValues[j][k]);
        const ColMatrix shifted = face - c.mean * id;
        const std::size_t geo = nullity(shifted, gate);
        s.algebraicMultiplicity[j] = std::min(s.algebraicMultiplicity[j], c.count);
        s.geometricMultiplicity[j] = std::min(s.geometricMultiplicity[j], geo);
        // index: smallest q with nullity((A - g I)^q) == nullity((A - g I)^(q+1))
        const double shiftNorm = spectralNorm(shifted);
        ColMatrix power = shifted;
        std::size_t prev = geo, q = 1;
        while (q < p) {
          power = power * shifted;
          const std::size_t next = nullity(power, 1e-10 * std::pow(std::max(1.0, shiftNorm), q + 1.0));
          if (next == prev) break;
          prev = next;
          ++q;
        }
        s.index[j] = std::max(s.index[j], q);
      }
    }
  }
  return s;
}

std::vector<Tube> sortFacewise(const std::vector<Tube>& tubes) {
  if (tubes.empty()) return {};
  const std::size_t n = tubes[0].size();
  std::vector<std::vector<cplx>> f;
  bool real = true;
  for (const auto& t : tubes) {
    f.push_back(t.fourier());
    real = real && t.isReal();
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<cplx> col(tubes.size());
    for (std::size_t j = 0; j < tubes.size(); ++j) col[j] = f[j][k];
    orderEigenvalues(col);
    for (std::size_t j = 0; j < tubes.size(); ++j) f[j][k] = col[j];
  }
  std::vector<Tube> out;
  for (auto& v : f) out.push_back(tubeFromFourier(std::move(v), real));
  return out;
}

Tube charPolyEval(const DenseTensor3& a, const Tube& x) {
  return tDet(addScaledIdentity(a, -1.0 * x));
}

LateralSlice eigensliceFor(const DenseTensor3& a, const Tube& lambda) {
  if (!a.isSquare()) throw DimensionMismatch(Axis::cols, a.cols(), a.rows(), "eigensliceFor");
  if (lambda.size() != a.faces()) throw DimensionMismatch(Axis::faces, lambda.size(), a.faces(), "eigensliceFor");
  const FourierTensor fa = fft3(a);
  const std::size_t p = a.rows(), n = a.faces();
  const auto lf = lambda.fourier();
  double lscale = 0.0;
  for (auto v : lf) lscale = std::max(lscale, std::abs(v));
  const bool ce = a.isReal() && isConjugateEven(std::span<const cplx>(lf), 1e-12 * (1.0 + lscale));

  FourierTensor u({p, 1, n}, ce);
  const std::size_t faces = ce ? n / 2 + 1 : n;
  const ColMatrix id = ColMatrix::Identity(p, p);
  for (std::size_t k = 0; k < faces; ++k) {
    const ColMatrix face = fa.face(k);
    const bool realFace = ce && selfMirror(k, n);
    const cplx gamma = realFace ? cplx(lf[k].real(), 0.0) : lf[k];
    const double scale = std::max(1.0, spectralNorm(face));
    Eigen::JacobiSVD<ColMatrix> svd(face - gamma * id, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(p - 1) > 1e-8 * scale) throw NotAnEigentube(k, sv(p - 1));

    const auto values = faceEigenvalues(fa.face(k), realFace);
    const Cluster c = clusterAround(values, gamma);
    const std::size_t geo = nullity(face - c.mean * id, 1e-10 * scale);
    if (c.count > geo) throw DefectiveFace(k, c.count, geo);

    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-8 * scale) ++rank;
    rank = std::min(rank, p - 1);
    Vector v = svd.matrixV().col(rank);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    v *= std::abs(v(peak)) / v(peak);
    if (realFace) {
      v = v.real().cast<cplx>();
    }
    v.normalize();
    u.face(k) = v;
  }
  u.mirrorConjugates();
  return ifft3(u);
}

LateralSlice leftEigensliceFor(const DenseTensor3& a, const Tube& lambda) {
  return eigensliceFor(conjTranspose(a), lambda.adjoint());
}

}  // namespace tubal
