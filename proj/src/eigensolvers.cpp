#include "tubal/eigensolvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>

#include "tubal/errors.hpp"
#include "tubal/facewise.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/spectrum.hpp"
#include "tubal/tproduct.hpp"

namespace tubal {
namespace {

using ColMatrix = Eigen::MatrixXcd;

void requireSquare(const DenseTensor3& a, const char* where) {
  if (!a.isSquare()) throw DimensionMismatch(Axis::cols, a.cols(), a.rows(), where);
}

// Spatial Frobenius norm of a Fourier-domain vector of values, by Parseval.
double parseval(double sumSquares, std::size_t n) { return std::sqrt(sumSquares / static_cast<double>(n)); }

Tube tubeFromFourier(std::vector<cplx> f, bool real) {
  std::vector<cplx> s = Tube::fromFourier(std::move(f)).spatial();
  if (real) {
    for (auto& v : s) v = v.real();
  }
  return Tube(std::move(s));
}

// The power iterations carry their slice in extended precision. A subdominant
// eigenvalue close to -1 times the dominant one turns double rounding of the
// iterate into a period-two wobble far above a 1e-15 stopping test; with a
// wider format the wobble sits below it and the rounded iterates settle.
using Wide = long double;
using WideCplx = std::complex<Wide>;
using WideVector = Eigen::Matrix<WideCplx, Eigen::Dynamic, 1>;
using WideMatrix = Eigen::Matrix<WideCplx, Eigen::Dynamic, Eigen::Dynamic>;

struct WideSlice {
  std::vector<WideVector> faces;
  bool conjugateEven = false;

  std::size_t independent() const { return conjugateEven ? faces.size() / 2 + 1 : faces.size(); }
  void mirror() {
    const std::size_t n = faces.size();
    if (!conjugateEven) return;
    for (std::size_t k = independent(); k < n; ++k) faces[k] = faces[n - k].conjugate();
  }
};

WideSlice widen(const FourierTensor& f) {
  WideSlice s;
  s.conjugateEven = f.conjugateEven();
  for (std::size_t k = 0; k < f.faces(); ++k) s.faces.push_back(Vector(f.face(k).col(0)).cast<WideCplx>());
  return s;
}

FourierTensor narrow(const WideSlice& s) {
  const std::size_t p = static_cast<std::size_t>(s.faces.front().size()), n = s.faces.size();
  FourierTensor f({p, 1, n}, s.conjugateEven);
  for (std::size_t k = 0; k < n; ++k) f.face(k).col(0) = s.faces[k].cast<cplx>();
  return f;
}

Wide wideDistance(const WideSlice& a, const WideSlice& b) {
  Wide s = 0;
  for (std::size_t k = 0; k < a.faces.size(); ++k) s += (a.faces[k] - b.faces[k]).squaredNorm();
  return std::sqrt(s / static_cast<Wide>(a.faces.size()));
}

struct PowerRun {
  FourierTensor v;
  std::vector<cplx> alpha;
  std::size_t iterations = 0;
  std::vector<double> trace;
};

// Iterates V <- W / t-max(W) with W = apply(V) until both V and alpha stall.
template <class Apply>
PowerRun powerLoop(Apply&& apply, WideSlice v, const SolverConfig& cfg) {
  PowerRun run;
  const std::size_t n = v.faces.size(), p = static_cast<std::size_t>(v.faces.front().size());
  std::vector<WideCplx> alphaPrev;
  std::size_t prevRow = 0;
  for (std::size_t it = 1; it <= cfg.iterMax; ++it) {
    WideSlice w = apply(v);
    // t-max row, kept from the previous iteration unless its tube has become
    // a thousand times smaller than the largest. A fresh argmax every step can
    // settle into a cycle between rows whose tube ratio has spatial norm above
    // one both ways; with the row fixed each face is a plain power iteration.
    std::vector<Wide> rowNorm(p, 0);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t k = 0; k < n; ++k) rowNorm[i] += std::norm(w.faces[k](i));
    std::size_t row = static_cast<std::size_t>(std::max_element(rowNorm.begin(), rowNorm.end()) - rowNorm.begin());
    if (it > 1 && rowNorm[prevRow] >= 1e-6L * rowNorm[row]) row = prevRow;
    prevRow = row;
    std::vector<WideCplx> alpha(n);
    std::vector<cplx> alphaD(n);
    for (std::size_t k = 0; k < n; ++k) {
      alpha[k] = w.faces[k](row);
      alphaD[k] = cplx(alpha[k]);
    }
    const double gate = singularityGate(alphaD);
    for (std::size_t k = 0; k < n; ++k)
      if (!(std::abs(alphaD[k]) > gate)) throw DivisionFailure(it, k);
    for (std::size_t k = 0; k < w.independent(); ++k) w.faces[k] /= alpha[k];
    w.mirror();
    if (w.conjugateEven)
      for (std::size_t k = w.independent(); k < n; ++k) alpha[k] = std::conj(alpha[n - k]);

    const double dv = static_cast<double>(wideDistance(w, v));
    double da = std::numeric_limits<double>::infinity();
    if (!alphaPrev.empty()) {
      Wide s = 0;
      for (std::size_t k = 0; k < n; ++k) s += std::norm(alpha[k] - alphaPrev[k]);
      da = static_cast<double>(std::sqrt(s / static_cast<Wide>(n)));
    }
    run.trace.push_back(std::max(dv, da));
    v = std::move(w);
    alphaPrev = alpha;
    if (dv <= cfg.tol && da <= cfg.tol) {
      run.v = narrow(v);
      for (auto a : alpha) run.alpha.push_back(cplx(a));
      run.iterations = it;
      return run;
    }
  }
  const double last = run.trace.empty() ? 0.0 : run.trace.back();
  throw NoConvergence(cfg.iterMax, last, std::move(run.trace));
}

template <class Apply>
PowerRun powerWithRestarts(Apply&& apply, const LateralSlice& v0, bool realStart, const SolverConfig& cfg) {
  LateralSlice start = v0;
  for (unsigned attempt = 0;; ++attempt) {
    try {
      return powerLoop(apply, widen(fft3(start)), cfg);
    } catch (const DivisionFailure&) {
      if (attempt == 3) throw;
      std::mt19937_64 rng(cfg.rngSeed + 7919ULL * (attempt + 1));
      start = randomSlices(v0.rows(), 1, v0.faces(), realStart && v0.isReal(), rng);
    }
  }
}

// W = A_hat * V facewise in extended precision.
auto wideProduct(const FourierTensor& fa) {
  std::vector<WideMatrix> faces;
  for (std::size_t k = 0; k < fa.faces(); ++k) faces.push_back(ColMatrix(fa.face(k)).cast<WideCplx>());
  const bool ce = fa.conjugateEven();
  return [faces = std::move(faces), ce](const WideSlice& v) {
    WideSlice w;
    w.conjugateEven = ce && v.conjugateEven;
    w.faces.resize(v.faces.size());
    for (std::size_t k = 0; k < w.independent(); ++k) w.faces[k] = faces[k] * v.faces[k];
    w.mirror();
    return w;
  };
}

LateralSliceSet hcat(const std::vector<LateralSlice>& slices) {
  const std::size_t p = slices.front().rows(), n = slices.front().faces(), m = slices.size();
  return DenseTensor3::generate({p, m, n}, [&](std::size_t i, std::size_t j, std::size_t k) { return slices[j](i, 0, k); });
}

// Eigenslices of F from an orthonormal basis Q of an invariant subspace whose
// projected tensor Q^H F Q is upper triangular with diagonal `lambdas`.
std::vector<LateralSlice> eigenslicesFromBasis(const FourierTensor& ff, const FourierTensor& q,
                                               const std::vector<std::vector<cplx>>& lambdas) {
  const std::size_t p = q.rows(), m = q.cols(), n = q.faces();
  const FourierTensor proj = multiplyFaces(adjointFaces(q), multiplyFaces(ff, q));
  std::vector<FourierTensor> out(m, FourierTensor({p, 1, n}, q.conjugateEven()));
  for (std::size_t k = 0; k < q.independentFaces(); ++k) {
    const ColMatrix mk = proj.face(k);
    for (std::size_t i = 0; i < m; ++i) {
      const cplx lam = lambdas[i][k];
      Vector z = Vector::Zero(m);
      z(i) = 1.0;
      for (std::size_t jj = i; jj-- > 0;) {
        cplx s = 0.0;
        for (std::size_t l = jj + 1; l <= i; ++l) s += mk(jj, l) * z(l);
        const cplx d = mk(jj, jj) - lam;
        const double gate = 1e-13 * std::max(1.0, std::abs(lam));
        if (!(std::abs(d) > gate)) throw NearSingularTube(k, std::abs(d), gate);
        z(jj) = -s / d;
      }
      Vector u = ColMatrix(q.face(k)) * z;
      u.normalize();
      out[i].face(k) = u;
    }
  }
  std::vector<LateralSlice> slices;
  for (auto& f : out) {
    f.mirrorConjugates();
    slices.push_back(ifft3(f));
  }
  return slices;
}

bool leadingRealSpectrum(const DenseTensor3& a, std::size_t m) {
  if (!a.isReal()) return false;
  const auto s = spectrumOf(a);
  for (std::size_t j = 0; j < std::min(m, s.size()); ++j)
    if (!s.eigentubes[j].isReal()) return false;
  return true;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (iterMax == 0) throw std::invalid_argument("iterMax must be at least 1");
  if (powerIndex == 0) throw std::invalid_argument("power index must be at least 1");
}

std::vector<Tube> SchurResult::diagonalTubes() const {
  std::vector<Tube> out;
  for (std::size_t j = 0; j < std::min(r.rows(), r.cols()); ++j) out.push_back(r.tube(j, j));
  return out;
}

std::size_t tMaxIndex(const LateralSlice& x) {
  if (x.cols() != 1) throw DimensionMismatch(Axis::cols, x.cols(), 1, "tMax");
  std::size_t best = 0;
  double bestNorm = -1.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.faces(); ++k) s += std::norm(x(i, 0, k));
    if (s > bestNorm) {
      bestNorm = s;
      best = i;
    }
  }
  if (bestNorm == 0.0) throw ZeroSlice();
  return best;
}

Tube tMax(const LateralSlice& x) { return x.tube(tMaxIndex(x), 0); }

DenseTensor3 randomSlices(std::size_t rows, std::size_t cols, std::size_t faces, bool real, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> data(rows * cols * faces);
  for (auto& v : data) {
    const double re = normal(rng);
    v = real ? cplx(re, 0.0) : cplx(re, normal(rng));
  }
  return DenseTensor3({rows, cols, faces}, std::move(data));
}

bool wantsRealStart(const DenseTensor3& a, std::size_t eigentube) {
  if (!a.isReal()) return false;
  const auto s = spectrumOf(a);
  return eigentube < s.size() && s.eigentubes[eigentube].isReal();
}

EigenPair tPower(const DenseTensor3& a, const LateralSlice& v0, const SolverConfig& cfg) {
  cfg.validate();
  requireSquare(a, "tPower");
  if (v0.rows() != a.rows()) throw DimensionMismatch(Axis::rows, v0.rows(), a.rows(), "tPower");
  if (v0.faces() != a.faces()) throw DimensionMismatch(Axis::faces, v0.faces(), a.faces(), "tPower");
  if (v0.frobNorm() == 0.0) throw ZeroSlice();
  const FourierTensor fa = fft3(a);
  PowerRun run = powerWithRestarts(wideProduct(fa), v0, v0.isReal(), cfg);
  EigenPair pair;
  pair.eigentube = tubeFromFourier(run.alpha, run.v.conjugateEven());
  pair.eigenslice = ifft3(run.v);
  pair.iterations = run.iterations;
  pair.converged = true;
  pair.trace = std::move(run.trace);
  pair.residualNorm = pairResidual(a, pair.eigenslice, pair.eigentube);
  return pair;
}

EigenPair tPower(const DenseTensor3& a, const SolverConfig& cfg) {
  std::mt19937_64 rng(cfg.rngSeed);
  return tPower(a, randomSlices(a.rows(), 1, a.faces(), wantsRealStart(a), rng), cfg);
}

EigenPair tInversePower(const DenseTensor3& a, const LateralSlice& v0, const SolverConfig& cfg) {
  cfg.validate();
  requireSquare(a, "tInversePower");
  if (v0.frobNorm() == 0.0) throw ZeroSlice();
  const Tube sigma = cfg.shift ? *cfg.shift : Tube::zero(a.faces());
  if (sigma.size() != a.faces()) throw DimensionMismatch(Axis::tube, sigma.size(), a.faces(), "tInversePower");
  // The shifted tensor is factored once, per face in extended precision so the
  // iterate keeps the power loop's precision. Pivot gate as in tLu.
  const FourierTensor fs = fft3(addScaledIdentity(a, -1.0 * sigma));
  std::vector<Eigen::PartialPivLU<WideMatrix>> faceLu(fs.independentFaces());
  forEachFace(faceLu.size(), defaultExecution(), [&](std::size_t k) {
    const ColMatrix face = fs.face(k);
    faceLu[k].compute(face.cast<WideCplx>());
    const auto diag = faceLu[k].matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i)
      if (!(std::abs(diag(i)) > 1e-13L * face.norm())) throw SingularShift(k);
  });
  auto solve = [&](const WideSlice& v) {
    WideSlice w;
    w.conjugateEven = fs.conjugateEven() && v.conjugateEven;
    w.faces.resize(v.faces.size());
    for (std::size_t k = 0; k < w.independent(); ++k) w.faces[k] = faceLu[k].solve(v.faces[k]);
    w.mirror();
    return w;
  };
  PowerRun run = powerWithRestarts(solve, v0, v0.isReal(), cfg);
  const auto sf = sigma.fourier();
  std::vector<cplx> lambda(a.faces());
  for (std::size_t k = 0; k < a.faces(); ++k) {
    lambda[k] = cfg.inverseRecovery == InverseRecovery::standard ? 1.0 / run.alpha[k] + sf[k]
                                                                 : 1.0 / (run.alpha[k] + sf[k]);
  }
  EigenPair pair;
  pair.eigentube = tubeFromFourier(lambda, run.v.conjugateEven() && sigma.isReal());
  pair.eigenslice = ifft3(run.v);
  pair.iterations = run.iterations;
  pair.converged = true;
  pair.trace = std::move(run.trace);
  pair.residualNorm = pairResidual(a, pair.eigenslice, pair.eigentube);
  return pair;
}

EigenPair tInversePower(const DenseTensor3& a, const SolverConfig& cfg) {
  std::mt19937_64 rng(cfg.rngSeed);
  const bool real = a.isReal() && (!cfg.shift || cfg.shift->isReal());
  return tInversePower(a, randomSlices(a.rows(), 1, a.faces(), real, rng), cfg);
}

DenseTensor3 deflate(const DenseTensor3& a, const Tube& lambda1, const LateralSlice& u1, const LateralSlice& v,
                     const Tube& sigma) {
  requireSquare(a, "deflate");
  const Tube pairing = sliceInner(v, u1);
  const double deviation = tubeNorm(pairing - Tube::unit(a.faces()));
  if (deviation > 1e-8) throw BadPairing(deviation);

  const auto spec = spectrumOf(a);
  const auto l1 = lambda1.fourier();
  const auto sf = sigma.fourier();
  for (std::size_t k = 0; k < a.faces(); ++k) {
    std::vector<cplx> values;
    double rho = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      values.push_back(spec.faceValues[j][k]);
      rho = std::max(rho, std::abs(values.back()));
    }
    // drop the value lambda1 itself occupies
    auto nearest = std::min_element(values.begin(), values.end(),
                                    [&](cplx x, cplx y) { return std::abs(x - l1[k]) < std::abs(y - l1[k]); });
    const std::size_t skip = static_cast<std::size_t>(nearest - values.begin());
    const cplx moved = l1[k] - sf[k];
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j == skip) continue;
      if (std::abs(values[j] - moved) <= 1e-10 * std::max(1.0, rho)) throw ShiftCollision(j, k);
    }
  }
  return a - tensorTubeMul(tProduct(u1, conjTranspose(v)), sigma);
}

DeflationResult deflatedPowerSweep(const DenseTensor3& a, std::size_t k, const SolverConfig& cfg) {
  cfg.validate();
  requireSquare(a, "deflatedPowerSweep");
  if (k == 0 || k > a.rows()) throw DimensionMismatch(Axis::cols, k, a.rows(), "deflatedPowerSweep");
  DeflationResult out;
  DenseTensor3 current = a;
  std::vector<LateralSlice> stageSlices;
  std::vector<LateralSlice> schur;
  for (std::size_t i = 0; i < k; ++i) {
    SolverConfig stageCfg = cfg;
    stageCfg.rngSeed = cfg.rngSeed + i;
    EigenPair stage = tPower(current, stageCfg);
    out.iterations += stage.iterations;
    const LateralSlice& y = stage.eigenslice;
    const Tube& lambda = stage.eigentube;
    stageSlices.push_back(y);

    LateralSlice left = y, right = y;
    switch (cfg.deflationVariant) {
      case DeflationVariant::DE:
        right = tensorTubeDiv(y, sliceInner(y, y));
        break;
      case DeflationVariant::DLE: {
        SolverConfig leftCfg = stageCfg;
        leftCfg.rngSeed = cfg.rngSeed + 1000 + i;
        const EigenPair leftPair = tPower(conjTranspose(current), leftCfg);
        out.iterations += leftPair.iterations;
        right = tensorTubeDiv(leftPair.eigenslice, sliceInner(y, leftPair.eigenslice));
        break;
      }
      case DeflationVariant::DS: {
        LateralSlice g = y;
        for (const auto& qj : schur) g = g - tensorTubeMul(qj, sliceInner(qj, g));
        left = sliceNormalize(g).first;
        right = left;
        schur.push_back(left);
        break;
      }
    }
    if (i + 1 < k) current = current - tensorTubeMul(tProduct(left, conjTranspose(right)), lambda);
    out.stages.push_back(std::move(stage));
  }

  // The stage slices span the invariant subspace of the k leading eigentubes of A.
  const FourierTensor ff = fft3(a);
  const FourierTensor q = thinQFaces(fft3(hcat(stageSlices)));
  std::vector<std::vector<cplx>> lambdas;
  std::vector<Tube> tubes;
  for (const auto& s : out.stages) {
    lambdas.push_back(s.eigentube.fourier());
    tubes.push_back(s.eigentube);
  }
  const auto slices = eigenslicesFromBasis(ff, q, lambdas);
  for (std::size_t i = 0; i < k; ++i) {
    EigenPair p;
    p.eigentube = tubes[i];
    p.eigenslice = slices[i];
    p.iterations = out.stages[i].iterations;
    p.converged = true;
    p.residualNorm = pairResidual(a, p.eigenslice, p.eigentube);
    out.pairs.push_back(std::move(p));
  }
  out.u = hcat(slices);
  out.d = DenseTensor3::diagonal(tubes);
  return out;
}

SchurResult tSubspaceIteration(const DenseTensor3& a, const LateralSliceSet& x0, const SolverConfig& cfg) {
  cfg.validate();
  requireSquare(a, "tSubspaceIteration");
  if (x0.rows() != a.rows()) throw DimensionMismatch(Axis::rows, x0.rows(), a.rows(), "tSubspaceIteration");
  if (x0.faces() != a.faces()) throw DimensionMismatch(Axis::faces, x0.faces(), a.faces(), "tSubspaceIteration");
  // Same extended-precision iterate as the power loops: in double, R = Q^H A Q
  // carries rounding noise near eps * ||A||_F, above an absolute 1e-15 test.
  const FourierTensor fa = fft3(a);
  const FourierTensor fx = fft3(x0);
  const bool ce = fa.conjugateEven() && fx.conjugateEven();
  const std::size_t n = a.faces(), p = a.rows(), m = x0.cols();
  const std::size_t faces = ce ? n / 2 + 1 : n;
  std::vector<WideMatrix> fw(faces), xw(faces), rw(faces), rPrev(faces);
  for (std::size_t k = 0; k < faces; ++k) {
    fw[k] = ColMatrix(fa.face(k)).cast<WideCplx>();
    xw[k] = ColMatrix(fx.face(k)).cast<WideCplx>();
  }
  SchurResult res;
  for (std::size_t it = 1; it <= cfg.iterMax; ++it) {
    forEachFace(faces, defaultExecution(), [&](std::size_t k) {
      for (unsigned j = 0; j < cfg.powerIndex; ++j) xw[k] = fw[k] * xw[k];
      Eigen::HouseholderQR<WideMatrix> qr(xw[k]);
      xw[k] = qr.householderQ() * WideMatrix::Identity(p, m);
      rw[k] = xw[k].adjoint() * fw[k] * xw[k];
    });
    if (it > 1) {
      // Mirrored faces contribute the same amount as their partners.
      Wide sum = 0;
      for (std::size_t k = 0; k < faces; ++k) {
        Wide s = 0;
        for (Eigen::Index i = 0; i < rw[k].rows(); ++i)
          for (Eigen::Index j = 0; j <= i; ++j) s += std::norm(rw[k](i, j) - rPrev[k](i, j));
        sum += (ce && k != 0 && 2 * k != n) ? 2 * s : s;
      }
      const double err = static_cast<double>(std::sqrt(sum / static_cast<Wide>(n)));
      res.trace.push_back(err);
      if (err <= cfg.tol) {
        FourierTensor q({p, m, n}, ce), r({m, m, n}, ce);
        for (std::size_t k = 0; k < faces; ++k) {
          q.face(k) = xw[k].cast<cplx>();
          r.face(k) = rw[k].cast<cplx>();
        }
        q.mirrorConjugates();
        r.mirrorConjugates();
        res.u = ifft3(q);
        res.r = ifft3(r);
        res.iterations = it;
        res.converged = true;
        return res;
      }
    }
    std::swap(rPrev, rw);
  }
  throw NoConvergence(cfg.iterMax, res.trace.empty() ? 0.0 : res.trace.back(), res.trace);
}

SchurResult tSubspaceIteration(const DenseTensor3& a, std::size_t m, const SolverConfig& cfg) {
  if (m == 0 || m > a.rows()) throw DimensionMismatch(Axis::cols, m, a.rows(), "tSubspaceIteration");
  std::mt19937_64 rng(cfg.rngSeed);
  return tSubspaceIteration(a, randomSlices(a.rows(), m, a.faces(), leadingRealSpectrum(a, m), rng), cfg);
}

SchurResult tQrUnshifted(const DenseTensor3& a, const SolverConfig& cfg) {
  cfg.validate();
  requireSquare(a, "tQrUnshifted");
  const std::size_t p = a.rows(), n = a.faces();
  FourierTensor h = fft3(a);
  FourierTensor u = fft3(DenseTensor3::identity(p, n));
  const double gate = cfg.tol * std::max(1.0, a.frobNorm());
  SchurResult res;
  for (std::size_t it = 1; it <= cfg.iterMax; ++it) {
    forEachFace(h.independentFaces(), defaultExecution(), [&](std::size_t k) {
      Eigen::HouseholderQR<ColMatrix> qr(ColMatrix(h.face(k)));
      const ColMatrix q = qr.householderQ();
      const ColMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
      h.face(k) = r * q;
      u.face(k) = ColMatrix(u.face(k)) * q;
    });
    h.mirrorConjugates();
    u.mirrorConjugates();
    const double lower = belowDiagonalNorm(h, 0);
    res.trace.push_back(lower);
    if (lower <= gate) {
      res.u = ifft3(u);
      res.r = ifft3(h);
      res.iterations = it;
      res.converged = true;
      return res;
    }
  }
  throw NoConvergence(cfg.iterMax, res.trace.back(), res.trace);
}

std::vector<QrStep> unshiftedQrSteps(const DenseTensor3& a, std::size_t count) {
  requireSquare(a, "unshiftedQrSteps");
  std::vector<QrStep> steps;
  DenseTensor3 current = a;
  for (std::size_t i = 0; i < count; ++i) {
    TQrResult f = tQr(current);
    DenseTensor3 next = tProduct(f.r, f.q);
    steps.push_back({std::move(f.q), std::move(f.r), next});
    current = std::move(next);
  }
  return steps;
}

SchurResult tQrShifted(const DenseTensor3& a, const SolverConfig& cfg) {
  cfg.validate();
  requireSquare(a, "tQrShifted");
  const std::size_t p = a.rows(), n = a.faces();
  const THessResult hess = tHess(a);
  const FourierTensor fh = fft3(hess.h);
  const FourierTensor fw = fft3(hess.w);
  std::vector<ColMatrix> h(n), u(n);
  for (std::size_t k = 0; k < n; ++k) {
    h[k] = fh.face(k);
    u[k] = fw.face(k);
  }
  const double eps = 1e-14 * a.frobNorm();
  QrShift rule = cfg.qrShift;
  std::size_t r = p;
  std::size_t lastDeflation = 0;
  SchurResult res;
  std::size_t it = 0;
  while (r > 1) {
    if (it == cfg.iterMax) {
      throw NoConvergence(cfg.iterMax, res.trace.empty() ? 0.0 : res.trace.back(), res.trace);
    }
    ++it;
    const Eigen::Index ri = static_cast<Eigen::Index>(r);
    forEachFace(n, defaultExecution(), [&](std::size_t k) {
      const cplx hrr = h[k](ri - 1, ri - 1);
      const cplx sigma = rule == QrShift::rayleigh ? hrr : hrr * cplx(1.0, 1.0);
      ColMatrix block = h[k].topLeftCorner(ri, ri);
      block.diagonal().array() -= sigma;
      Eigen::HouseholderQR<ColMatrix> qr(block);
      const ColMatrix q = qr.householderQ();
      ColMatrix next = qr.matrixQR().triangularView<Eigen::Upper>();
      next = next * q;
      next.diagonal().array() += sigma;
      h[k].topLeftCorner(ri, ri) = next;
      if (ri < static_cast<Eigen::Index>(p)) {
        const ColMatrix right = q.adjoint() * h[k].topRightCorner(ri, p - r);
        h[k].topRightCorner(ri, p - r) = right;
      }
      const ColMatrix cols = u[k].leftCols(ri) * q;
      u[k].leftCols(ri) = cols;
    });
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(h[k](ri - 1, ri - 2));
    const double sub = parseval(s, n);
    res.trace.push_back(sub);
    if (sub <= eps) {
      --r;
      lastDeflation = it;
    } else if (rule == QrShift::rayleigh && it - lastDeflation >= cfg.stagnationLimit) {
      rule = QrShift::complexRayleigh;
      lastDeflation = it;
    }
  }
  FourierTensor fu({p, p, n}, false), fr({p, p, n}, false);
  for (std::size_t k = 0; k < n; ++k) {
    fu.face(k) = u[k];
    fr.face(k) = h[k];
  }
  res.u = ifft3(fu);
  res.r = ifft3(fr);
  res.iterations = it;
  res.converged = true;
  return res;
}

double errorMetric(const std::vector<Tube>& computed, const std::vector<Tube>& reference) {
  if (computed.size() != reference.size())
    throw DimensionMismatch(Axis::cols, computed.size(), reference.size(), "errorMetric");
  double s = 0.0;
  for (std::size_t j = 0; j < computed.size(); ++j) {
    const double d = tubeNorm(computed[j] - reference[j]);
    s += d * d;
  }
  return std::sqrt(s);
}

double pairResidual(const DenseTensor3& f, const LateralSlice& u, const Tube& lambda) {
  return (tProduct(f, u) - tensorTubeMul(u, lambda)).frobNorm();
}

double blockResidual(const DenseTensor3& f, const LateralSliceSet& u, const DenseTensor3& r) {
  return (tProduct(f, u) - tProduct(u, r)).frobNorm();
}

}  // namespace tubal
