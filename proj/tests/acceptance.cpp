// One PASS/FAIL line per acceptance criterion. Reference values come from the
// brute-force oracles in oracles.hpp, never from the library's own spectrum code.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "tubal/eigensolvers.hpp"
#include "tubal/errors.hpp"
#include "tubal/experiments.hpp"
#include "tubal/spectrum.hpp"
#include "tubal/tproduct.hpp"

using namespace tubal;

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs one criterion; an escaped exception counts as a failure.
void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string("threw: ") + e.what();
  }
  while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
  report(ok, name, detail);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Faces of a set of eigentubes: out[k][j] = face k of tube j.
std::vector<std::vector<cplx>> facesOf(const std::vector<Tube>& tubes) {
  std::vector<std::vector<cplx>> out(tubes.front().size());
  for (const auto& t : tubes) {
    const auto f = t.fourier();
    for (std::size_t k = 0; k < f.size(); ++k) out[k].push_back(f[k]);
  }
  return out;
}

double blockResidualOracle(const DenseTensor3& a, const DenseTensor3& u, const DenseTensor3& r) {
  return (oracle::tProduct(a, u) - oracle::tProduct(u, r)).frobNorm();
}

constexpr std::uint64_t kSeed = 5;

DenseTensor3 tensorA() { return makeTensor(defaultSpec(TensorKind::TridiagScaled)); }

}  // namespace

int main() {
  criterion("oracle equivalence", [](std::string& d) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> side(1, 4), faces(1, 5);
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Dims da{side(rng), side(rng), faces(rng)};
      const DenseTensor3 a = oracle::randomTensor(da, i % 2 == 0, rng);
      const DenseTensor3 b = oracle::randomTensor({da.cols, side(rng), da.faces}, i % 2 == 0, rng);
      // fold(bcirc(A) * unfold(B)) with a hand-built block circulant.
      const oracle::Mat ub = oracle::bcirc(b).leftCols(static_cast<Eigen::Index>(b.cols()));
      const oracle::Mat prod = oracle::bcirc(a) * ub;
      const DenseTensor3 ref = DenseTensor3::generate({a.rows(), b.cols(), a.faces()}, [&](std::size_t r, std::size_t c, std::size_t k) {
        return prod(static_cast<Eigen::Index>(k * a.rows() + r), static_cast<Eigen::Index>(c));
      });
      worst = std::max(worst, oracle::relErr(tProduct(a, b), ref));
    }
    const double secs = secondsSince(t0);
    d = "max relative error " + sci(worst) + " over 100 instances in " + sci(secs) + " s";
    return worst <= 1e-10 && secs < 5.0;
  });

  criterion("spectral oracle", [](std::string& d) {
    std::mt19937_64 rng(2025);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const DenseTensor3 a = oracle::randomTensor({3, 3, 3}, i % 2 == 0, rng);
      std::vector<cplx> faces;
      for (const auto& t : spectrumOf(a).eigentubes)
        for (const cplx v : t.fourier()) faces.push_back(v);
      worst = std::max(worst, oracle::multisetDistance(faces, oracle::eigenvalues(oracle::bcirc(a))));
    }
    d = "max multiset distance " + sci(worst) + " over 50 tensors";
    return worst <= 1e-8;
  });

  criterion("T2 t-PM", [](std::string& d) {
    SolverConfig cfg;
    cfg.rngSeed = kSeed;
    cfg.iterMax = 3000;
    bool ok = true;
    const std::pair<const char*, TensorKind> cases[] = {
        {"A", TensorKind::TridiagScaled}, {"C", TensorKind::StochasticC}, {"complex", TensorKind::RandomComplex}};
    for (auto [label, kind] : cases) {
      const DenseTensor3 a = makeTensor(defaultSpec(kind, kSeed));
      const auto ref = kind == TensorKind::TridiagScaled ? oracle::tridiagScaledSpectrum() : oracle::faceEigenvalues(a);
      try {
        const EigenPair p = tPower(a, cfg);
        std::vector<std::vector<cplx>> lead;
        for (const auto& f : ref) lead.push_back({f[0]});
        const double err = oracle::matchedSpectrumError(facesOf({p.eigentube}), lead);
        const double res = (oracle::tProduct(a, p.eigenslice) - tensorTubeMul(p.eigenslice, p.eigentube)).frobNorm();
        ok = ok && err <= 1e-12 && res <= 1e-12 && p.iterations <= 3000;
        d += std::string(label) + " it=" + std::to_string(p.iterations) + " err=" + sci(err) + " res=" + sci(res) + "; ";
      } catch (const NoConvergence& e) {
        ok = false;
        d += std::string(label) + " no convergence in " + std::to_string(e.iterations()) + "; ";
      }
    }
    return ok;
  });

  criterion("T3 t-SIPM", [](std::string& d) {
    const DenseTensor3 a = tensorA();
    SolverConfig cfg;
    cfg.rngSeed = kSeed;
    cfg.shift = Tube({1e-5, 0.0, 0.0});
    const EigenPair p = tInversePower(a, cfg);
    const double res = (oracle::tProduct(a, p.eigenslice) - tensorTubeMul(p.eigenslice, p.eigentube)).frobNorm();
    d = "it=" + std::to_string(p.iterations) + " res=" + sci(res);
    return res <= 1e-12 && p.iterations <= 200;
  });

  criterion("T5 deflation", [](std::string& d) {
    bool ok = true;
    const std::pair<TensorKind, std::size_t> cases[] = {{TensorKind::TridiagScaled, 3}, {TensorKind::RandomRealRealEig, 4}};
    const std::pair<DeflationVariant, const char*> variants[] = {
        {DeflationVariant::DE, "DE"}, {DeflationVariant::DLE, "DLE"}, {DeflationVariant::DS, "DS"}};
    for (auto [kind, num] : cases) {
      const DenseTensor3 a = makeTensor(defaultSpec(kind, kSeed));
      const auto ref = kind == TensorKind::TridiagScaled ? oracle::tridiagScaledSpectrum() : oracle::faceEigenvalues(a);
      std::vector<std::vector<cplx>> lead;
      for (const auto& f : ref) lead.emplace_back(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(num));
      for (auto [variant, tag] : variants) {
        SolverConfig cfg;
        cfg.rngSeed = kSeed;
        cfg.deflationVariant = variant;
        const DeflationResult r = deflatedPowerSweep(a, num, cfg);
        std::vector<Tube> tubes;
        for (const auto& p : r.pairs) tubes.push_back(p.eigentube);
        const double err = oracle::matchedSpectrumError(facesOf(tubes), lead);
        const double res = blockResidualOracle(a, r.u, r.d);
        ok = ok && err <= 1e-10 && res <= 1e-10;
        d += tensorKindName(kind) + "/" + tag + " err=" + sci(err) + " res=" + sci(res) + "; ";
      }
    }
    return ok;
  });

  criterion("Ts1 t-SI", [](std::string& d) {
    const DenseTensor3 a = tensorA();
    const auto ref = oracle::tridiagScaledSpectrum();
    std::vector<std::vector<cplx>> lead;
    for (const auto& f : ref) lead.emplace_back(f.begin(), f.begin() + 4);
    std::size_t its[2] = {0, 0};
    bool ok = true;
    for (int i = 0; i < 2; ++i) {
      SolverConfig cfg;
      cfg.rngSeed = kSeed;
      cfg.powerIndex = i == 0 ? 1 : 4;
      const SchurResult r = tSubspaceIteration(a, 4, cfg);
      const double err = oracle::matchedSpectrumError(facesOf(r.diagonalTubes()), lead);
      its[i] = r.iterations;
      ok = ok && r.converged && err <= 1e-12;
      d += "q=" + std::to_string(cfg.powerIndex) + " it=" + std::to_string(r.iterations) + " err=" + sci(err) + "; ";
    }
    return ok && its[1] < its[0];
  });

  criterion("T10 t-QRHS", [](std::string& d) {
    bool ok = true;
    const std::pair<TensorKind, QrShift> cases[] = {{TensorKind::TridiagScaled, QrShift::rayleigh},
                                                    {TensorKind::StochasticC, QrShift::complexRayleigh}};
    for (auto [kind, shift] : cases) {
      const DenseTensor3 a = makeTensor(defaultSpec(kind, kSeed));
      const auto ref = kind == TensorKind::TridiagScaled ? oracle::tridiagScaledSpectrum() : oracle::faceEigenvalues(a);
      SolverConfig cfg;
      cfg.rngSeed = kSeed;
      cfg.iterMax = 30000;
      cfg.qrShift = shift;
      const SchurResult r = tQrShifted(a, cfg);
      const double err = oracle::matchedSpectrumError(facesOf(r.diagonalTubes()), ref);
      const double res = blockResidualOracle(a, r.u, r.r);
      ok = ok && r.converged && r.iterations <= 30000 && err <= 1e-12 && res <= 1e-12;
      d += tensorKindName(kind) + " it=" + std::to_string(r.iterations) + " err=" + sci(err) + " res=" + sci(res) + "; ";
    }
    return ok;
  });

  criterion("property suite", [](std::string& d) {
    const auto t0 = Clock::now();
    const std::string cmd = std::string(TUBAL_PROPERTY_SUITE) + " --gtest_brief=1 > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const double secs = secondsSince(t0);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    d = "exit " + std::to_string(code) + " in " + sci(secs) + " s";
    return code == 0 && secs < 60.0;
  });

  return failures == 0 ? 0 : 1;
}
