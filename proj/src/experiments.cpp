#include "tubal/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>

#include <nlohmann/json.hpp>

#include "tubal/errors.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/spectrum.hpp"
#include "tubal/tproduct.hpp"

namespace tubal {
namespace {

// C(:,:,k) rows, as printed to four decimals.
constexpr double kStochasticC[4][4][4] = {
    {{0.2091, 0.2834, 0.2194, 0.1830},
     {0.3371, 0.3997, 0.3219, 0.3377},
     {0.3265, 0.0560, 0.3119, 0.2961},
     {0.1273, 0.2608, 0.1468, 0.1832}},
    {{0.1952, 0.2695, 0.2055, 0.1690},
     {0.3336, 0.3962, 0.3184, 0.3342},
     {0.2954, 0.0249, 0.2808, 0.2650},
     {0.1758, 0.3094, 0.1953, 0.2318}},
    {{0.3145, 0.3887, 0.3248, 0.2883},
     {0.0603, 0.1230, 0.0451, 0.0609},
     {0.3960, 0.1255, 0.3814, 0.3656},
     {0.2293, 0.3628, 0.2487, 0.2852}},
    {{0.1686, 0.2429, 0.1789, 0.1425},
     {0.3553, 0.4180, 0.3402, 0.3559},
     {0.3189, 0.0484, 0.3043, 0.2885},
     {0.1571, 0.2907, 0.1766, 0.2131}},
};

DenseTensor3 tridiagScaled(Dims d) {
  return DenseTensor3::generate(d, [](std::size_t i, std::size_t j, std::size_t k) -> cplx {
    const double delta = std::pow(10.0, static_cast<double>(k));
    if (i == j) return 2.0 * delta;
    if (i + 1 == j || j + 1 == i) return -delta;
    return 0.0;
  });
}

DenseTensor3 randomRealRealEig(Dims d, std::uint64_t seed) {
  const std::size_t p = d.rows, n = d.faces;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::bernoulli_distribution flip(0.5);

  // Real, symmetric Fourier values give real even tubes; magnitudes shrink by
  // about 0.8 from one diagonal position to the next in every face.
  std::vector<Tube> diag;
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<cplx> f(n);
    for (std::size_t k = 0; k <= n / 2; ++k) {
      const double mag = 4.0 * std::pow(0.8, static_cast<double>(j)) * (1.0 + jitter(rng));
      f[k] = flip(rng) ? -mag : mag;
      if (k > 0) f[n - k] = f[k];
    }
    std::vector<cplx> s = Tube::fromFourier(f).spatial();
    for (auto& v : s) v = v.real();
    diag.emplace_back(std::move(s));
  }
  const DenseTensor3 dt = DenseTensor3::diagonal(diag);

  const double scale = 0.3 / std::sqrt(static_cast<double>(p * n));
  const DenseTensor3 x = DenseTensor3::generate(d, [&](std::size_t i, std::size_t j, std::size_t k) -> cplx {
    return (i == j && k == 0 ? 1.0 : 0.0) + scale * normal(rng);
  });
  const DenseTensor3 xinv = tLu(x).solve(DenseTensor3::identity(p, n));
  return tProduct(tProduct(x, dt), xinv);
}

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Facewise closest eigenvalue to the shift.
Tube closestEigentube(const DenseTensor3& a, const Tube& sigma) {
  const auto s = spectrumOf(a);
  const auto sf = sigma.fourier();
  std::vector<cplx> f(a.faces());
  for (std::size_t k = 0; k < a.faces(); ++k) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < s.size(); ++j)
      if (std::abs(s.faceValues[j][k] - sf[k]) < std::abs(s.faceValues[best][k] - sf[k])) best = j;
    f[k] = s.faceValues[best][k];
  }
  std::vector<cplx> sp = Tube::fromFourier(f).spatial();
  if (a.isReal() && sigma.isReal()) snapReal(sp);
  return Tube(std::move(sp));
}

std::vector<Tube> leading(const DenseTensor3& a, std::size_t m) {
  auto s = spectrumOf(a);
  s.eigentubes.resize(m);
  return s.eigentubes;
}

ExperimentRow makeRow(std::string tensor, std::string method) {
  ExperimentRow row;
  row.tensor = std::move(tensor);
  row.method = std::move(method);
  return row;
}

struct Named {
  std::string label;
  DenseTensor3 tensor;
};

Named named(TensorKind kind, std::uint64_t seed) {
  static const char* labels[] = {"A", "C", "complex(10,10,10)", "real(10,10,10)"};
  return {labels[static_cast<int>(kind)], makeTensor(defaultSpec(kind, seed))};
}

SolverConfig baseConfig(const ExperimentOptions& o, std::size_t iterMax) {
  SolverConfig cfg;
  cfg.rngSeed = o.seed;
  if (o.tol) cfg.tol = *o.tol;
  cfg.iterMax = o.iterMax ? *o.iterMax : iterMax;
  return cfg;
}

// Runs `body` and turns NoConvergence into a failed row.
void record(std::vector<ExperimentRow>& rows, ExperimentRow row, const std::function<void(ExperimentRow&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(row);
    row.converged = true;
  } catch (const NoConvergence& e) {
    row.converged = false;
    row.iterations = e.iterations();
    row.trace = e.trace();
  }
  row.seconds = secondsSince(t0);
  rows.push_back(std::move(row));
}

std::string cell(const std::optional<double>& v) { return v ? formatSci(*v) : ""; }
template <class T>
std::string cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "";
}

}  // namespace

TensorKind parseTensorKind(const std::string& name) {
  if (name == "TridiagScaled") return TensorKind::TridiagScaled;
  if (name == "StochasticC") return TensorKind::StochasticC;
  if (name == "RandomComplex") return TensorKind::RandomComplex;
  if (name == "RandomRealRealEig") return TensorKind::RandomRealRealEig;
  throw UnknownKind("unknown tensor kind: " + name);
}

std::string tensorKindName(TensorKind kind) {
  switch (kind) {
    case TensorKind::TridiagScaled: return "TridiagScaled";
    case TensorKind::StochasticC: return "StochasticC";
    case TensorKind::RandomComplex: return "RandomComplex";
    case TensorKind::RandomRealRealEig: return "RandomRealRealEig";
  }
  throw UnknownKind("unknown tensor kind");
}

TestTensorSpec defaultSpec(TensorKind kind, std::uint64_t seed) {
  switch (kind) {
    case TensorKind::TridiagScaled: return {kind, {10, 10, 3}, seed};
    case TensorKind::StochasticC: return {kind, {4, 4, 4}, seed};
    default: return {kind, {10, 10, 10}, seed};
  }
}

DenseTensor3 makeTensor(const TestTensorSpec& spec) {
  switch (spec.kind) {
    case TensorKind::TridiagScaled:
      return tridiagScaled({spec.dims.rows, spec.dims.rows, spec.dims.faces});
    case TensorKind::StochasticC:
      return DenseTensor3::generate({4, 4, 4}, [](std::size_t i, std::size_t j, std::size_t k) -> cplx {
        return kStochasticC[k][i][j];
      });
    case TensorKind::RandomComplex: {
      std::mt19937_64 rng(spec.seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      std::vector<cplx> data(spec.dims.count());
      for (auto& v : data) {
        const double re = normal(rng);
        v = cplx(re, normal(rng));
      }
      return DenseTensor3(spec.dims, std::move(data));
    }
    case TensorKind::RandomRealRealEig:
      return randomRealRealEig({spec.dims.rows, spec.dims.rows, spec.dims.faces}, spec.seed);
  }
  throw UnknownKind("unknown tensor kind");
}

ExperimentTable parseExperimentTable(const std::string& name) {
  if (name == "T2") return ExperimentTable::T2;
  if (name == "T3") return ExperimentTable::T3;
  if (name == "T5") return ExperimentTable::T5;
  if (name == "Ts1") return ExperimentTable::Ts1;
  if (name == "T10") return ExperimentTable::T10;
  throw UnknownKind("unknown table: " + name);
}

std::string experimentTableName(ExperimentTable table) {
  static const char* names[] = {"T2", "T3", "T5", "Ts1", "T10"};
  return names[static_cast<int>(table)];
}

std::string formatSci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<ExperimentRow> runExperimentRows(ExperimentTable table, const ExperimentOptions& o) {
  std::vector<ExperimentRow> rows;
  switch (table) {
    case ExperimentTable::T2: {
      for (auto kind : {TensorKind::TridiagScaled, TensorKind::StochasticC, TensorKind::RandomComplex}) {
        const Named t = named(kind, o.seed);
        ExperimentRow row = makeRow(t.label, "t-PM");
        record(rows, row, [&](ExperimentRow& r) {
          const EigenPair pair = tPower(t.tensor, baseConfig(o, 3000));
          r.resNorm = pair.residualNorm;
          r.error = errorMetric({pair.eigentube}, leading(t.tensor, 1));
          r.iterations = pair.iterations;
          r.trace = pair.trace;
        });
      }
      break;
    }
    case ExperimentTable::T3: {
      const std::pair<TensorKind, double> cases[] = {{TensorKind::TridiagScaled, 1e-5}, {TensorKind::RandomComplex, 1e-3}};
      for (auto [kind, s0] : cases) {
        const Named t = named(kind, o.seed);
        std::vector<cplx> sv(t.tensor.faces(), 0.0);
        sv[0] = s0;
        const Tube sigma(sv);
        ExperimentRow row = makeRow(t.label, "t-SIPM");
        record(rows, row, [&](ExperimentRow& r) {
          SolverConfig cfg = baseConfig(o, 3000);
          cfg.shift = sigma;
          const EigenPair pair = tInversePower(t.tensor, cfg);
          r.resNorm = pair.residualNorm;
          r.error = errorMetric({pair.eigentube}, {closestEigentube(t.tensor, sigma)});
          r.iterations = pair.iterations;
          r.trace = pair.trace;
        });
      }
      break;
    }
    case ExperimentTable::T5: {
      const std::pair<TensorKind, std::vector<std::size_t>> cases[] = {{TensorKind::TridiagScaled, {3, 5}},
                                                                       {TensorKind::RandomRealRealEig, {4, 6}}};
      const std::pair<DeflationVariant, const char*> variants[] = {
          {DeflationVariant::DE, "DE"}, {DeflationVariant::DLE, "DLE"}, {DeflationVariant::DS, "DS"}};
      for (const auto& [kind, nums] : cases) {
        const Named t = named(kind, o.seed);
        for (std::size_t num : nums) {
          const auto reference = leading(t.tensor, num);
          for (auto [variant, tag] : variants) {
            ExperimentRow row = makeRow(t.label, tag);
            row.num = num;
            record(rows, row, [&](ExperimentRow& r) {
              SolverConfig cfg = baseConfig(o, 3000);
              cfg.deflationVariant = variant;
              const DeflationResult res = deflatedPowerSweep(t.tensor, num, cfg);
              std::vector<Tube> computed;
              for (const auto& p : res.pairs) computed.push_back(p.eigentube);
              r.error = errorMetric(computed, reference);
              r.resNorm = blockResidual(t.tensor, res.u, res.d);
              r.iterations = res.iterations;
              for (const auto& s : res.stages) r.trace.insert(r.trace.end(), s.trace.begin(), s.trace.end());
            });
          }
        }
      }
      break;
    }
    case ExperimentTable::Ts1: {
      for (auto kind : {TensorKind::TridiagScaled, TensorKind::RandomComplex}) {
        const Named t = named(kind, o.seed);
        const auto reference = leading(t.tensor, 4);
        for (unsigned q : {1u, 4u}) {
          ExperimentRow row = makeRow(t.label, "t-SI");
          row.q = q;
          record(rows, row, [&](ExperimentRow& r) {
            SolverConfig cfg = baseConfig(o, 3000);
            cfg.powerIndex = q;
            const SchurResult res = tSubspaceIteration(t.tensor, 4, cfg);
            r.error = errorMetric(sortFacewise(res.diagonalTubes()), reference);
            r.resNorm = blockResidual(t.tensor, res.u, res.r);
            r.iterations = res.iterations;
            r.trace = res.trace;
          });
        }
      }
      break;
    }
    case ExperimentTable::T10: {
      const std::pair<TensorKind, QrShift> cases[] = {{TensorKind::TridiagScaled, QrShift::rayleigh},
                                                      {TensorKind::StochasticC, QrShift::complexRayleigh}};
      for (auto [kind, shift] : cases) {
        const Named t = named(kind, o.seed);
        const auto reference = spectrumOf(t.tensor).eigentubes;
        ExperimentRow row = makeRow(t.label, "t-QRHS");
        record(rows, row, [&](ExperimentRow& r) {
          SolverConfig cfg = baseConfig(o, 30000);
          cfg.qrShift = shift;
          const SchurResult res = tQrShifted(t.tensor, cfg);
          r.error = errorMetric(sortFacewise(res.diagonalTubes()), reference);
          r.resNorm = blockResidual(t.tensor, res.u, res.r);
          r.iterations = res.iterations;
          r.trace = res.trace;
        });
      }
      break;
    }
  }
  return rows;
}

std::vector<std::filesystem::path> runExperiment(ExperimentTable table, const std::filesystem::path& outDir,
                                                 const ExperimentOptions& options) {
  std::filesystem::create_directories(outDir);
  const auto rows = runExperimentRows(table, options);
  const std::string name = experimentTableName(table);
  std::vector<std::filesystem::path> written;

  const auto csvPath = outDir / (name + ".csv");
  std::ofstream csv(csvPath);
  if (!csv) throw Error("cannot write " + csvPath.string());
  switch (table) {
    case ExperimentTable::T2:
    case ExperimentTable::T3:
      csv << "Tensor,Method,Res.norm,Error,Iter,CPU time,converged\n";
      for (const auto& r : rows)
        csv << '"' << r.tensor << "\"," << r.method << ',' << cell(r.resNorm) << ',' << cell(r.error) << ','
            << cell(r.iterations) << ',' << formatSci(r.seconds) << ',' << r.converged << '\n';
      break;
    case ExperimentTable::T5:
      csv << "Tensor,Num,Method,Error,Res.norm,CPU time,Iter,converged\n";
      for (const auto& r : rows)
        csv << '"' << r.tensor << "\"," << cell(r.num) << ',' << r.method << ',' << cell(r.error) << ','
            << cell(r.resNorm) << ',' << formatSci(r.seconds) << ',' << cell(r.iterations) << ',' << r.converged
            << '\n';
      break;
    case ExperimentTable::Ts1:
      csv << "Tensor,q,Error,Res.norm,Iter,CPU time,converged\n";
      for (const auto& r : rows)
        csv << '"' << r.tensor << "\"," << cell(r.q) << ',' << cell(r.error) << ',' << cell(r.resNorm) << ','
            << cell(r.iterations) << ',' << formatSci(r.seconds) << ',' << r.converged << '\n';
      break;
    case ExperimentTable::T10:
      csv << "Tensor,Method,Error,Res.norm,CPU time,Iter,converged\n";
      for (const auto& r : rows)
        csv << '"' << r.tensor << "\"," << r.method << ',' << cell(r.error) << ',' << cell(r.resNorm) << ','
            << formatSci(r.seconds) << ',' << cell(r.iterations) << ',' << r.converged << '\n';
      break;
  }
  written.push_back(csvPath);

  nlohmann::json manifest;
  manifest["table"] = name;
  manifest["seed"] = options.seed;
  if (options.tol) manifest["tol"] = *options.tol;
  if (options.iterMax) manifest["iterMax"] = *options.iterMax;
  manifest["rows"] = nlohmann::json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    nlohmann::json j;
    j["tensor"] = r.tensor;
    j["method"] = r.method;
    if (r.q) j["q"] = *r.q;
    if (r.num) j["num"] = *r.num;
    j["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json();
    j["resNorm"] = r.resNorm ? nlohmann::json(*r.resNorm) : nlohmann::json();
    j["iterations"] = r.iterations ? nlohmann::json(*r.iterations) : nlohmann::json();
    j["seconds"] = r.seconds;
    j["converged"] = r.converged;

    const auto tracePath = outDir / (name + "_trace_" + std::to_string(i) + ".csv");
    std::ofstream tr(tracePath);
    if (!tr) throw Error("cannot write " + tracePath.string());
    tr << "iteration,value\n";
    char buf[40];
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", r.trace[k]);
      tr << k + 1 << ',' << buf << '\n';
    }
    written.push_back(tracePath);
    j["trace"] = tracePath.filename().string();
    manifest["rows"].push_back(std::move(j));
  }
  const auto manifestPath = outDir / (name + "_manifest.json");
  std::ofstream mf(manifestPath);
  if (!mf) throw Error("cannot write " + manifestPath.string());
  mf << manifest.dump(2) << '\n';
  written.push_back(manifestPath);
  return written;
}

}  // namespace tubal
