// tubal: generate test tensors, run the t-eigensolvers and reproduce the
// experiment tables.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tubal/eigensolvers.hpp"
#include "tubal/errors.hpp"
#include "tubal/experiments.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/io.hpp"
#include "tubal/spectrum.hpp"
#include "tubal/tproduct.hpp"

namespace fs = std::filesystem;
using namespace tubal;

namespace {

constexpr int kUsageError = 1;
constexpr int kNoConvergence = 2;

// A kind name builds the test tensor; anything else is read as a file.
DenseTensor3 loadTensor(const std::string& arg, std::uint64_t seed) {
  try {
    return makeTensor(defaultSpec(parseTensorKind(arg), seed));
  } catch (const UnknownKind&) {
    if (!fs::exists(arg)) throw;
  }
  return readTensor(arg);
}

Tube parseShift(const std::string& text, std::size_t n) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(std::stod(item));
  if (parts.size() % 2 != 0) throw CLI::ValidationError("--shift", "expects re,im pairs");
  if (parts.size() / 2 > n) throw CLI::ValidationError("--shift", "more entries than faces");
  std::vector<cplx> values(n, 0.0);
  for (std::size_t i = 0; i < parts.size() / 2; ++i) values[i] = cplx(parts[2 * i], parts[2 * i + 1]);
  return Tube(std::move(values));
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text << '\n';
}

nlohmann::json tubeJson(const Tube& t) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : t.spatial()) a.push_back({v.real(), v.imag()});
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue methods for third-order tensors under the t-product"};
  app.require_subcommand(1);

  std::string tensorArg = "TridiagScaled";
  std::uint64_t seed = ExperimentOptions{}.seed;
  std::string out;

  auto* gen = app.add_subcommand("gen", "Write a test tensor to a .t3b or .json file");
  gen->add_option("--tensor", tensorArg, "TridiagScaled, StochasticC, RandomComplex or RandomRealRealEig");
  gen->add_option("--seed", seed);
  gen->add_option("--out", out, "Output file")->required();

  std::string method;
  std::string table;
  std::optional<double> tol;
  std::optional<std::size_t> iterMax;
  unsigned q = 1;
  std::size_t num = 0;
  std::string shiftText;
  bool complexShift = false;
  bool printedRecovery = false;
  auto* run = app.add_subcommand("run", "Run one solver, or a whole experiment table with --table");
  run->add_option("--method", method, "t-PM, t-SIPM, DE, DLE, DS, t-SI, t-QR or t-QRHS");
  run->add_option("--table", table, "T2, T3, T5, Ts1 or T10; writes CSV, traces and a manifest into --out");
  run->add_option("--tensor", tensorArg, "Kind name or tensor file");
  run->add_option("--tol", tol);
  run->add_option("--iter-max", iterMax);
  run->add_option("--q", q, "Power index for t-SI")->check(CLI::PositiveNumber);
  run->add_option("--num", num, "Eigenpairs for DE/DLE/DS, subspace size for t-SI");
  run->add_option("--shift", shiftText, "Shift tube as re,im[,re,im...]; missing entries are zero");
  run->add_flag("--complex-shift", complexShift, "t-QRHS: use H(r,r) + i*H(r,r) from the start");
  run->add_flag("--printed-recovery", printedRecovery, "t-SIPM: lambda = e/(alpha + sigma)");
  run->add_option("--seed", seed);
  run->add_option("--out", out, "Report file (or directory with --table); stdout if omitted");
  run->callback([&] {
    if (method.empty() == table.empty()) throw CLI::ValidationError("run", "give exactly one of --method or --table");
  });

  auto* spec = app.add_subcommand("spectrum", "Eigentubes of a tensor from its Fourier faces");
  spec->add_option("--tensor", tensorArg, "Kind name or tensor file");
  spec->add_option("--seed", seed);
  spec->add_option("--out", out);

  std::string input;
  auto* convert = app.add_subcommand("convert", "Convert between .t3b and .json");
  convert->add_option("input", input)->required()->check(CLI::ExistingFile);
  convert->add_option("output", out)->required();

  std::string factorKind = "lu";
  auto* factor = app.add_subcommand("factor", "Write the factors of a t-factorization with a manifest");
  factor->add_option("--kind", factorKind)->check(CLI::IsMember({"lu", "qr", "hess", "svd", "schur"}));
  factor->add_option("--tensor", tensorArg, "Kind name or tensor file");
  factor->add_option("--seed", seed);
  factor->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen) {
      writeTensor(out, loadTensor(tensorArg, seed));
      return 0;
    }

    if (*convert) {
      writeTensor(out, readTensor(input));
      return 0;
    }

    if (*spec) {
      const DenseTensor3 a = loadTensor(tensorArg, seed);
      const EigentubeSpectrum s = spectrumOf(a, {.multiplicities = true});
      nlohmann::json j;
      j["dims"] = {a.rows(), a.cols(), a.faces()};
      for (std::size_t i = 0; i < s.size(); ++i) {
        j["eigentubes"].push_back({{"norm", tubeNorm(s.eigentubes[i])},
                                   {"spatial", tubeJson(s.eigentubes[i])},
                                   {"algebraic", s.algebraicMultiplicity[i]},
                                   {"geometric", s.geometricMultiplicity[i]},
                                   {"index", s.index[i]}});
      }
      emit(j.dump(2), out);
      return 0;
    }

    if (*factor) {
      const DenseTensor3 a = loadTensor(tensorArg, seed);
      std::map<std::string, DenseTensor3> parts;
      std::map<std::string, double> res;
      const double scale = std::max(1.0, a.frobNorm());
      if (factorKind == "lu") {
        const TLuResult f = tLu(a);
        parts = {{"P", f.permutationTensor()}, {"L", f.lower()}, {"U", f.upper()}};
        res["P*A - L*U"] = (tProduct(f.permutationTensor(), a) - tProduct(f.lower(), f.upper())).frobNorm() / scale;
      } else if (factorKind == "qr") {
        const TQrResult f = tQr(a);
        parts = {{"Q", f.q}, {"R", f.r}};
        res["A - Q*R"] = (a - tProduct(f.q, f.r)).frobNorm() / scale;
      } else if (factorKind == "hess") {
        const THessResult f = tHess(a);
        parts = {{"W", f.w}, {"H", f.h}};
        res["W^H*A*W - H"] = (tProduct(conjTranspose(f.w), tProduct(a, f.w)) - f.h).frobNorm() / scale;
      } else if (factorKind == "svd") {
        const TSvdResult f = tSvd(a);
        parts = {{"U", f.u}, {"S", f.s}, {"V", f.v}};
        res["A - U*S*V^H"] = (a - tProduct(f.u, tProduct(f.s, conjTranspose(f.v)))).frobNorm() / scale;
      } else {
        const TSchurResult f = realTSchur(a);
        parts = {{"Q", f.q}, {"R", f.r}};
        res["Q*A*Q^H - R"] = (tProduct(f.q, tProduct(a, conjTranspose(f.q))) - f.r).frobNorm() / scale;
      }
      const fs::path manifest = writeFactorManifest(out, factorKind, parts, res);
      std::cout << manifest.string() << '\n';
      return 0;
    }

    // run
    if (!table.empty()) {
      ExperimentOptions opts;
      opts.seed = seed;
      opts.tol = tol;
      opts.iterMax = iterMax;
      const auto files = runExperiment(parseExperimentTable(table), out.empty() ? fs::path(".") : fs::path(out), opts);
      bool all = true;
      for (const auto& f : files) {
        std::cout << f.string() << '\n';
        if (f.string().ends_with("_manifest.json")) {
          std::ifstream in(f);
          const auto manifest = nlohmann::json::parse(in);
          for (const auto& r : manifest["rows"]) all = all && r["converged"].get<bool>();
        }
      }
      return all ? 0 : kNoConvergence;
    }

    const DenseTensor3 a = loadTensor(tensorArg, seed);
    SolverConfig cfg;
    cfg.rngSeed = seed;
    if (tol) cfg.tol = *tol;
    if (iterMax) cfg.iterMax = *iterMax;
    else if (method == "t-QR" || method == "t-QRHS") cfg.iterMax = 30000;
    cfg.powerIndex = q;
    if (!shiftText.empty()) cfg.shift = parseShift(shiftText, a.faces());
    if (complexShift) cfg.qrShift = QrShift::complexRayleigh;
    if (printedRecovery) cfg.inverseRecovery = InverseRecovery::printed;

    if (method == "t-PM" || method == "t-SIPM") {
      const EigenPair p = method == "t-PM" ? tPower(a, cfg) : tInversePower(a, cfg);
      emit(solverReport(method, cfg, {p}), out);
    } else if (method == "DE" || method == "DLE" || method == "DS") {
      cfg.deflationVariant = method == "DE" ? DeflationVariant::DE
                             : method == "DLE" ? DeflationVariant::DLE
                                               : DeflationVariant::DS;
      const DeflationResult d = deflatedPowerSweep(a, num == 0 ? 3 : num, cfg);
      emit(solverReport(method, cfg, d.pairs), out);
    } else if (method == "t-SI" || method == "t-QR" || method == "t-QRHS") {
      SchurResult s;
      if (method == "t-SI") s = tSubspaceIteration(a, num == 0 ? 4 : num, cfg);
      else if (method == "t-QR") s = tQrUnshifted(a, cfg);
      else s = tQrShifted(a, cfg);
      emit(solverReport(method, cfg, s, blockResidual(a, s.u, s.r)), out);
    } else {
      std::cerr << "unknown method " << method << '\n';
      return kUsageError;
    }
    return 0;
  } catch (const NoConvergence& e) {
    std::cerr << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
