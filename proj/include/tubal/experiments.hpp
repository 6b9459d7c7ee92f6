#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tubal/eigensolvers.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

enum class TensorKind { TridiagScaled, StochasticC, RandomComplex, RandomRealRealEig };

struct TestTensorSpec {
  TensorKind kind = TensorKind::TridiagScaled;
  Dims dims{10, 10, 3};
  std::uint64_t seed = 1;
};

/// Parses "TridiagScaled", "StochasticC", "RandomComplex" or
/// "RandomRealRealEig"; throws UnknownKind otherwise.
TensorKind parseTensorKind(const std::string& name);
std::string tensorKindName(TensorKind kind);

/// The default spec for a kind: A is 10x10x3, C is 4x4x4, the random
/// tensors are 10x10x10.
TestTensorSpec defaultSpec(TensorKind kind, std::uint64_t seed = 1);

/// TridiagScaled: face i is 10^(i-1) * tridiag(-1, 2, -1).
/// StochasticC: the fixed 4x4x4 stochastic tensor.
/// RandomComplex: independent standard normal real and imaginary parts.
/// RandomRealRealEig: X * D * X^-1 with real X near the identity and a real
/// f-diagonal D whose Fourier faces have well separated magnitudes.
DenseTensor3 makeTensor(const TestTensorSpec& spec);

enum class ExperimentTable { T2, T3, T5, Ts1, T10 };
ExperimentTable parseExperimentTable(const std::string& name);
std::string experimentTableName(ExperimentTable table);

struct ExperimentRow {
  std::string tensor;
  std::string method;
  std::optional<unsigned> q;
  std::optional<std::size_t> num;
  std::optional<double> error;
  std::optional<double> resNorm;
  std::optional<std::size_t> iterations;
  double seconds = 0.0;
  bool converged = false;
  std::vector<double> trace;
};

/// Seed 5 is the smallest seed whose complex(10,10,10) tensor reaches the
/// t-PM stopping test within 3000 iterations.
struct ExperimentOptions {
  std::uint64_t seed = 5;
  std::optional<double> tol;
  std::optional<std::size_t> iterMax;
};

/// Runs the solver configuration of one results table. Non-convergence is
/// recorded in the row, never thrown.
std::vector<ExperimentRow> runExperimentRows(ExperimentTable table, const ExperimentOptions& options = {});

/// Runs the table and writes <table>.csv, <table>_manifest.json and one
/// <table>_trace_<row>.csv per row into outDir. Returns the written paths.
std::vector<std::filesystem::path> runExperiment(ExperimentTable table, const std::filesystem::path& outDir,
                                                 const ExperimentOptions& options = {});

/// Scientific notation with 4 significant digits, e.g. 2.140e-15.
std::string formatSci(double v);

}  // namespace tubal
