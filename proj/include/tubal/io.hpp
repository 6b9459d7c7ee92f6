#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tubal/eigensolvers.hpp"
#include "tubal/tensor.hpp"

namespace tubal {

/// .t3b layout: "TUBALT3B", u32 version, u32 CRC-32 of the payload, then the
/// payload: u64 rows, cols, faces; u8 reality (1 = real); rows*cols*faces
/// (re, im) f64 pairs in storage order. All integers little-endian.
std::vector<std::uint8_t> encodeT3b(const DenseTensor3& a);
/// Throws MalformedFile on a bad header, truncation, a dimension product that
/// overflows or disagrees with the payload size, or a checksum mismatch.
DenseTensor3 decodeT3b(const std::vector<std::uint8_t>& bytes);

void writeT3b(const std::filesystem::path& path, const DenseTensor3& a);
DenseTensor3 readT3b(const std::filesystem::path& path);

/// JSON form: {"format": "t3b-json", "version": 1, "dims": [l, p, n],
/// "real": bool, "data": base64 of the .t3b payload}.
std::string tensorToJson(const DenseTensor3& a);
DenseTensor3 tensorFromJson(const std::string& text);

/// Chooses the format by extension: ".json" is JSON, anything else .t3b.
void writeTensor(const std::filesystem::path& path, const DenseTensor3& a);
DenseTensor3 readTensor(const std::filesystem::path& path);

std::string base64Encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64Decode(const std::string& text);

/// Solver report: config echo, converged flag, iterations, residual series
/// and eigentubes as spatial (re, im) arrays.
std::string solverReport(const std::string& method, const SolverConfig& cfg, const std::vector<EigenPair>& pairs);
std::string solverReport(const std::string& method, const SolverConfig& cfg, const SchurResult& result,
                         double residual);

/// Writes each factor as <dir>/<name>.t3b plus manifest.json mapping names to
/// files, with the given residuals.
std::filesystem::path writeFactorManifest(const std::filesystem::path& dir, const std::string& factorization,
                                          const std::map<std::string, DenseTensor3>& factors,
                                          const std::map<std::string, double>& residuals);

}  // namespace tubal
