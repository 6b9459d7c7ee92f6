#include "tubal/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include "tubal/errors.hpp"

namespace tubal {
namespace {

constexpr char kMagic[8] = {'T', 'U', 'B', 'A', 'L', 'T', '3', 'B'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeader = 16;
constexpr std::size_t kDimsBytes = 3 * 8 + 1;

void putU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void putU64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
std::uint32_t getU32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
std::uint64_t getU64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void putEntries(std::vector<std::uint8_t>& out, const DenseTensor3& a) {
  for (const cplx& z : a.data()) {
    putU64(out, std::bit_cast<std::uint64_t>(z.real()));
    putU64(out, std::bit_cast<std::uint64_t>(z.imag()));
  }
}

std::vector<cplx> getEntries(const std::uint8_t* p, std::size_t count) {
  std::vector<cplx> data(count);
  for (std::size_t i = 0; i < count; ++i, p += 16)
    data[i] = cplx(std::bit_cast<double>(getU64(p)), std::bit_cast<double>(getU64(p + 8)));
  return data;
}

// rows*cols*faces*16 without overflow, or throws.
std::size_t entryBytes(std::uint64_t l, std::uint64_t p, std::uint64_t n) {
  constexpr std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / 16;
  std::uint64_t count = l;
  if (p != 0 && count > limit / p) throw MalformedFile("tensor dimensions overflow");
  count *= p;
  if (n != 0 && count > limit / n) throw MalformedFile("tensor dimensions overflow");
  count *= n;
  return static_cast<std::size_t>(count * 16);
}

DenseTensor3 buildTensor(std::uint64_t l, std::uint64_t p, std::uint64_t n, bool real, std::vector<cplx> data) {
  if (l == 0 || p == 0 || n == 0) throw MalformedFile("tensor has an empty dimension");
  try {
    return real ? DenseTensor3({l, p, n}, std::move(data), Reality::real) : DenseTensor3({l, p, n}, std::move(data));
  } catch (const Error& e) {
    throw MalformedFile(std::string("inconsistent tensor data: ") + e.what());
  }
}

std::vector<std::uint8_t> readAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void writeAll(const std::filesystem::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw Error("write failed: " + path.string());
}

nlohmann::json tubeJson(const Tube& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const cplx& z : t.spatial()) arr.push_back({z.real(), z.imag()});
  return arr;
}

nlohmann::json configJson(const SolverConfig& cfg) {
  static const char* variants[] = {"DE", "DLE", "DS"};
  nlohmann::json j;
  j["tol"] = cfg.tol;
  j["iterMax"] = cfg.iterMax;
  j["powerIndex"] = cfg.powerIndex;
  j["shift"] = cfg.shift ? tubeJson(*cfg.shift) : nlohmann::json();
  j["deflationVariant"] = variants[static_cast<int>(cfg.deflationVariant)];
  j["rngSeed"] = cfg.rngSeed;
  j["inverseRecovery"] = cfg.inverseRecovery == InverseRecovery::standard ? "standard" : "printed";
  j["qrShift"] = cfg.qrShift == QrShift::rayleigh ? "rayleigh" : "complexRayleigh";
  return j;
}

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

}  // namespace

std::vector<std::uint8_t> encodeT3b(const DenseTensor3& a) {
  std::vector<std::uint8_t> payload;
  payload.reserve(kDimsBytes + a.dims().count() * 16);
  putU64(payload, a.rows());
  putU64(payload, a.cols());
  putU64(payload, a.faces());
  payload.push_back(a.isReal() ? 1 : 0);
  putEntries(payload, a);

  std::vector<std::uint8_t> out(kMagic, kMagic + 8);
  putU32(out, kVersion);
  putU32(out, static_cast<std::uint32_t>(crc32(0L, payload.data(), static_cast<uInt>(payload.size()))));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

DenseTensor3 decodeT3b(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeader + kDimsBytes) throw MalformedFile("file too short for a .t3b header");
  if (std::memcmp(bytes.data(), kMagic, 8) != 0) throw MalformedFile("bad magic");
  const std::uint32_t version = getU32(bytes.data() + 8);
  if (version != kVersion) throw MalformedFile("unsupported version " + std::to_string(version));
  const std::uint32_t stored = getU32(bytes.data() + 12);
  const std::uint8_t* p = bytes.data() + kHeader;
  const std::uint64_t l = getU64(p), c = getU64(p + 8), n = getU64(p + 16);
  const std::uint8_t flag = p[24];
  if (flag > 1) throw MalformedFile("bad reality flag");
  const std::size_t need = entryBytes(l, c, n);
  const std::size_t have = bytes.size() - kHeader - kDimsBytes;
  if (have < need) throw MalformedFile("truncated entry data");
  if (have > need) throw MalformedFile("trailing bytes after entry data");
  const auto crc = static_cast<std::uint32_t>(crc32(0L, p, static_cast<uInt>(kDimsBytes + need)));
  if (crc != stored) throw MalformedFile("checksum mismatch");
  return buildTensor(l, c, n, flag == 1, getEntries(p + kDimsBytes, need / 16));
}

void writeT3b(const std::filesystem::path& path, const DenseTensor3& a) {
  const auto bytes = encodeT3b(a);
  writeAll(path, bytes.data(), bytes.size());
}

DenseTensor3 readT3b(const std::filesystem::path& path) { return decodeT3b(readAll(path)); }

std::string base64Encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    for (int s = 18; s >= 0; s -= 6) out.push_back(kAlphabet[(v >> s) & 63]);
  }
  if (i < bytes.size()) {
    std::uint32_t v = bytes[i] << 16;
    if (i + 1 < bytes.size()) v |= bytes[i + 1] << 8;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(i + 1 < bytes.size() ? kAlphabet[(v >> 6) & 63] : '=');
    out.push_back('=');
  }
  return out;
}

std::vector<std::uint8_t> base64Decode(const std::string& text) {
  std::array<int, 256> table;
  table.fill(-1);
  for (int i = 0; i < 64; ++i) table[static_cast<unsigned char>(kAlphabet[i])] = i;
  if (text.size() % 4 != 0) throw MalformedFile("base64 length is not a multiple of 4");
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t v = 0;
    int pad = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      const char ch = text[i + j];
      if (ch == '=' && i + 4 == text.size() && j >= 2) {
        ++pad;
        v <<= 6;
        continue;
      }
      const int d = table[static_cast<unsigned char>(ch)];
      if (d < 0 || pad) throw MalformedFile("invalid base64 character");
      v = (v << 6) | static_cast<std::uint32_t>(d);
    }
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>(v >> 8));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

std::string tensorToJson(const DenseTensor3& a) {
  std::vector<std::uint8_t> entries;
  entries.reserve(a.dims().count() * 16);
  putEntries(entries, a);
  nlohmann::json j;
  j["format"] = "t3b-json";
  j["version"] = kVersion;
  j["dims"] = {a.rows(), a.cols(), a.faces()};
  j["real"] = a.isReal();
  j["data"] = base64Encode(entries);
  return j.dump(2);
}

DenseTensor3 tensorFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedFile(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "t3b-json") throw MalformedFile("not a t3b-json document");
    if (j.at("version").get<std::uint32_t>() != kVersion) throw MalformedFile("unsupported version");
    const auto dims = j.at("dims").get<std::vector<std::uint64_t>>();
    if (dims.size() != 3) throw MalformedFile("dims must have three entries");
    const auto bytes = base64Decode(j.at("data").get<std::string>());
    const std::size_t need = entryBytes(dims[0], dims[1], dims[2]);
    if (bytes.size() != need) throw MalformedFile("entry data does not match dims");
    return buildTensor(dims[0], dims[1], dims[2], j.at("real").get<bool>(), getEntries(bytes.data(), need / 16));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedFile(std::string("bad t3b-json field: ") + e.what());
  }
}

void writeTensor(const std::filesystem::path& path, const DenseTensor3& a) {
  if (path.extension() == ".json") {
    const std::string s = tensorToJson(a) + "\n";
    writeAll(path, s.data(), s.size());
  } else {
    writeT3b(path, a);
  }
}

DenseTensor3 readTensor(const std::filesystem::path& path) {
  if (path.extension() == ".json") {
    const auto bytes = readAll(path);
    return tensorFromJson(std::string(bytes.begin(), bytes.end()));
  }
  return readT3b(path);
}

std::string solverReport(const std::string& method, const SolverConfig& cfg, const std::vector<EigenPair>& pairs) {
  nlohmann::json j;
  j["method"] = method;
  j["config"] = configJson(cfg);
  bool converged = true;
  std::size_t iterations = 0;
  j["pairs"] = nlohmann::json::array();
  for (const auto& p : pairs) {
    converged = converged && p.converged;
    iterations += p.iterations;
    j["pairs"].push_back({{"eigentube", tubeJson(p.eigentube)},
                          {"residualNorm", p.residualNorm},
                          {"iterations", p.iterations},
                          {"converged", p.converged},
                          {"residuals", p.trace}});
  }
  j["converged"] = converged;
  j["iterations"] = iterations;
  return j.dump(2);
}

std::string solverReport(const std::string& method, const SolverConfig& cfg, const SchurResult& result,
                         double residual) {
  nlohmann::json j;
  j["method"] = method;
  j["config"] = configJson(cfg);
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  j["residualNorm"] = residual;
  j["residuals"] = result.trace;
  j["eigentubes"] = nlohmann::json::array();
  for (const auto& t : result.diagonalTubes()) j["eigentubes"].push_back(tubeJson(t));
  return j.dump(2);
}

std::filesystem::path writeFactorManifest(const std::filesystem::path& dir, const std::string& factorization,
                                          const std::map<std::string, DenseTensor3>& factors,
                                          const std::map<std::string, double>& residuals) {
  std::filesystem::create_directories(dir);
  nlohmann::json j;
  j["factorization"] = factorization;
  j["factors"] = nlohmann::json::object();
  for (const auto& [name, t] : factors) {
    const auto file = dir / (name + ".t3b");
    writeT3b(file, t);
    j["factors"][name] = file.filename().string();
  }
  j["residuals"] = residuals;
  const auto path = dir / "manifest.json";
  const std::string s = j.dump(2) + "\n";
  writeAll(path, s.data(), s.size());
  return path;
}

}  // namespace tubal
