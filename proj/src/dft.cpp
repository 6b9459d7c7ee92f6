#include "tubal/dft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace tubal::dft {
namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const noexcept { fftw_destroy_plan(plan); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// FFTW planning is not thread-safe; execution through fftw_execute_dft is.
fftw_plan planFor(std::size_t n, std::size_t count, int sign, cplx* sample) {
  static std::mutex mutex;
  static std::map<std::tuple<std::size_t, std::size_t, int>, Plan> cache;

  std::lock_guard lock(mutex);
  auto key = std::make_tuple(n, count, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second.get();

  const int len = static_cast<int>(n);
  auto* buf = reinterpret_cast<fftw_complex*>(sample);
  fftw_plan plan = fftw_plan_many_dft(1, &len, static_cast<int>(count), buf, nullptr,
                                      static_cast<int>(count), 1, buf, nullptr,
                                      static_cast<int>(count), 1, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, Plan(plan));
  return plan;
}

void transform(std::span<cplx> data, std::size_t n, std::size_t count, int sign) {
  if (n <= 1 || count == 0) return;
  auto* buf = data.data();
  fftw_plan plan = planFor(n, count, sign, buf);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf),
                   reinterpret_cast<fftw_complex*>(buf));
}

}  // namespace

void forwardTubes(std::span<cplx> data, std::size_t tubeLength, std::size_t tubeCount) {
  transform(data, tubeLength, tubeCount, FFTW_FORWARD);
}

void inverseTubes(std::span<cplx> data, std::size_t tubeLength, std::size_t tubeCount) {
  transform(data, tubeLength, tubeCount, FFTW_BACKWARD);
  if (tubeLength <= 1) return;
  const double scale = 1.0 / static_cast<double>(tubeLength);
  for (auto& v : data) v *= scale;
}

}  // namespace tubal::dft
