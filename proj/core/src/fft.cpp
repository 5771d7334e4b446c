#include "wcop/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace wcop::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // FFTW_ESTIMATE leaves the scratch buffer untouched; UNALIGNED lets the
    // plan run on arbitrary std::complex storage via fftw_execute_dft.
    std::vector<cplx> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<cplx> data, int sign) {
  if (data.size() < 2) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(data.size(), sign), buf, buf);
}

}  // namespace

void forward(std::span<cplx> data) { run(data, FFTW_FORWARD); }
void backward(std::span<cplx> data) { run(data, FFTW_BACKWARD); }

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace wcop::fft
