#pragma once

// Thin wrapper around FFTW complex transforms with a per-size plan cache.
// Plans are created once under a mutex (the FFTW planner is not thread-safe);
// execution uses the new-array interface so concurrent transforms of the same
// size are safe as long as each call owns its buffers.

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace modwave {

using cvec = std::vector<std::complex<double>>;

namespace detail {

class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans p;
    return p;
  }

  void execute(cvec& data, int sign) {
    const int n = static_cast<int>(data.size());
    if (n == 0) return;
    fftw_plan plan = get_plan(n, sign);
    fftw_complex* buf = static_cast<fftw_complex*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n)));
    if (!buf) throw std::bad_alloc();
    for (int i = 0; i < n; ++i) {
      buf[i][0] = data[static_cast<size_t>(i)].real();
      buf[i][1] = data[static_cast<size_t>(i)].imag();
    }
    fftw_execute_dft(plan, buf, buf);
    for (int i = 0; i < n; ++i)
      data[static_cast<size_t>(i)] = {buf[i][0], buf[i][1]};
    fftw_free(buf);
  }

 private:
  FftPlans() = default;
  ~FftPlans() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get_plan(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    fftw_complex* buf = static_cast<fftw_complex*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n)));
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace detail

// Unnormalized DFT: a_j -> sum_n a_n exp(-2 pi i j n / N).
inline void fft_forward(cvec& data) {
  detail::FftPlans::instance().execute(data, FFTW_FORWARD);
}

// Unnormalized inverse: a_j -> sum_n a_n exp(+2 pi i j n / N).
inline void fft_backward(cvec& data) {
  detail::FftPlans::instance().execute(data, FFTW_BACKWARD);
}

}  // namespace modwave
