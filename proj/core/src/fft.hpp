#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace fockida::detail {

// FFTW planning is not thread-safe; execution with new-array calls is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Batched 1-D transforms of `count` contiguous rows of length `length`, in place.
class RowFft {
 public:
  RowFft(int length, int count, int sign) : length_(length), count_(count) {
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(length) * count);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan_ = fftw_plan_many_dft(1, &length_, count_, p, nullptr, 1, length_, p, nullptr, 1, length_, sign,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  ~RowFft() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  RowFft(const RowFft&) = delete;
  RowFft& operator=(const RowFft&) = delete;

  void execute(std::vector<std::complex<double>>& data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan_, p, p);
  }

 private:
  int length_;
  int count_;
  fftw_plan plan_;
};

}  // namespace fockida::detail
