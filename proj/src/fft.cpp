#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace enpp::detail {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// The FFTW planner is not thread safe; execution of an existing plan through
// the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::size_t real_size = static_cast<std::size_t>(n) * n;
  const std::size_t complex_size = static_cast<std::size_t>(n) * (n / 2 + 1);
  std::vector<double> r(real_size);
  std::vector<std::complex<double>> c(complex_size);
  auto* cptr = reinterpret_cast<fftw_complex*>(c.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

  Plans p;
  p.forward = fftw_plan_dft_r2c_2d(n, n, r.data(), cptr, flags);
  p.inverse = fftw_plan_dft_c2r_2d(n, n, cptr, r.data(), flags);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void fft_forward(int n, const double* in, std::complex<double>* out) {
  const Plans& p = plans_for(n);
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void fft_inverse(int n, const std::complex<double>* in, double* out) {
  const Plans& p = plans_for(n);
  // Multi-dimensional c2r overwrites its input, so work on a copy.
  thread_local std::vector<std::complex<double>> scratch;
  const std::size_t complex_size = static_cast<std::size_t>(n) * (n / 2 + 1);
  scratch.assign(in, in + complex_size);
  fftw_execute_dft_c2r(p.inverse, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace enpp::detail
