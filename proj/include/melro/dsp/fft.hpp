#pragma once

#include <complex>
#include <vector>

#include "melro/common.hpp"

namespace melro::dsp {

// Iterative radix-2 complex FFT with precomputed twiddles. Sizes are
// powers of two (all STFT windows used here are).
template <typename T>
class FftPlan {
 public:
  explicit FftPlan(int n);

  int size() const { return n_; }

  // In-place, unnormalized forward transform (exp(-i 2 pi k n / N)).
  void forward(std::complex<T>* x) const { run(x, false); }
  // In-place, unnormalized inverse transform (exp(+i 2 pi k n / N)).
  // Caller scales by 1/N where needed.
  void inverse(std::complex<T>* x) const { run(x, true); }

 private:
  void run(std::complex<T>* x, bool inverse) const;

  int n_;
  std::vector<int> bitrev_;
  std::vector<std::complex<T>> twiddle_;      // forward
  std::vector<std::complex<T>> twiddle_inv_;  // inverse
};

// One-sided real FFT pair built on an N/2-point complex plan.
// rfft: N real samples -> N/2+1 bins, unnormalized forward DFT.
// irfft: exact inverse of rfft (includes the 1/N factor).
template <typename T>
class RealFft {
 public:
  explicit RealFft(int n);

  int size() const { return n_; }
  int bins() const { return n_ / 2 + 1; }

  void forward(const T* in, std::complex<T>* out) const;
  void inverse(const std::complex<T>* in, T* out) const;

 private:
  int n_;
  FftPlan<T> half_;
  std::vector<std::complex<T>> rot_;  // e^{-i pi k / (n/2)} untangle factors
  mutable std::vector<std::complex<T>> work_;
};

extern template class FftPlan<float>;
extern template class FftPlan<double>;
extern template class RealFft<float>;
extern template class RealFft<double>;

}  // namespace melro::dsp
