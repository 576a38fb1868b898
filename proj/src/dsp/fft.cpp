#include "melro/dsp/fft.hpp"

#include <cmath>

namespace melro::dsp {

template <typename T>
FftPlan<T>::FftPlan(int n) : n_(n) {
  if (!is_pow2(n)) throw DataError("FFT size must be a power of two");
  bitrev_.resize(n);
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
    bitrev_[i] = r;
  }
  // Twiddles in double, rounded once, so float plans carry well-rounded
  // coefficients.
  twiddle_.resize(n / 2);
  twiddle_inv_.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * M_PI * k / n;
    twiddle_[k] = std::complex<T>(static_cast<T>(std::cos(ang)), static_cast<T>(std::sin(ang)));
    twiddle_inv_[k] = std::conj(twiddle_[k]);
  }
}

template <typename T>
void FftPlan<T>::run(std::complex<T>* x, bool inverse) const {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    const int j = bitrev_[i];
    if (i < j) std::swap(x[i], x[j]);
  }
  const auto& tw = inverse ? twiddle_inv_ : twiddle_;
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int i = 0; i < n; i += len) {
      const std::complex<T>* w = tw.data();
      for (int j = 0; j < half; ++j) {
        const std::complex<T> u = x[i + j];
        const std::complex<T> v = x[i + j + half] * (*w);
        x[i + j] = u + v;
        x[i + j + half] = u - v;
        w += step;
      }
    }
  }
}

template <typename T>
RealFft<T>::RealFft(int n) : n_(n), half_(n / 2) {
  if (n < 4 || !is_pow2(n)) throw DataError("real FFT size must be a power of two >= 4");
  const int m = n / 2;
  rot_.resize(m / 2 + 1);
  for (int k = 0; k <= m / 2; ++k) {
    const double ang = -M_PI * k / m;  // == -2 pi k / n
    rot_[k] = std::complex<T>(static_cast<T>(std::cos(ang)), static_cast<T>(std::sin(ang)));
  }
  work_.resize(m);
}

template <typename T>
void RealFft<T>::forward(const T* in, std::complex<T>* out) const {
  const int m = n_ / 2;
  auto& z = work_;
  for (int j = 0; j < m; ++j) z[j] = std::complex<T>(in[2 * j], in[2 * j + 1]);
  half_.forward(z.data());

  // Untangle: X[k] = E[k] + e^{-2 pi i k / n} O[k], where E/O are the
  // transforms of even/odd samples recovered from the packed spectrum.
  const T h = T(0.5);
  for (int k = 0; k <= m / 2; ++k) {
    const std::complex<T> zk = z[k];
    const std::complex<T> zmk = std::conj(z[(m - k) % m]);
    const std::complex<T> even = (zk + zmk) * h;
    const std::complex<T> odd = std::complex<T>(0, -h) * (zk - zmk);
    out[k] = even + rot_[k] * odd;
  }
  for (int k = m / 2 + 1; k < m; ++k) {
    const std::complex<T> zk = z[k];
    const std::complex<T> zmk = std::conj(z[m - k]);
    const std::complex<T> even = (zk + zmk) * h;
    const std::complex<T> odd = std::complex<T>(0, -h) * (zk - zmk);
    const std::complex<T> w = std::conj(-rot_[m - k]);  // e^{-i pi k/m} for k > m/2
    out[k] = even + w * odd;
  }
  // Nyquist: X[n/2] = E[0] - O[0].
  const std::complex<T> z0 = z[0];
  out[m] = std::complex<T>(z0.real() - z0.imag(), 0);
  out[0] = std::complex<T>(z0.real() + z0.imag(), 0);
}

template <typename T>
void RealFft<T>::inverse(const std::complex<T>* in, T* out) const {
  const int m = n_ / 2;
  auto& z = work_;
  // Re-tangle into the packed m-point spectrum, then inverse transform.
  for (int k = 0; k < m; ++k) {
    std::complex<T> xk = (k <= m) ? in[k] : std::complex<T>(0);
    std::complex<T> xmk = std::conj(in[m - k]);
    if (k == 0) {
      xk = in[0];
      xmk = std::conj(in[m]);
      // handled via the general formula below with w = 1
    }
    const std::complex<T> w =
        (k <= m / 2) ? std::conj(rot_[k]) : -rot_[m - k];  // e^{+i pi k/m}
    const std::complex<T> even = (xk + xmk) * T(0.5);
    const std::complex<T> odd = (xk - xmk) * T(0.5) * w;
    z[k] = std::complex<T>(even.real() - odd.imag(), even.imag() + odd.real());
  }
  half_.inverse(z.data());
  const T scale = T(1) / static_cast<T>(m);
  for (int j = 0; j < m; ++j) {
    out[2 * j] = z[j].real() * scale;
    out[2 * j + 1] = z[j].imag() * scale;
  }
}

template class FftPlan<float>;
template class FftPlan<double>;
template class RealFft<float>;
template class RealFft<double>;

}  // namespace melro::dsp
