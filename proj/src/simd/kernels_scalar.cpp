#include <cmath>
#include <cstring>

#include "melro/simd/kernels.hpp"

// Scalar reference kernels. These define the semantics; the SIMD variants
// must agree with them within float rounding (see test_simd_kernels).

namespace melro::simd {
namespace scalar {

namespace {

template <typename T>
void add_impl(T* o, const T* a, const T* b, int64_t n) {
  for (int64_t i = 0; i < n; ++i) o[i] = a[i] + b[i];
}
template <typename T>
void sub_impl(T* o, const T* a, const T* b, int64_t n) {
  for (int64_t i = 0; i < n; ++i) o[i] = a[i] - b[i];
}
template <typename T>
void mul_impl(T* o, const T* a, const T* b, int64_t n) {
  for (int64_t i = 0; i < n; ++i) o[i] = a[i] * b[i];
}
template <typename T>
void scale_impl(T* o, const T* a, T s, int64_t n) {
  for (int64_t i = 0; i < n; ++i) o[i] = a[i] * s;
}
template <typename T>
void axpy_impl(T* y, T a, const T* x, int64_t n) {
  for (int64_t i = 0; i < n; ++i) y[i] += a * x[i];
}
template <typename T>
T dot_impl(const T* a, const T* b, int64_t n) {
  T s = 0;
  for (int64_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}
template <typename T>
double sum_impl(const T* a, int64_t n) {
  double s = 0;
  for (int64_t i = 0; i < n; ++i) s += a[i];
  return s;
}
template <typename T>
double sumsq_impl(const T* a, int64_t n) {
  double s = 0;
  for (int64_t i = 0; i < n; ++i) s += static_cast<double>(a[i]) * a[i];
  return s;
}
template <typename T>
double sumabsdiff_impl(const T* a, const T* b, int64_t n) {
  double s = 0;
  for (int64_t i = 0; i < n; ++i) s += std::abs(static_cast<double>(a[i]) - b[i]);
  return s;
}
template <typename T>
void exp_impl(T* o, const T* a, int64_t n) {
  for (int64_t i = 0; i < n; ++i) o[i] = std::exp(a[i]);
}
template <typename T>
void tanh_impl(T* o, const T* a, int64_t n) {
  for (int64_t i = 0; i < n; ++i) o[i] = std::tanh(a[i]);
}
template <typename T>
void sigmoid_impl(T* o, const T* a, int64_t n) {
  for (int64_t i = 0; i < n; ++i) o[i] = T(1) / (T(1) + std::exp(-a[i]));
}

// GELU, tanh approximation.
template <typename T>
void gelu_impl(T* o, const T* a, int64_t n) {
  const T c = T(0.7978845608028654);  // sqrt(2/pi)
  for (int64_t i = 0; i < n; ++i) {
    const T x = a[i];
    const T u = c * (x + T(0.044715) * x * x * x);
    o[i] = T(0.5) * x * (T(1) + std::tanh(u));
  }
}
template <typename T>
void gelu_grad_impl(T* gx, const T* x, const T* gy, int64_t n) {
  const T c = T(0.7978845608028654);
  for (int64_t i = 0; i < n; ++i) {
    const T xi = x[i];
    const T u = c * (xi + T(0.044715) * xi * xi * xi);
    const T t = std::tanh(u);
    const T du = c * (T(1) + T(3) * T(0.044715) * xi * xi);
    gx[i] += gy[i] * (T(0.5) * (T(1) + t) + T(0.5) * xi * (T(1) - t * t) * du);
  }
}

template <typename T>
void softmax_row_impl(T* p, int64_t n) {
  T m = p[0];
  for (int64_t i = 1; i < n; ++i) m = p[i] > m ? p[i] : m;
  T s = 0;
  for (int64_t i = 0; i < n; ++i) {
    p[i] = std::exp(p[i] - m);
    s += p[i];
  }
  const T inv = T(1) / s;
  for (int64_t i = 0; i < n; ++i) p[i] *= inv;
}

template <typename T>
void matmul_nn_impl(T* c, const T* a, const T* b, int64_t m, int64_t k,
                    int64_t n, bool acc) {
  for (int64_t i = 0; i < m; ++i) {
    T* crow = c + i * n;
    if (!acc) std::memset(crow, 0, sizeof(T) * n);
    const T* arow = a + i * k;
    for (int64_t p = 0; p < k; ++p) {
      const T av = arow[p];
      const T* brow = b + p * n;
      for (int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

template <typename T>
void matmul_nt_impl(T* c, const T* a, const T* b, int64_t m, int64_t k,
                    int64_t n, bool acc) {
  for (int64_t i = 0; i < m; ++i) {
    const T* arow = a + i * k;
    T* crow = c + i * n;
    for (int64_t j = 0; j < n; ++j) {
      const T d = dot_impl(arow, b + j * k, k);
      crow[j] = acc ? crow[j] + d : d;
    }
  }
}

template <typename T>
void matmul_tn_impl(T* c, const T* a, const T* b, int64_t m, int64_t k,
                    int64_t n, bool acc) {
  // a is (k x m): c[i][j] += sum_p a[p][i] * b[p][j]
  if (!acc) std::memset(c, 0, sizeof(T) * m * n);
  for (int64_t p = 0; p < k; ++p) {
    const T* arow = a + p * m;
    const T* brow = b + p * n;
    for (int64_t i = 0; i < m; ++i) {
      const T av = arow[i];
      T* crow = c + i * n;
      for (int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

template <typename T>
void cmul_impl(T* yr, T* yi, const T* ar, const T* ai, const T* br,
               const T* bi, int64_t n) {
  for (int64_t i = 0; i < n; ++i) {
    const T r = ar[i] * br[i] - ai[i] * bi[i];
    const T im = ar[i] * bi[i] + ai[i] * br[i];
    yr[i] = r;
    yi[i] = im;
  }
}

}  // namespace

const Kernels& table() {
  static const Kernels k = {
      add_impl<float>,     sub_impl<float>,         mul_impl<float>,
      scale_impl<float>,   axpy_impl<float>,        dot_impl<float>,
      sum_impl<float>,     sumsq_impl<float>,       sumabsdiff_impl<float>,
      exp_impl<float>,     tanh_impl<float>,        sigmoid_impl<float>,
      gelu_impl<float>,    gelu_grad_impl<float>,   softmax_row_impl<float>,
      matmul_nn_impl<float>, matmul_nt_impl<float>, matmul_tn_impl<float>,
      cmul_impl<float>,
  };
  return k;
}

}  // namespace scalar

// Double overloads: scalar only.
void vadd(double* o, const double* a, const double* b, int64_t n) { scalar::add_impl(o, a, b, n); }
void vsub(double* o, const double* a, const double* b, int64_t n) { scalar::sub_impl(o, a, b, n); }
void vmul(double* o, const double* a, const double* b, int64_t n) { scalar::mul_impl(o, a, b, n); }
void vscale(double* o, const double* a, double s, int64_t n) { scalar::scale_impl(o, a, s, n); }
void vaxpy(double* y, double a, const double* x, int64_t n) { scalar::axpy_impl(y, a, x, n); }
double vdot(const double* a, const double* b, int64_t n) { return scalar::dot_impl(a, b, n); }
double vsum(const double* a, int64_t n) { return scalar::sum_impl(a, n); }
double vsumsq(const double* a, int64_t n) { return scalar::sumsq_impl(a, n); }
double vsumabsdiff(const double* a, const double* b, int64_t n) { return scalar::sumabsdiff_impl(a, b, n); }
void vexp(double* o, const double* a, int64_t n) { scalar::exp_impl(o, a, n); }
void vtanh(double* o, const double* a, int64_t n) { scalar::tanh_impl(o, a, n); }
void vsigmoid(double* o, const double* a, int64_t n) { scalar::sigmoid_impl(o, a, n); }
void vgelu(double* o, const double* a, int64_t n) { scalar::gelu_impl(o, a, n); }
void vgelu_grad(double* gx, const double* x, const double* gy, int64_t n) { scalar::gelu_grad_impl(gx, x, gy, n); }
void softmax_row(double* p, int64_t n) { scalar::softmax_row_impl(p, n); }
void matmul_nn(double* c, const double* a, const double* b, int64_t m, int64_t k, int64_t n, bool acc) { scalar::matmul_nn_impl(c, a, b, m, k, n, acc); }
void matmul_nt(double* c, const double* a, const double* b, int64_t m, int64_t k, int64_t n, bool acc) { scalar::matmul_nt_impl(c, a, b, m, k, n, acc); }
void matmul_tn(double* c, const double* a, const double* b, int64_t m, int64_t k, int64_t n, bool acc) { scalar::matmul_tn_impl(c, a, b, m, k, n, acc); }
void cmul(double* yr, double* yi, const double* ar, const double* ai, const double* br, const double* bi, int64_t n) { scalar::cmul_impl(yr, yi, ar, ai, br, bi, n); }

}  // namespace melro::simd
