// AVX2 + FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and is only entered when CPUID reports both features.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "melro/simd/kernels.hpp"

namespace melro::simd {
namespace avx2 {

namespace {

inline float hsum8(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  lo = _mm_hadd_ps(lo, lo);
  lo = _mm_hadd_ps(lo, lo);
  return _mm_cvtss_f32(lo);
}

// exp on 8 lanes, cephes-style polynomial (|rel err| ~ 1 ulp over the
// clamped range).
inline __m256 exp256(__m256 x) {
  const __m256 hi = _mm256_set1_ps(88.3762626647950f);
  const __m256 lo = _mm256_set1_ps(-88.3762626647949f);
  const __m256 log2e = _mm256_set1_ps(1.44269504088896341f);
  const __m256 c1 = _mm256_set1_ps(0.693359375f);
  const __m256 c2 = _mm256_set1_ps(-2.12194440e-4f);
  const __m256 p0 = _mm256_set1_ps(1.9875691500e-4f);
  const __m256 p1 = _mm256_set1_ps(1.3981999507e-3f);
  const __m256 p2 = _mm256_set1_ps(8.3334519073e-3f);
  const __m256 p3 = _mm256_set1_ps(4.1665795894e-2f);
  const __m256 p4 = _mm256_set1_ps(1.6666665459e-1f);
  const __m256 p5 = _mm256_set1_ps(5.0000001201e-1f);
  const __m256 one = _mm256_set1_ps(1.0f);

  x = _mm256_min_ps(x, hi);
  x = _mm256_max_ps(x, lo);

  __m256 fx = _mm256_fmadd_ps(x, log2e, _mm256_set1_ps(0.5f));
  fx = _mm256_floor_ps(fx);
  x = _mm256_fnmadd_ps(fx, c1, x);
  x = _mm256_fnmadd_ps(fx, c2, x);

  __m256 z = _mm256_mul_ps(x, x);
  __m256 y = p0;
  y = _mm256_fmadd_ps(y, x, p1);
  y = _mm256_fmadd_ps(y, x, p2);
  y = _mm256_fmadd_ps(y, x, p3);
  y = _mm256_fmadd_ps(y, x, p4);
  y = _mm256_fmadd_ps(y, x, p5);
  y = _mm256_fmadd_ps(y, z, x);
  y = _mm256_add_ps(y, one);

  __m256i imm = _mm256_cvtps_epi32(fx);
  imm = _mm256_add_epi32(imm, _mm256_set1_epi32(0x7f));
  imm = _mm256_slli_epi32(imm, 23);
  return _mm256_mul_ps(y, _mm256_castsi256_ps(imm));
}

inline __m256 sigmoid8(__m256 x) {
  const __m256 one = _mm256_set1_ps(1.0f);
  __m256 e = exp256(_mm256_sub_ps(_mm256_setzero_ps(), x));
  return _mm256_div_ps(one, _mm256_add_ps(one, e));
}

inline __m256 tanh8(__m256 x) {
  // tanh(x) = 2*sigmoid(2x) - 1, clamped so exp stays in range.
  const __m256 two = _mm256_set1_ps(2.0f);
  const __m256 one = _mm256_set1_ps(1.0f);
  __m256 s = sigmoid8(_mm256_mul_ps(two, x));
  return _mm256_fmsub_ps(two, s, one);
}

void vadd(float* o, const float* a, const float* b, int64_t n) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(o + i, _mm256_add_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  for (; i < n; ++i) o[i] = a[i] + b[i];
}

void vsub(float* o, const float* a, const float* b, int64_t n) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(o + i, _mm256_sub_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  for (; i < n; ++i) o[i] = a[i] - b[i];
}

void vmul(float* o, const float* a, const float* b, int64_t n) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(o + i, _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  for (; i < n; ++i) o[i] = a[i] * b[i];
}

void vscale(float* o, const float* a, float s, int64_t n) {
  const __m256 vs = _mm256_set1_ps(s);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(o + i, _mm256_mul_ps(_mm256_loadu_ps(a + i), vs));
  for (; i < n; ++i) o[i] = a[i] * s;
}

void vaxpy(float* y, float a, const float* x, int64_t n) {
  const __m256 va = _mm256_set1_ps(a);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(y + i, _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

float vdot(const float* a, const float* b, int64_t n) {
  __m256 acc0 = _mm256_setzero_ps();
  __m256 acc1 = _mm256_setzero_ps();
  int64_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
    acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 8), _mm256_loadu_ps(b + i + 8), acc1);
  }
  for (; i + 8 <= n; i += 8)
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
  float s = hsum8(_mm256_add_ps(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double vsum(const float* a, int64_t n) {
  double total = 0;
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 v = _mm256_loadu_ps(a + i);
    total += hsum8(v);
  }
  for (; i < n; ++i) total += a[i];
  return total;
}

double vsumsq(const float* a, int64_t n) {
  double total = 0;
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 v = _mm256_loadu_ps(a + i);
    total += hsum8(_mm256_mul_ps(v, v));
  }
  for (; i < n; ++i) total += static_cast<double>(a[i]) * a[i];
  return total;
}

double vsumabsdiff(const float* a, const float* b, int64_t n) {
  const __m256 signmask = _mm256_castsi256_ps(_mm256_set1_epi32(0x7fffffff));
  double total = 0;
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 d = _mm256_sub_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i));
    total += hsum8(_mm256_and_ps(d, signmask));
  }
  for (; i < n; ++i) total += std::abs(static_cast<double>(a[i]) - b[i]);
  return total;
}

void vexp(float* o, const float* a, int64_t n) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(o + i, exp256(_mm256_loadu_ps(a + i)));
  for (; i < n; ++i) o[i] = std::exp(a[i]);
}

void vtanh(float* o, const float* a, int64_t n) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(o + i, tanh8(_mm256_loadu_ps(a + i)));
  for (; i < n; ++i) o[i] = std::tanh(a[i]);
}

void vsigmoid(float* o, const float* a, int64_t n) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(o + i, sigmoid8(_mm256_loadu_ps(a + i)));
  for (; i < n; ++i) o[i] = 1.0f / (1.0f + std::exp(-a[i]));
}

void vgelu(float* o, const float* a, int64_t n) {
  const __m256 c = _mm256_set1_ps(0.7978845608028654f);
  const __m256 k = _mm256_set1_ps(0.044715f);
  const __m256 half = _mm256_set1_ps(0.5f);
  const __m256 one = _mm256_set1_ps(1.0f);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 x = _mm256_loadu_ps(a + i);
    __m256 x3 = _mm256_mul_ps(_mm256_mul_ps(x, x), x);
    __m256 u = _mm256_mul_ps(c, _mm256_fmadd_ps(k, x3, x));
    __m256 t = tanh8(u);
    _mm256_storeu_ps(o + i, _mm256_mul_ps(_mm256_mul_ps(half, x), _mm256_add_ps(one, t)));
  }
  for (; i < n; ++i) {
    const float x = a[i];
    const float u = 0.7978845608028654f * (x + 0.044715f * x * x * x);
    o[i] = 0.5f * x * (1.0f + std::tanh(u));
  }
}

void vgelu_grad(float* gx, const float* x, const float* gy, int64_t n) {
  const __m256 c = _mm256_set1_ps(0.7978845608028654f);
  const __m256 k3 = _mm256_set1_ps(3.0f * 0.044715f);
  const __m256 k = _mm256_set1_ps(0.044715f);
  const __m256 half = _mm256_set1_ps(0.5f);
  const __m256 one = _mm256_set1_ps(1.0f);
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 xi = _mm256_loadu_ps(x + i);
    __m256 x2 = _mm256_mul_ps(xi, xi);
    __m256 u = _mm256_mul_ps(c, _mm256_fmadd_ps(k, _mm256_mul_ps(x2, xi), xi));
    __m256 t = tanh8(u);
    __m256 du = _mm256_mul_ps(c, _mm256_fmadd_ps(k3, x2, one));
    __m256 sech2 = _mm256_fnmadd_ps(t, t, one);
    __m256 d = _mm256_fmadd_ps(_mm256_mul_ps(half, xi), _mm256_mul_ps(sech2, du),
                               _mm256_mul_ps(half, _mm256_add_ps(one, t)));
    _mm256_storeu_ps(gx + i, _mm256_fmadd_ps(_mm256_loadu_ps(gy + i), d, _mm256_loadu_ps(gx + i)));
  }
  for (; i < n; ++i) {
    const float xi = x[i];
    const float u = 0.7978845608028654f * (xi + 0.044715f * xi * xi * xi);
    const float t = std::tanh(u);
    const float du = 0.7978845608028654f * (1.0f + 3.0f * 0.044715f * xi * xi);
    gx[i] += gy[i] * (0.5f * (1.0f + t) + 0.5f * xi * (1.0f - t * t) * du);
  }
}

void softmax_row(float* p, int64_t n) {
  float m = p[0];
  int64_t i = 1;
  if (n >= 8) {
    __m256 vm = _mm256_loadu_ps(p);
    for (i = 8; i + 8 <= n; i += 8) vm = _mm256_max_ps(vm, _mm256_loadu_ps(p + i));
    float lanes[8];
    _mm256_storeu_ps(lanes, vm);
    m = lanes[0];
    for (int j = 1; j < 8; ++j) m = lanes[j] > m ? lanes[j] : m;
  }
  for (; i < n; ++i) m = p[i] > m ? p[i] : m;

  const __m256 vmax = _mm256_set1_ps(m);
  __m256 vs = _mm256_setzero_ps();
  i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 e = exp256(_mm256_sub_ps(_mm256_loadu_ps(p + i), vmax));
    _mm256_storeu_ps(p + i, e);
    vs = _mm256_add_ps(vs, e);
  }
  float s = hsum8(vs);
  for (; i < n; ++i) {
    p[i] = std::exp(p[i] - m);
    s += p[i];
  }
  const float inv = 1.0f / s;
  const __m256 vinv = _mm256_set1_ps(inv);
  i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(p + i, _mm256_mul_ps(_mm256_loadu_ps(p + i), vinv));
  for (; i < n; ++i) p[i] *= inv;
}

void matmul_nn(float* c, const float* a, const float* b, int64_t m, int64_t k,
               int64_t n, bool acc) {
  for (int64_t i = 0; i < m; ++i) {
    float* crow = c + i * n;
    if (!acc) std::memset(crow, 0, sizeof(float) * n);
    const float* arow = a + i * k;
    for (int64_t p = 0; p < k; ++p) {
      vaxpy(crow, arow[p], b + p * n, n);
    }
  }
}

void matmul_nt(float* c, const float* a, const float* b, int64_t m, int64_t k,
               int64_t n, bool acc) {
  for (int64_t i = 0; i < m; ++i) {
    const float* arow = a + i * k;
    float* crow = c + i * n;
    for (int64_t j = 0; j < n; ++j) {
      const float d = vdot(arow, b + j * k, k);
      crow[j] = acc ? crow[j] + d : d;
    }
  }
}

void matmul_tn(float* c, const float* a, const float* b, int64_t m, int64_t k,
               int64_t n, bool acc) {
  if (!acc) std::memset(c, 0, sizeof(float) * m * n);
  for (int64_t p = 0; p < k; ++p) {
    const float* arow = a + p * m;
    const float* brow = b + p * n;
    for (int64_t i = 0; i < m; ++i) {
      if (arow[i] != 0.0f || n < 8) vaxpy(c + i * n, arow[i], brow, n);
    }
  }
}

void cmul(float* yr, float* yi, const float* ar, const float* ai,
          const float* br, const float* bi, int64_t n) {
  int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 xr = _mm256_loadu_ps(ar + i);
    __m256 xi = _mm256_loadu_ps(ai + i);
    __m256 wr = _mm256_loadu_ps(br + i);
    __m256 wi = _mm256_loadu_ps(bi + i);
    _mm256_storeu_ps(yr + i, _mm256_fnmadd_ps(xi, wi, _mm256_mul_ps(xr, wr)));
    _mm256_storeu_ps(yi + i, _mm256_fmadd_ps(xr, wi, _mm256_mul_ps(xi, wr)));
  }
  for (; i < n; ++i) {
    const float r = ar[i] * br[i] - ai[i] * bi[i];
    const float im = ar[i] * bi[i] + ai[i] * br[i];
    yr[i] = r;
    yi[i] = im;
  }
}

}  // namespace

const Kernels& table() {
  static const Kernels k = {
      vadd,  vsub,    vmul,    vscale,    vaxpy,      vdot,
      vsum,  vsumsq,  vsumabsdiff,        vexp,       vtanh, vsigmoid,
      vgelu, vgelu_grad,       softmax_row,
      matmul_nn,      matmul_nt,          matmul_tn,  cmul,
  };
  return k;
}

}  // namespace avx2
}  // namespace melro::simd

#endif  // __AVX2__ && __FMA__
