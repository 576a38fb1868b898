#pragma once

#include <cstdint>

// Data-parallel inner loops behind the numeric code. Every float kernel has
// a scalar reference implementation and an AVX2+FMA variant; the active
// backend is picked once at runtime from CPUID and can be forced (used by
// the equivalence tests). Double overloads are scalar-only: they exist for
// the high-precision gradient checks, not for speed.
//
// Determinism: a given backend always reduces in the same order, so results
// are bitwise reproducible run-to-run on the same machine. Scalar and AVX2
// reductions may differ at the usual float rounding level.

namespace melro::simd {

enum class Backend { kScalar = 0, kAvx2 = 1 };

Backend active_backend();
void force_backend(Backend b);
void reset_backend();  // back to auto-detected
const char* backend_name(Backend b);
bool avx2_supported();

struct Kernels {
  void (*vadd)(float*, const float*, const float*, int64_t);
  void (*vsub)(float*, const float*, const float*, int64_t);
  void (*vmul)(float*, const float*, const float*, int64_t);
  void (*vscale)(float*, const float*, float, int64_t);
  void (*vaxpy)(float*, float, const float*, int64_t);
  float (*vdot)(const float*, const float*, int64_t);
  double (*vsum)(const float*, int64_t);
  double (*vsumsq)(const float*, int64_t);
  double (*vsumabsdiff)(const float*, const float*, int64_t);
  void (*vexp)(float*, const float*, int64_t);
  void (*vtanh)(float*, const float*, int64_t);
  void (*vsigmoid)(float*, const float*, int64_t);
  void (*vgelu)(float*, const float*, int64_t);
  void (*vgelu_grad)(float*, const float*, const float*, int64_t);
  void (*softmax_row)(float*, int64_t);
  // c (m x n) = a (m x k) * b (k x n); accumulate adds into c.
  void (*matmul_nn)(float*, const float*, const float*, int64_t, int64_t,
                    int64_t, bool);
  // c (m x n) = a (m x k) * b^T where b is (n x k).
  void (*matmul_nt)(float*, const float*, const float*, int64_t, int64_t,
                    int64_t, bool);
  // c (m x n) = a^T * b where a is (k x m), b is (k x n).
  void (*matmul_tn)(float*, const float*, const float*, int64_t, int64_t,
                    int64_t, bool);
  // Complex multiply on separate real/imag planes: y = a * b.
  void (*cmul)(float*, float*, const float*, const float*, const float*,
               const float*, int64_t);
};

const Kernels& kernels();           // active backend
const Kernels& kernels(Backend b);  // explicit backend (tests)

// Convenience forwarders.
inline void vadd(float* o, const float* a, const float* b, int64_t n) { kernels().vadd(o, a, b, n); }
inline void vsub(float* o, const float* a, const float* b, int64_t n) { kernels().vsub(o, a, b, n); }
inline void vmul(float* o, const float* a, const float* b, int64_t n) { kernels().vmul(o, a, b, n); }
inline void vscale(float* o, const float* a, float s, int64_t n) { kernels().vscale(o, a, s, n); }
inline void vaxpy(float* y, float a, const float* x, int64_t n) { kernels().vaxpy(y, a, x, n); }
inline float vdot(const float* a, const float* b, int64_t n) { return kernels().vdot(a, b, n); }
inline double vsum(const float* a, int64_t n) { return kernels().vsum(a, n); }
inline double vsumsq(const float* a, int64_t n) { return kernels().vsumsq(a, n); }
inline double vsumabsdiff(const float* a, const float* b, int64_t n) { return kernels().vsumabsdiff(a, b, n); }
inline void vexp(float* o, const float* a, int64_t n) { kernels().vexp(o, a, n); }
inline void vtanh(float* o, const float* a, int64_t n) { kernels().vtanh(o, a, n); }
inline void vsigmoid(float* o, const float* a, int64_t n) { kernels().vsigmoid(o, a, n); }
inline void vgelu(float* o, const float* a, int64_t n) { kernels().vgelu(o, a, n); }
inline void vgelu_grad(float* gx, const float* x, const float* gy, int64_t n) { kernels().vgelu_grad(gx, x, gy, n); }
inline void softmax_row(float* p, int64_t n) { kernels().softmax_row(p, n); }
inline void matmul_nn(float* c, const float* a, const float* b, int64_t m, int64_t k, int64_t n, bool acc = false) { kernels().matmul_nn(c, a, b, m, k, n, acc); }
inline void matmul_nt(float* c, const float* a, const float* b, int64_t m, int64_t k, int64_t n, bool acc = false) { kernels().matmul_nt(c, a, b, m, k, n, acc); }
inline void matmul_tn(float* c, const float* a, const float* b, int64_t m, int64_t k, int64_t n, bool acc = false) { kernels().matmul_tn(c, a, b, m, k, n, acc); }
inline void cmul(float* yr, float* yi, const float* ar, const float* ai, const float* br, const float* bi, int64_t n) { kernels().cmul(yr, yi, ar, ai, br, bi, n); }

// Double overloads (scalar reference path, always available).
void vadd(double* o, const double* a, const double* b, int64_t n);
void vsub(double* o, const double* a, const double* b, int64_t n);
void vmul(double* o, const double* a, const double* b, int64_t n);
void vscale(double* o, const double* a, double s, int64_t n);
void vaxpy(double* y, double a, const double* x, int64_t n);
double vdot(const double* a, const double* b, int64_t n);
double vsum(const double* a, int64_t n);
double vsumsq(const double* a, int64_t n);
double vsumabsdiff(const double* a, const double* b, int64_t n);
void vexp(double* o, const double* a, int64_t n);
void vtanh(double* o, const double* a, int64_t n);
void vsigmoid(double* o, const double* a, int64_t n);
void vgelu(double* o, const double* a, int64_t n);
void vgelu_grad(double* gx, const double* x, const double* gy, int64_t n);
void softmax_row(double* p, int64_t n);
void matmul_nn(double* c, const double* a, const double* b, int64_t m, int64_t k, int64_t n, bool acc = false);
void matmul_nt(double* c, const double* a, const double* b, int64_t m, int64_t k, int64_t n, bool acc = false);
void matmul_tn(double* c, const double* a, const double* b, int64_t m, int64_t k, int64_t n, bool acc = false);
void cmul(double* yr, double* yi, const double* ar, const double* ai, const double* br, const double* bi, int64_t n);

}  // namespace melro::simd
