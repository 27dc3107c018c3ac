#include "rentwist/kernels.hpp"

#include <atomic>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define RENTWIST_X86 1
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#define RENTWIST_NEON 1
#endif

namespace rentwist::kernels {

namespace {

cdouble cdot_scalar(const cdouble* a, const cdouble* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void caxpy_scalar(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
    const double c = alpha.real(), d = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + c * xr - d * xi, y[i].imag() + c * xi + d * xr};
    }
}

void spmv_scalar(const Csr& A, const cdouble* x, cdouble* y, std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) {
        double re = 0.0, im = 0.0;
        for (std::int64_t p = A.ptr[r]; p < A.ptr[r + 1]; ++p) {
            const double v = A.val[p];
            const cdouble& xv = x[A.idx[p]];
            re += v * xv.real();
            im += v * xv.imag();
        }
        y[r] = {re, im};
    }
}

#ifdef RENTWIST_X86

__attribute__((target("avx2,fma"))) cdouble cdot_avx2(const cdouble* a, const cdouble* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d s1 = _mm256_setzero_pd(), s2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        s1 = _mm256_fmadd_pd(va, vb, s1);
        s2 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), s2);
    }
    alignas(32) double t1[4], t2[4];
    _mm256_store_pd(t1, s1);
    _mm256_store_pd(t2, s2);
    cdouble acc{t1[0] + t1[1] + t1[2] + t1[3], t2[0] - t2[1] + t2[2] - t2[3]};
    if (i < n) acc += cdot_scalar(a + i, b + i, n - i);
    return acc;
}

__attribute__((target("avx2,fma"))) void caxpy_avx2(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d vc = _mm256_set1_pd(alpha.real());
    const __m256d vd = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d t1 = _mm256_mul_pd(vc, vx);
        const __m256d t2 = _mm256_mul_pd(vd, _mm256_permute_pd(vx, 0b0101));
        const __m256d prod = _mm256_addsub_pd(t1, t2);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
    }
    if (i < n) caxpy_scalar(alpha, x + i, y + i, n - i);
}

__attribute__((target("avx2,fma"))) void spmv_avx2(const Csr& A, const cdouble* x, cdouble* y, std::size_t r0,
                                                   std::size_t r1) {
    const double* px = reinterpret_cast<const double*>(x);
    for (std::size_t r = r0; r < r1; ++r) {
        __m256d acc = _mm256_setzero_pd();
        std::int64_t p = A.ptr[r];
        const std::int64_t end = A.ptr[r + 1];
        for (; p + 2 <= end; p += 2) {
            const __m128d x0 = _mm_loadu_pd(px + 2 * static_cast<std::size_t>(A.idx[p]));
            const __m128d x1 = _mm_loadu_pd(px + 2 * static_cast<std::size_t>(A.idx[p + 1]));
            const __m256d vx = _mm256_insertf128_pd(_mm256_castpd128_pd256(x0), x1, 1);
            const __m256d vv = _mm256_set_pd(A.val[p + 1], A.val[p + 1], A.val[p], A.val[p]);
            acc = _mm256_fmadd_pd(vv, vx, acc);
        }
        __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
        if (p < end) {
            const __m128d xv = _mm_loadu_pd(px + 2 * static_cast<std::size_t>(A.idx[p]));
            s = _mm_fmadd_pd(_mm_set1_pd(A.val[p]), xv, s);
        }
        _mm_storeu_pd(reinterpret_cast<double*>(y + r), s);
    }
}

#endif

#ifdef RENTWIST_NEON

cdouble cdot_neon(const cdouble* a, const cdouble* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    float64x2_t s1 = vdupq_n_f64(0.0), s2 = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t va = vld1q_f64(pa + 2 * i);
        const float64x2_t vb = vld1q_f64(pb + 2 * i);
        s1 = vfmaq_f64(s1, va, vb);
        s2 = vfmaq_f64(s2, va, vextq_f64(vb, vb, 1));
    }
    return {vgetq_lane_f64(s1, 0) + vgetq_lane_f64(s1, 1), vgetq_lane_f64(s2, 0) - vgetq_lane_f64(s2, 1)};
}

void caxpy_neon(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const float64x2_t vc = vdupq_n_f64(alpha.real());
    const double dd[2] = {-alpha.imag(), alpha.imag()};
    const float64x2_t vd = vld1q_f64(dd);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t vx = vld1q_f64(px + 2 * i);
        float64x2_t vy = vld1q_f64(py + 2 * i);
        vy = vfmaq_f64(vy, vc, vx);
        vy = vfmaq_f64(vy, vd, vextq_f64(vx, vx, 1));
        vst1q_f64(py + 2 * i, vy);
    }
}

void spmv_neon(const Csr& A, const cdouble* x, cdouble* y, std::size_t r0, std::size_t r1) {
    const double* px = reinterpret_cast<const double*>(x);
    for (std::size_t r = r0; r < r1; ++r) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::int64_t p = A.ptr[r]; p < A.ptr[r + 1]; ++p)
            acc = vfmaq_n_f64(acc, vld1q_f64(px + 2 * static_cast<std::size_t>(A.idx[p])), A.val[p]);
        vst1q_f64(reinterpret_cast<double*>(y + r), acc);
    }
}

#endif

Isa detect() {
#ifdef RENTWIST_X86
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
#ifdef RENTWIST_NEON
    return Isa::Neon;
#endif
    return Isa::Scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
        default: return "scalar";
    }
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
#ifdef RENTWIST_X86
        case Isa::Avx2: return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#endif
#ifdef RENTWIST_NEON
        case Isa::Neon: return true;
#endif
        default: return false;
    }
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }
void force_isa(Isa isa) { current().store(isa_available(isa) ? isa : Isa::Scalar); }
void reset_isa() { current().store(detect()); }

cdouble cdot_isa(Isa isa, const cdouble* a, const cdouble* b, std::size_t n) {
    switch (isa) {
#ifdef RENTWIST_X86
        case Isa::Avx2: return cdot_avx2(a, b, n);
#endif
#ifdef RENTWIST_NEON
        case Isa::Neon: return cdot_neon(a, b, n);
#endif
        default: return cdot_scalar(a, b, n);
    }
}

void caxpy_isa(Isa isa, cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) {
    switch (isa) {
#ifdef RENTWIST_X86
        case Isa::Avx2: caxpy_avx2(alpha, x, y, n); return;
#endif
#ifdef RENTWIST_NEON
        case Isa::Neon: caxpy_neon(alpha, x, y, n); return;
#endif
        default: caxpy_scalar(alpha, x, y, n);
    }
}

void spmv_isa(Isa isa, const Csr& A, const cdouble* x, cdouble* y, std::size_t r0, std::size_t r1) {
    switch (isa) {
#ifdef RENTWIST_X86
        case Isa::Avx2: spmv_avx2(A, x, y, r0, r1); return;
#endif
#ifdef RENTWIST_NEON
        case Isa::Neon: spmv_neon(A, x, y, r0, r1); return;
#endif
        default: spmv_scalar(A, x, y, r0, r1);
    }
}

cdouble cdot(const cdouble* a, const cdouble* b, std::size_t n) { return cdot_isa(active_isa(), a, b, n); }
void caxpy(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n) { caxpy_isa(active_isa(), alpha, x, y, n); }
void spmv(const Csr& A, const cdouble* x, cdouble* y, std::size_t r0, std::size_t r1) {
    spmv_isa(active_isa(), A, x, y, r0, r1);
}
void spmv(const Csr& A, const cdouble* x, cdouble* y) { spmv(A, x, y, 0, A.rows); }

}  // namespace rentwist::kernels
