// AVX2+FMA kernel variants. This TU is compiled with -mavx2 -mfma on x86-64;
// elsewhere it degrades to a stub and the dispatcher keeps the scalar table.
#include "nptlab/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace nptlab::kern {

namespace {

// Registers hold two interleaved complex doubles: [re0 im0 re1 im1].

inline __m256d cmul(__m256d a, __m256d b) {
    __m256d b_swap = _mm256_permute_pd(b, 0b0101);
    __m256d a_re = _mm256_movedup_pd(a);
    __m256d a_im = _mm256_permute_pd(a, 0b1111);
    return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

// conj(x) * y
inline __m256d cmul_conj(__m256d x, __m256d y) {
    __m256d y_swap = _mm256_permute_pd(y, 0b0101);
    __m256d x_re = _mm256_movedup_pd(x);
    __m256d x_im = _mm256_permute_pd(x, 0b1111);
    return _mm256_fmsubadd_pd(x_re, y, _mm256_mul_pd(x_im, y_swap));
}

inline cplx reduce_c(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

cplx v_dotc(const cplx* x, const cplx* y, size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc = _mm256_add_pd(acc, cmul_conj(xv, yv));
    }
    cplx r = reduce_c(acc);
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        r += cplx(xr * yr + xi * yi, xr * yi - xi * yr);
    }
    return r;
}

cplx v_dotu(const cplx* x, const cplx* y, size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc = _mm256_add_pd(acc, cmul(xv, yv));
    }
    cplx r = reduce_c(acc);
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        r += cplx(xr * yr - xi * yi, xr * yi + xi * yr);
    }
    return r;
}

void v_axpy(cplx a, const cplx* x, cplx* y, size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d a_re = _mm256_set1_pd(a.real());
    const __m256d a_im = _mm256_set1_pd(a.imag());
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d x_swap = _mm256_permute_pd(xv, 0b0101);
        __m256d prod = _mm256_fmaddsub_pd(a_re, xv, _mm256_mul_pd(a_im, x_swap));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
    }
    const double ar = a.real(), ai = a.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void v_axpy_conj(cplx a, const cplx* x, cplx* y, size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d a_re = _mm256_set1_pd(a.real());
    const __m256d a_im = _mm256_set1_pd(a.imag());
    // negate odd (imag) lanes to turn conj(a)*x into a*conj(x)
    const __m256d neg_odd = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d x_swap = _mm256_permute_pd(xv, 0b0101);
        __m256d t = _mm256_fmsubadd_pd(a_re, xv, _mm256_mul_pd(a_im, x_swap));
        __m256d prod = _mm256_xor_pd(t, neg_odd);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
    }
    const double ar = a.real(), ai = a.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = -x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void v_scal(cplx a, cplx* x, size_t n) {
    double* xd = reinterpret_cast<double*>(x);
    const __m256d a_re = _mm256_set1_pd(a.real());
    const __m256d a_im = _mm256_set1_pd(a.imag());
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d x_swap = _mm256_permute_pd(xv, 0b0101);
        _mm256_storeu_pd(xd + 2 * i, _mm256_fmaddsub_pd(a_re, xv, _mm256_mul_pd(a_im, x_swap)));
    }
    const double ar = a.real(), ai = a.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void v_scal_copy(cplx a, const cplx* x, cplx* y, size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d a_re = _mm256_set1_pd(a.real());
    const __m256d a_im = _mm256_set1_pd(a.imag());
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d x_swap = _mm256_permute_pd(xv, 0b0101);
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmaddsub_pd(a_re, xv, _mm256_mul_pd(a_im, x_swap)));
    }
    const double ar = a.real(), ai = a.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

double v_norm2sq(const cplx* x, size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    double r = _mm_cvtsd_f64(_mm_hadd_pd(s, s));
    for (; i < n; ++i) {
        r += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return r;
}

void v_rot_real(double* x, double* y, double c, double s, size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = _mm256_set1_pd(s);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d yv = _mm256_loadu_pd(y + i);
        __m256d xn = _mm256_fmsub_pd(cv, xv, _mm256_mul_pd(sv, yv));
        __m256d yn = _mm256_fmadd_pd(sv, xv, _mm256_mul_pd(cv, yv));
        _mm256_storeu_pd(x + i, xn);
        _mm256_storeu_pd(y + i, yn);
    }
    for (; i < n; ++i) {
        const double xi = x[i], yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

}  // namespace

const Ops* avx2_ops() {
    static const Ops ops{v_dotc, v_dotu, v_axpy, v_axpy_conj, v_scal,
                         v_scal_copy, v_norm2sq, v_rot_real, "avx2"};
    return &ops;
}

}  // namespace nptlab::kern

#else

namespace nptlab::kern {
const Ops* avx2_ops() { return nullptr; }
}  // namespace nptlab::kern

#endif
