#pragma once

#include <cstddef>

#include "nptlab/types.hpp"

// Data-parallel inner loops used by the linear algebra layer. Every kernel has
// a scalar reference implementation and may have ISA-specific variants; the
// active table is picked once at startup from CPU capabilities and can be
// overridden with NPTLAB_SIMD=scalar|avx2 (or force()).
namespace nptlab::kern {

struct Ops {
    // sum conj(x[i]) * y[i]
    cplx (*dotc)(const cplx* x, const cplx* y, size_t n);
    // sum x[i] * y[i]
    cplx (*dotu)(const cplx* x, const cplx* y, size_t n);
    // y += a * x
    void (*axpy)(cplx a, const cplx* x, cplx* y, size_t n);
    // y += a * conj(x)
    void (*axpy_conj)(cplx a, const cplx* x, cplx* y, size_t n);
    // x *= a
    void (*scal)(cplx a, cplx* x, size_t n);
    // y = a * x
    void (*scal_copy)(cplx a, const cplx* x, cplx* y, size_t n);
    // sum |x[i]|^2
    double (*norm2sq)(const cplx* x, size_t n);
    // real plane rotation on raw doubles: (x, y) <- (c*x - s*y, s*x + c*y)
    void (*rot_real)(double* x, double* y, double c, double s, size_t n);

    const char* name;
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when unsupported at build or run time

// Active table (env override applied on first use).
const Ops& active();
// Force a table by name ("scalar", "avx2", "auto"); throws on unknown/unavailable.
void force(const char* name);

inline cplx dotc(const cplx* x, const cplx* y, size_t n) { return active().dotc(x, y, n); }
inline cplx dotu(const cplx* x, const cplx* y, size_t n) { return active().dotu(x, y, n); }
inline void axpy(cplx a, const cplx* x, cplx* y, size_t n) { active().axpy(a, x, y, n); }
inline void axpy_conj(cplx a, const cplx* x, cplx* y, size_t n) { active().axpy_conj(a, x, y, n); }
inline void scal(cplx a, cplx* x, size_t n) { active().scal(a, x, n); }
inline void scal_copy(cplx a, const cplx* x, cplx* y, size_t n) { active().scal_copy(a, x, y, n); }
inline double norm2sq(const cplx* x, size_t n) { return active().norm2sq(x, n); }
inline void rot_real(double* x, double* y, double c, double s, size_t n) {
    active().rot_real(x, y, c, s, n);
}
// Rotation over two complex arrays (same real rotation on re and im parts).
inline void rot_real_c(cplx* x, cplx* y, double c, double s, size_t n) {
    active().rot_real(reinterpret_cast<double*>(x), reinterpret_cast<double*>(y), c, s, 2 * n);
}

}  // namespace nptlab::kern
