#include "nptlab/kernels.hpp"

namespace nptlab::kern {

namespace {

cplx s_dotc(const cplx* x, const cplx* y, size_t n) {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

cplx s_dotu(const cplx* x, const cplx* y, size_t n) {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

void s_axpy(cplx a, const cplx* x, cplx* y, size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void s_axpy_conj(cplx a, const cplx* x, cplx* y, size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = -x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void s_scal(cplx a, cplx* x, size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void s_scal_copy(cplx a, const cplx* x, cplx* y, size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

double s_norm2sq(const cplx* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return acc;
}

void s_rot_real(double* x, double* y, double c, double s, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        const double xi = x[i], yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{s_dotc, s_dotu, s_axpy, s_axpy_conj, s_scal,
                         s_scal_copy, s_norm2sq, s_rot_real, "scalar"};
    return ops;
}

}  // namespace nptlab::kern
