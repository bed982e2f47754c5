#include "nptlab/qcore.hpp"

#include <algorithm>
#include <cmath>

#include "nptlab/kernels.hpp"

namespace nptlab::qcore {

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b) {
    const int na = a.dim(), nb = b.dim();
    Matrix out(na * nb, na * nb);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < na; ++j) {
            const cplx aij = a.m(i, j);
            if (aij == cplx(0, 0)) continue;
            for (int r = 0; r < nb; ++r) {
                kern::scal_copy(aij, b.m.row(r), out.row(i * nb + r) + size_t(j) * nb, nb);
            }
        }
    }
    return ComplexOperator(std::move(out), a.dimA * b.dimA, a.dimB * b.dimB);
}

ComplexOperator regrouped_tensor_power(const ComplexOperator& rho, int n, long size_cap) {
    if (n < 1) throw PreconditionError("regrouped_tensor_power: n must be >= 1");
    const long d = rho.dim();
    double total = 1.0;
    for (int t = 0; t < n; ++t) {
        total *= double(d);
        if (total > double(size_cap))
            throw PreconditionError("regrouped_tensor_power: total dimension exceeds size cap");
    }
    if (n == 1) return rho;

    const int dA = rho.dimA, dB = rho.dimB;
    const long dim = long(total);
    // regrouped index I = (a-block)*dB^n + (b-block); per-copy single-copy
    // index s_t = a_t*dB + b_t feeds rho directly.
    std::vector<int> copy_index(size_t(dim) * n);
    {
        long powA = 1, powB = 1;
        for (int t = 0; t < n; ++t) {
            powA *= dA;
            powB *= dB;
        }
        for (long idx = 0; idx < dim; ++idx) {
            long ablk = idx / powB, bblk = idx % powB;
            long ra = ablk, rb = bblk;
            long pa = powA / dA, pb = powB / dB;
            for (int t = 0; t < n; ++t) {
                const int at = int(ra / pa), bt = int(rb / pb);
                ra %= pa;
                rb %= pb;
                copy_index[size_t(idx) * n + t] = at * dB + bt;
                if (t + 1 < n) {
                    pa /= dA;
                    pb /= dB;
                }
            }
        }
    }

    Matrix out(static_cast<int>(dim), static_cast<int>(dim));
    for (long i = 0; i < dim; ++i) {
        const int* si = &copy_index[size_t(i) * n];
        cplx* row = out.row(int(i));
        for (long j = 0; j < dim; ++j) {
            const int* sj = &copy_index[size_t(j) * n];
            cplx v = rho.m(si[0], sj[0]);
            for (int t = 1; t < n && v != cplx(0, 0); ++t) v *= rho.m(si[t], sj[t]);
            row[j] = v;
        }
    }
    int dAn = 1, dBn = 1;
    for (int t = 0; t < n; ++t) {
        dAn *= dA;
        dBn *= dB;
    }
    return ComplexOperator(std::move(out), dAn, dBn);
}

ComplexOperator partial_transpose(const ComplexOperator& m) {
    const int dA = m.dimA, dB = m.dimB;
    Matrix out(m.dim(), m.dim());
    for (int a = 0; a < dA; ++a)
        for (int mu = 0; mu < dB; ++mu)
            for (int b = 0; b < dA; ++b)
                for (int nu = 0; nu < dB; ++nu)
                    out(a * dB + mu, b * dB + nu) = m.m(a * dB + nu, b * dB + mu);
    return ComplexOperator(std::move(out), dA, dB);
}

SchmidtDecomposition schmidt_decompose(const BipartitePureState& psi) {
    if (psi.schmidt) return *psi.schmidt;
    const double nrm = vector_norm(psi.amp);
    if (std::abs(nrm - 1.0) > 1e-10)
        throw PreconditionError("schmidt_decompose: state is not normalized");

    const int dA = psi.dimA, dB = psi.dimB;
    Matrix coeff(dA, dB);
    for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dB; ++b) coeff(a, b) = psi.at(a, b);

    linalg::SvdResult sv = linalg::svd(coeff);
    auto dec = std::make_shared<SchmidtDecomposition>();
    const int k = int(sv.singular.size());
    dec->coefficients = sv.singular;
    dec->basisA.resize(k);
    dec->basisB.resize(k);
    for (int i = 0; i < k; ++i) {
        std::vector<cplx> ua = sv.u[i];
        // psi = sum_k s_k u_k (x) conj(v_k); fix the A-side phase convention
        std::vector<cplx> wb(dB);
        for (int b = 0; b < dB; ++b) wb[b] = std::conj(sv.v[i][b]);
        cplx ph(1.0, 0.0);
        for (const cplx& z : ua)
            if (std::abs(z) > 1e-12) {
                ph = z / std::abs(z);
                break;
            }
        kern::scal(std::conj(ph), ua.data(), ua.size());
        kern::scal(ph, wb.data(), wb.size());
        dec->basisA[i] = std::move(ua);
        dec->basisB[i] = std::move(wb);
    }
    dec->rank = 0;
    for (double s : dec->coefficients)
        if (s > SchmidtDecomposition::kRankTol) ++dec->rank;
    psi.schmidt = dec;
    return *psi.schmidt;
}

int schmidt_rank(const BipartitePureState& psi) { return schmidt_decompose(psi).rank; }

linalg::HermitianEigen hermitian_spectrum(const ComplexOperator& m) {
    return linalg::hermitian_eigensystem(m.m, 1e-8);
}

PptResult is_ppt(const ComplexOperator& rho, double tl) {
    const ComplexOperator pt = partial_transpose(rho);
    std::vector<double> ev = linalg::hermitian_eigenvalues(pt.m);
    PptResult r;
    r.min_eigenvalue = ev.empty() ? 0.0 : ev.front();
    r.ppt = r.min_eigenvalue >= -tl;
    return r;
}

double witness_value(const BipartitePureState& phi, const ComplexOperator& rho) {
    if (phi.dimA != rho.dimA || phi.dimB != rho.dimB)
        throw PreconditionError("witness_value: dimension mismatch");
    const ComplexOperator pt = partial_transpose(rho);
    const cplx val = quadratic_form(pt, phi.amp);
    if (std::abs(val.imag()) > 1e-10)
        throw NumericError("witness_value: expectation has non-negligible imaginary part");
    return val.real();
}

double hs_distance(const ComplexOperator& a, const ComplexOperator& b) {
    if (a.dim() != b.dim()) throw PreconditionError("hs_distance: dimension mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < a.m.size(); ++i) {
        const cplx d = a.m.data()[i] - b.m.data()[i];
        acc += d.real() * d.real() + d.imag() * d.imag();
    }
    return std::sqrt(acc);
}

cplx trace(const ComplexOperator& m) {
    cplx t(0, 0);
    for (int i = 0; i < m.dim(); ++i) t += m.m(i, i);
    return t;
}

double vector_norm(const std::vector<cplx>& v) {
    return std::sqrt(kern::norm2sq(v.data(), v.size()));
}

void normalize(std::vector<cplx>& v) {
    const double n = vector_norm(v);
    if (n <= 0.0) throw PreconditionError("normalize: zero vector");
    kern::scal(1.0 / n, v.data(), v.size());
}

cplx quadratic_form(const ComplexOperator& m, const std::vector<cplx>& phi) {
    if (phi.size() != size_t(m.dim())) throw PreconditionError("quadratic_form: size mismatch");
    std::vector<cplx> mx = apply(m, phi);
    return kern::dotc(phi.data(), mx.data(), phi.size());
}

std::vector<cplx> apply(const ComplexOperator& m, const std::vector<cplx>& x) {
    const int n = m.dim();
    std::vector<cplx> y(n);
    for (int i = 0; i < n; ++i) y[i] = kern::dotu(m.m.row(i), x.data(), n);
    return y;
}

void require_hermitian(const ComplexOperator& m, double tl) {
    if (linalg::max_asymmetry(m.m) > tl)
        throw PreconditionError("operator is not Hermitian within tolerance");
}

void require_density(const ComplexOperator& m, double trace_tol, double psd_tol) {
    require_hermitian(m);
    if (std::abs(trace(m) - cplx(1, 0)) > trace_tol)
        throw PreconditionError("density operator trace differs from 1");
    std::vector<double> ev = linalg::hermitian_eigenvalues(m.m);
    if (!ev.empty() && ev.front() < -psd_tol)
        throw PreconditionError("density operator has a negative eigenvalue");
}

std::vector<cplx> product_amplitudes(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i)
        kern::scal_copy(a[i], b.data(), out.data() + i * b.size(), b.size());
    return out;
}

ComplexOperator projector(const BipartitePureState& psi) {
    const int n = psi.dim();
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) kern::axpy_conj(psi.amp[i], psi.amp.data(), out.row(i), n);
    return ComplexOperator(std::move(out), psi.dimA, psi.dimB);
}

}  // namespace nptlab::qcore
