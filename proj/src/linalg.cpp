#include "nptlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nptlab/kernels.hpp"

namespace nptlab::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

cplx phase_of(cplx z) {
    const double m = std::abs(z);
    return m > 0.0 ? z / m : cplx(1.0, 0.0);
}

// Householder reduction of Hermitian `a` (copied into `work`) to a real
// symmetric tridiagonal (diag, sub). When `accum` is non-null it receives the
// transform rows: accum[j] is column j of the reducing unitary, so that
// a = U T U^dag with U[:,j] = accum[j].
void tridiagonalize(Matrix work, std::vector<double>& diag, std::vector<double>& sub,
                    std::vector<std::vector<cplx>>* accum) {
    const int n = work.rows();
    diag.assign(n, 0.0);
    sub.assign(std::max(n - 1, 0), 0.0);

    std::vector<std::vector<cplx>> vs;   // reflector vectors, support k+1..n-1
    std::vector<double> taus;
    std::vector<cplx> esub(std::max(n - 1, 0), cplx(0, 0));

    std::vector<cplx> v(n), p(n), w(n);
    for (int k = 0; k + 2 < n; ++k) {
        const int m = n - k - 1;
        // column below the diagonal, via the conjugated row (row-major friendly)
        for (int i = 0; i < m; ++i) v[i] = std::conj(work(k, k + 1 + i));
        double sigma2 = kern::norm2sq(v.data(), m);
        double sigma = std::sqrt(sigma2);
        if (sigma <= 0.0) {
            esub[k] = 0.0;
            vs.emplace_back();
            taus.push_back(0.0);
            continue;
        }
        const cplx ph = phase_of(v[0]);
        const double c0abs = std::abs(v[0]);
        const cplx alpha = -ph * sigma;
        v[0] -= alpha;  // v = c - alpha e0
        const double vn2 = 2.0 * sigma * (sigma + c0abs);
        if (vn2 <= 0.0) {
            esub[k] = alpha;
            vs.emplace_back();
            taus.push_back(0.0);
            continue;
        }
        const double tau = 2.0 / vn2;

        // p = tau * S * v over trailing block S = work[k+1.., k+1..]
        for (int i = 0; i < m; ++i) {
            p[i] = tau * kern::dotu(work.row(k + 1 + i) + (k + 1), v.data(), m);
        }
        // S is Hermitian: dotu over the stored row gives row_i . v = (S v)_i
        // w = p - (tau/2) (v^dag p) v
        cplx vtp = kern::dotc(v.data(), p.data(), m);
        const cplx kfac = 0.5 * tau * vtp;
        for (int i = 0; i < m; ++i) w[i] = p[i] - kfac * v[i];

        // S <- S - v w^dag - w v^dag   (rows contiguous)
        for (int i = 0; i < m; ++i) {
            cplx* rowi = work.row(k + 1 + i) + (k + 1);
            kern::axpy_conj(-v[i], w.data(), rowi, m);
            kern::axpy_conj(-w[i], v.data(), rowi, m);
        }

        esub[k] = alpha;
        vs.push_back(std::vector<cplx>(v.begin(), v.begin() + m));
        taus.push_back(tau);
    }
    if (n >= 2) esub[n - 2] = work(n - 1, n - 2);
    for (int i = 0; i < n; ++i) diag[i] = work(i, i).real();

    // phase-chase the subdiagonal to real non-negative
    std::vector<cplx> theta(n, cplx(1, 0));
    for (int k = 0; k + 1 < n; ++k) {
        const double mag = std::abs(esub[k]);
        sub[k] = mag;
        theta[k + 1] = mag > 0.0 ? theta[k] * (esub[k] / mag) : theta[k];
    }

    if (!accum) return;

    // accum starts as rows of (H_0...H_L)^T built by right-multiplication in
    // decreasing k, then the phase diagonal scales each row.
    auto& e = *accum;
    e.assign(n, std::vector<cplx>(n, cplx(0, 0)));
    for (int i = 0; i < n; ++i) e[i][i] = 1.0;
    for (int k = int(vs.size()) - 1; k >= 0; --k) {
        if (vs[k].empty()) continue;
        const auto& hv = vs[k];
        const double tau = taus[k];
        const int off = k + 1;
        const int m = int(hv.size());
        for (int r = off; r < (int)e.size(); ++r) {
            cplx u = kern::dotc(hv.data(), e[r].data() + off, m);
            if (u != cplx(0, 0)) kern::axpy(-tau * u, hv.data(), e[r].data() + off, m);
        }
    }
    for (int r = 0; r < n; ++r) kern::scal(theta[r], e[r].data(), n);
}

// Implicit-shift QL on (d, e) with optional row-rotation accumulation.
// Off-diagonals are deflated against a running global scale, not just the
// neighboring diagonal pair; tiny degenerate clusters stall otherwise.
void tql2(std::vector<double>& d, std::vector<double>& e,
          std::vector<std::vector<cplx>>* accum, int n) {
    if (n == 0) return;
    std::vector<double> ee(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) ee[i] = e[i];

    double tst1 = 0.0;
    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(ee[l]));
        int iter = 0;
        int m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(ee[m]) <= kEps * std::max(dd, tst1) + 1e-300) break;
            }
            if (m != l) {
                if (iter++ == 60) throw NumericError("tql2: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * ee[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + ee[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * ee[i];
                    const double b = c * ee[i];
                    r = std::hypot(f, g);
                    ee[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        ee[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (accum) {
                        auto& z = *accum;
                        kern::rot_real_c(z[i].data(), z[i + 1].data(), c, s, z[i].size());
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                ee[l] = g;
                ee[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

double max_asymmetry(const Matrix& a) {
    double mx = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j <= i; ++j) mx = std::max(mx, std::abs(a(i, j) - std::conj(a(j, i))));
    return mx;
}

void hermitize(Matrix& a) {
    for (int i = 0; i < a.rows(); ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = 0; j < i; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
}

HermitianEigen hermitian_eigensystem(const Matrix& a, double asym_tol) {
    if (a.rows() != a.cols()) throw PreconditionError("hermitian_eigensystem: matrix not square");
    if (max_asymmetry(a) > asym_tol)
        throw PreconditionError("hermitian_eigensystem: input is not Hermitian within tolerance");
    const int n = a.rows();
    HermitianEigen out;
    if (n == 0) return out;

    Matrix work = a;
    hermitize(work);
    std::vector<double> d, e;
    std::vector<std::vector<cplx>> rows;
    tridiagonalize(std::move(work), d, e, &rows);
    tql2(d, e, &rows, n);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

    out.values.resize(n);
    out.vectors.resize(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = d[order[k]];
        out.vectors[k] = std::move(rows[order[k]]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& a, double asym_tol) {
    if (a.rows() != a.cols()) throw PreconditionError("hermitian_eigenvalues: matrix not square");
    if (max_asymmetry(a) > asym_tol)
        throw PreconditionError("hermitian_eigenvalues: input is not Hermitian within tolerance");
    const int n = a.rows();
    if (n == 0) return {};
    Matrix work = a;
    hermitize(work);
    std::vector<double> d, e;
    tridiagonalize(std::move(work), d, e, nullptr);
    tql2(d, e, nullptr, n);
    std::sort(d.begin(), d.end());
    return d;
}

namespace {

struct JacobiState {
    std::vector<std::vector<cplx>> cols;    // m-vectors
    std::vector<std::vector<cplx>>* vcols;  // n-vectors or null
};

// One-sided Jacobi sweeps until off(G) is negligible. Returns column norms.
std::vector<double> jacobi_sweeps(JacobiState& st) {
    const int n = int(st.cols.size());
    const size_t m = n ? st.cols[0].size() : 0;
    const double tol = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double worst = 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double app = kern::norm2sq(st.cols[p].data(), m);
                const double aqq = kern::norm2sq(st.cols[q].data(), m);
                if (app <= 0.0 && aqq <= 0.0) continue;
                cplx g = kern::dotc(st.cols[p].data(), st.cols[q].data(), m);
                const double gm = std::abs(g);
                const double scale = std::sqrt(app) * std::sqrt(aqq);
                if (scale <= 0.0 || gm <= tol * scale) continue;
                worst = std::max(worst, gm / scale);

                const cplx u = std::conj(phase_of(g));  // makes the pair inner product real >= 0
                kern::scal(u, st.cols[q].data(), m);
                if (st.vcols) kern::scal(u, (*st.vcols)[q].data(), (*st.vcols)[q].size());

                const double h = gm;
                const double zeta = (aqq - app) / (2.0 * h);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(zeta, 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                kern::rot_real_c(st.cols[p].data(), st.cols[q].data(), c, s, m);
                if (st.vcols)
                    kern::rot_real_c((*st.vcols)[p].data(), (*st.vcols)[q].data(), c, s,
                                     (*st.vcols)[p].size());
            }
        }
        if (worst <= tol) break;
    }
    std::vector<double> norms(n);
    for (int j = 0; j < n; ++j) norms[j] = std::sqrt(kern::norm2sq(st.cols[j].data(), m));
    return norms;
}

}  // namespace

SvdResult svd(const Matrix& a) {
    const int m = a.rows(), n = a.cols();
    if (m < n) {
        SvdResult t = svd(a.adjoint());
        std::swap(t.u, t.v);
        return t;
    }
    JacobiState st;
    st.cols.assign(n, std::vector<cplx>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) st.cols[j][i] = a(i, j);
    std::vector<std::vector<cplx>> vc(n, std::vector<cplx>(n, cplx(0, 0)));
    for (int j = 0; j < n; ++j) vc[j][j] = 1.0;
    st.vcols = &vc;

    std::vector<double> norms = jacobi_sweeps(st);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return norms[i] > norms[j]; });

    SvdResult out;
    out.singular.resize(n);
    out.u.resize(n);
    out.v.resize(n);
    const double smax = n ? norms[order[0]] : 0.0;
    std::vector<std::vector<cplx>> good;  // normalized left vectors so far
    for (int k = 0; k < n; ++k) {
        const int j = order[k];
        out.singular[k] = norms[j];
        out.v[k] = vc[j];
        if (norms[j] > smax * 1e-13 && norms[j] > 0.0) {
            std::vector<cplx> uk = st.cols[j];
            kern::scal(1.0 / norms[j], uk.data(), m);
            good.push_back(uk);
            out.u[k] = std::move(uk);
        } else {
            out.u[k].clear();  // fill from completion below
        }
    }
    if (int(good.size()) < n) {
        auto completed = complete_orthonormal(good, m, n);
        size_t next = good.size();
        for (int k = 0; k < n; ++k)
            if (out.u[k].empty()) out.u[k] = completed[next++];
    }
    return out;
}

SingularRange singular_range(const Matrix& a) {
    const int m = a.rows(), n = a.cols();
    if (m < n) return singular_range(a.adjoint());
    JacobiState st;
    st.cols.assign(n, std::vector<cplx>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) st.cols[j][i] = a(i, j);
    st.vcols = nullptr;
    std::vector<double> norms = jacobi_sweeps(st);
    SingularRange r;
    if (norms.empty()) return r;
    r.smallest = *std::min_element(norms.begin(), norms.end());
    r.largest = *std::max_element(norms.begin(), norms.end());
    return r;
}

std::vector<std::vector<cplx>> complete_orthonormal(std::vector<std::vector<cplx>> family,
                                                    int dim, int count) {
    for (int cand = 0; cand < dim && int(family.size()) < count; ++cand) {
        std::vector<cplx> r(dim, cplx(0, 0));
        r[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : family) {
                const cplx ov = kern::dotc(u.data(), r.data(), dim);
                kern::axpy(-ov, u.data(), r.data(), dim);
            }
        const double nr = std::sqrt(kern::norm2sq(r.data(), dim));
        if (nr > 0.3) {
            kern::scal(1.0 / nr, r.data(), dim);
            family.push_back(std::move(r));
        }
    }
    if (int(family.size()) < count)
        throw NumericError("complete_orthonormal: could not complete basis");
    return family;
}

bool orthonormalize(std::vector<std::vector<cplx>>& cols) {
    for (size_t j = 0; j < cols.size(); ++j) {
        auto& c = cols[j];
        for (int pass = 0; pass < 2; ++pass)
            for (size_t i = 0; i < j; ++i) {
                const cplx ov = kern::dotc(cols[i].data(), c.data(), c.size());
                kern::axpy(-ov, cols[i].data(), c.data(), c.size());
            }
        const double nr = std::sqrt(kern::norm2sq(c.data(), c.size()));
        if (nr < 1e-12) return false;
        kern::scal(1.0 / nr, c.data(), c.size());
    }
    return true;
}

Matrix random_unitary(int n, Rng& rng) {
    std::vector<std::vector<cplx>> cols(n, std::vector<cplx>(n));
    for (;;) {
        for (auto& c : cols)
            for (auto& z : c) z = rng.cgauss();
        if (orthonormalize(cols)) break;
    }
    Matrix u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u(i, j) = cols[j][i];
    return u;
}

}  // namespace nptlab::linalg
