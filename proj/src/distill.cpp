#include "nptlab/distill.hpp"

#include <algorithm>
#include <cmath>

#include "nptlab/kernels.hpp"
#include "nptlab/parallel.hpp"
#include "nptlab/rng.hpp"

namespace nptlab::distill {

namespace {

using Columns = std::vector<std::vector<cplx>>;

// Project M onto H_A (x) span(b0, b1): out[(a,i),(a',j)] with row a*2+i.
Matrix project_second(const ComplexOperator& m, const Columns& bc) {
    const int dA = m.dimA, dB = m.dimB, D = m.dim();
    Matrix t(D, 2 * dA);  // t[(a,b),(a',j)] = sum_b' M[(a,b),(a',b')] bc[j][b']
    for (int r = 0; r < D; ++r) {
        const cplx* mr = m.m.row(r);
        cplx* tr = t.row(r);
        for (int ap = 0; ap < dA; ++ap) {
            const cplx* seg = mr + size_t(ap) * dB;
            tr[ap * 2 + 0] = kern::dotu(seg, bc[0].data(), dB);
            tr[ap * 2 + 1] = kern::dotu(seg, bc[1].data(), dB);
        }
    }
    Matrix out(2 * dA, 2 * dA);
    for (int a = 0; a < dA; ++a) {
        for (int i = 0; i < 2; ++i) {
            cplx* orow = out.row(a * 2 + i);
            for (int b = 0; b < dB; ++b) {
                const cplx w = std::conj(bc[i][b]);
                if (w != cplx(0, 0)) kern::axpy(w, t.row(a * dB + b), orow, 2 * dA);
            }
        }
    }
    linalg::hermitize(out);
    return out;
}

// Swap the subsystems: out[(b,a),(b',a')] = m[(a,b),(a',b')].
ComplexOperator swap_subsystems(const ComplexOperator& m) {
    const int dA = m.dimA, dB = m.dimB;
    Matrix out(m.dim(), m.dim());
    for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dB; ++b)
            for (int ap = 0; ap < dA; ++ap)
                for (int bp = 0; bp < dB; ++bp)
                    out(b * dA + a, bp * dA + ap) = m.m(a * dB + b, ap * dB + bp);
    return ComplexOperator(std::move(out), dB, dA);
}

Columns random_pair(int dim, Rng& rng) {
    for (;;) {
        Columns c(2, std::vector<cplx>(dim));
        for (auto& v : c)
            for (auto& z : v) z = rng.cgauss();
        if (linalg::orthonormalize(c)) return c;
    }
}

// Top-2 orthonormal local support on the chosen side ("A" or "B") of psi,
// deterministically completed when the rank is 1.
Columns schmidt_support(const BipartitePureState& psi, bool a_side) {
    BipartitePureState fresh(psi.amp, psi.dimA, psi.dimB);  // no stale cache
    const SchmidtDecomposition& sd = qcore::schmidt_decompose(fresh);
    const auto& basis = a_side ? sd.basisA : sd.basisB;
    const int dim = a_side ? psi.dimA : psi.dimB;
    Columns c;
    for (int i = 0; i < int(basis.size()) && int(c.size()) < 2; ++i) {
        if (sd.coefficients[i] > 1e-14) c.push_back(basis[i]);
    }
    auto full = linalg::complete_orthonormal(std::move(c), dim, 2);
    full.resize(2);
    return full;
}

struct RestartOutcome {
    double value = 0.0;
    BipartitePureState witness;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

RestartOutcome run_restart(const ComplexOperator& m, const ComplexOperator& m_swapped,
                           const SeesawOptions& opts, uint64_t restart_index) {
    const int dA = m.dimA, dB = m.dimB;
    Rng rng = Rng::substream(opts.seed, restart_index);
    Columns bc = random_pair(dB, rng);

    RestartOutcome out;
    BipartitePureState phi;
    double prev = 0.0;
    bool have_prev = false;

    for (int it = 0; it < opts.max_iters; ++it) {
        // B half-step: minimal eigenvector in H_A (x) span(bc)
        Matrix mp = project_second(m, bc);
        linalg::HermitianEigen eig = linalg::hermitian_eigensystem(mp);
        const std::vector<cplx>& w = eig.vectors[0];
        std::vector<cplx> amp(size_t(dA) * dB, cplx(0, 0));
        for (int a = 0; a < dA; ++a)
            for (int b = 0; b < dB; ++b)
                amp[size_t(a) * dB + b] = w[a * 2 + 0] * bc[0][b] + w[a * 2 + 1] * bc[1][b];
        phi = BipartitePureState(std::move(amp), dA, dB);
        qcore::normalize(phi.amp);
        out.trace.push_back(eig.values[0]);

        // A half-step on the iterate's A-side Schmidt support
        Columns ac = schmidt_support(phi, /*a_side=*/true);
        Matrix mpa = project_second(m_swapped, ac);
        linalg::HermitianEigen eig2 = linalg::hermitian_eigensystem(mpa);
        const std::vector<cplx>& w2 = eig2.vectors[0];
        std::vector<cplx> amp2(size_t(dA) * dB, cplx(0, 0));
        for (int b = 0; b < dB; ++b)
            for (int a = 0; a < dA; ++a)
                amp2[size_t(a) * dB + b] = w2[b * 2 + 0] * ac[0][a] + w2[b * 2 + 1] * ac[1][a];
        phi = BipartitePureState(std::move(amp2), dA, dB);
        qcore::normalize(phi.amp);
        const double cur = eig2.values[0];
        out.trace.push_back(cur);

        out.iterations = it + 1;
        if (have_prev && std::abs(prev - cur) < opts.conv_tol) {
            out.converged = true;
            break;
        }
        prev = cur;
        have_prev = true;

        // next B support from the iterate
        bc = schmidt_support(phi, /*a_side=*/false);
    }

    out.value = qcore::quadratic_form(m, phi.amp).real();
    out.witness = std::move(phi);
    return out;
}

}  // namespace

void SeesawOptions::validate() const {
    if (restarts < 1) throw PreconditionError("seesaw: restarts must be >= 1");
    if (max_iters < 1) throw PreconditionError("seesaw: max_iters must be >= 1");
    if (!(conv_tol > 0.0 && conv_tol < 1e-6))
        throw PreconditionError("seesaw: conv_tol must lie in (0, 1e-6)");
    if (size_cap < 4) throw PreconditionError("seesaw: size cap too small");
}

SeesawResult seesaw_min(const ComplexOperator& m, const SeesawOptions& opts) {
    opts.validate();
    if (m.dimA < 2 || m.dimB < 2)
        throw PreconditionError("seesaw_min: both local dimensions must be >= 2");
    if (m.dim() > opts.size_cap) throw PreconditionError("seesaw_min: size cap exceeded");
    qcore::require_hermitian(m, 1e-8);

    const ComplexOperator m_swapped = swap_subsystems(m);

    std::vector<RestartOutcome> outs(opts.restarts);
    parallel_for(size_t(opts.restarts),
                 [&](size_t r) { outs[r] = run_restart(m, m_swapped, opts, uint64_t(r)); });

    SeesawResult res;
    res.iterations_per_restart.reserve(opts.restarts);
    res.converged.reserve(opts.restarts);
    int best = 0;
    for (int r = 0; r < opts.restarts; ++r) {
        res.iterations_per_restart.push_back(outs[r].iterations);
        res.converged.push_back(outs[r].converged);
        res.traces.push_back(std::move(outs[r].trace));
        if (outs[r].value < outs[best].value) best = r;  // strict: lowest index wins ties
    }
    res.value = outs[best].value;
    res.witness = std::move(outs[best].witness);
    res.best_restart = best;
    return res;
}

SeesawResult f_estimate(const constructions::ConstructionSpec& spec, double eps, int n,
                        const SeesawOptions& opts) {
    if (n < 1) throw PreconditionError("f_estimate: n must be >= 1");
    ComplexOperator rho = constructions::build_state(spec, eps);
    ComplexOperator pt = qcore::partial_transpose(rho);
    ComplexOperator m = qcore::regrouped_tensor_power(pt, n, opts.size_cap);
    SeesawResult res = seesaw_min(m, opts);
    res.n_copies = n;
    res.epsilon = eps;
    return res;
}

ThresholdReport epsilon_threshold(const constructions::ConstructionSpec& spec, int n,
                                  const SeesawOptions& opts, int grid) {
    return threshold_search([&](double eps) { return f_estimate(spec, eps, n, opts); }, n, grid);
}

VerifyResult certificate_verify(const SeesawResult& res,
                                const constructions::ConstructionSpec& spec, double eps) {
    if (res.n_copies < 1) return {false, "missing copy count"};
    if (res.witness.amp.empty()) return {false, "missing witness"};

    const double nrm = qcore::vector_norm(res.witness.amp);
    if (std::abs(nrm - 1.0) > 1e-8) return {false, "witness not normalized"};

    BipartitePureState w(res.witness.amp, res.witness.dimA, res.witness.dimB);
    if (qcore::schmidt_rank(w) > 2) return {false, "rank"};

    ComplexOperator m;
    try {
        ComplexOperator rho = constructions::build_state(spec, eps);
        ComplexOperator pt = qcore::partial_transpose(rho);
        m = qcore::regrouped_tensor_power(pt, res.n_copies);
    } catch (const std::exception& e) {
        return {false, std::string("rebuild failed: ") + e.what()};
    }
    if (m.dimA != w.dimA || m.dimB != w.dimB) return {false, "dimension mismatch"};

    const cplx val = qcore::quadratic_form(m, w.amp);
    if (std::abs(val.imag()) > 1e-10) return {false, "complex expectation"};
    if (std::abs(val.real() - res.value) > 1e-10) return {false, "value recomputation mismatch"};
    if (!(val.real() < -1e-10)) return {false, "not negative"};
    return {true, ""};
}

}  // namespace nptlab::distill
