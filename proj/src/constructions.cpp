#include "nptlab/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "nptlab/kernels.hpp"

namespace nptlab::constructions {

namespace {

void check_unit_positive(const std::vector<double>& c, const char* what) {
    if (c.size() < 1) throw PreconditionError(std::string(what) + ": empty coefficient vector");
    double s = 0.0;
    for (double x : c) {
        if (!(x > 0.0)) throw PreconditionError(std::string(what) + ": coefficients must be positive");
        s += x * x;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw PreconditionError(std::string(what) + ": coefficient squares must sum to 1");
}

// sum_l c_l |ll> over given diagonal indices
BipartitePureState diagonal_state(const std::vector<cplx>& coeff, const std::vector<int>& idx,
                                  int d1, int d2) {
    std::vector<cplx> amp(size_t(d1) * d2, cplx(0, 0));
    for (size_t l = 0; l < coeff.size(); ++l) amp[size_t(idx[l]) * d2 + idx[l]] = coeff[l];
    return BipartitePureState(std::move(amp), d1, d2);
}

std::vector<PairWeight> uniform_weights(int k) {
    std::vector<PairWeight> w;
    const int pairs = k * (k - 1) / 2;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) w.push_back({i, j, 1.0 / pairs});
    return w;
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::MethodI: return "MethodI";
        case Method::MethodII: return "MethodII";
        case Method::Generalized: return "Generalized";
        case Method::Dur: return "Dur";
    }
    return "?";
}

Method method_from_name(const std::string& s) {
    if (s == "MethodI") return Method::MethodI;
    if (s == "MethodII") return Method::MethodII;
    if (s == "Generalized") return Method::Generalized;
    if (s == "Dur") return Method::Dur;
    throw PreconditionError("unknown construction method '" + s + "'");
}

void ConstructionSpec::validate() const {
    if (d1 < 2 || d2 < 2) throw PreconditionError("spec: d1, d2 must be >= 2");
    if (epsilon < 0.0 || epsilon > 1.0) throw PreconditionError("spec: epsilon must be in [0,1]");
    switch (method) {
        case Method::MethodI: {
            if (schmidt_coeffs.size() != 1)
                throw PreconditionError("spec: MethodI needs exactly one coefficient vector");
            const auto& beta = schmidt_coeffs[0];
            check_unit_positive(beta, "spec beta");
            const int m = int(beta.size());
            if (d1 != d2) throw PreconditionError("spec: MethodI assumes d1 == d2");
            if (m < 2 || m > d1 - 1)
                throw PreconditionError("spec: MethodI rank must satisfy 2 <= m <= d-1");
            if (!(pair_i >= 0 && pair_i < pair_j && pair_j < m))
                throw PreconditionError("spec: MethodI pair must satisfy 0 <= i < j < m");
            if (!(alpha > 0.0 && alpha < 1.0))
                throw PreconditionError("spec: MethodI alpha must lie in (0,1)");
            break;
        }
        case Method::MethodII: {
            if (schmidt_coeffs.size() != 1)
                throw PreconditionError("spec: MethodII needs exactly one coefficient vector");
            const auto& lam = schmidt_coeffs[0];
            check_unit_positive(lam, "spec lambda");
            const int k = int(lam.size());
            if (k < 3) throw PreconditionError("spec: MethodII needs Schmidt rank k >= 3");
            if (k > std::min(d1, d2))
                throw PreconditionError("spec: MethodII rank exceeds min(d1,d2)");
            if (!mixing_weights.empty()) {
                double s = 0.0;
                for (const auto& pw : mixing_weights) {
                    if (!(pw.i >= 0 && pw.i < pw.j && pw.j < k))
                        throw PreconditionError("spec: weight index pair out of range");
                    if (pw.w < 0.0) throw PreconditionError("spec: weights must be non-negative");
                    s += pw.w;
                }
                if (std::abs(s - 1.0) > 1e-12)
                    throw PreconditionError("spec: weights must sum to 1");
                if (s <= 0.0) throw PreconditionError("spec: at least one weight must be positive");
            }
            break;
        }
        case Method::Generalized: {
            if (d1 != d2) throw PreconditionError("spec: Generalized assumes d1 == d2");
            const int m = int(schmidt_coeffs.size());
            if (m < 1) throw PreconditionError("spec: Generalized needs at least one block");
            if (block_count != m)
                throw PreconditionError("spec: block_count must match the coefficient list");
            const int k = int(schmidt_coeffs[0].size());
            if (k < 3) throw PreconditionError("spec: Generalized blocks need rank k >= 3");
            for (const auto& blk : schmidt_coeffs) {
                check_unit_positive(blk, "spec block");
                if (int(blk.size()) != k)
                    throw PreconditionError("spec: Generalized blocks must share one rank k");
            }
            if (m * k > d1)
                throw PreconditionError("spec: Generalized blocks exceed the local dimension");
            break;
        }
        case Method::Dur: {
            if (d1 != d2) throw PreconditionError("spec: Dur assumes d1 == d2");
            if (d1 < 3) throw PreconditionError("spec: Dur needs d >= 3");
            if (!schmidt_coeffs.empty())
                throw PreconditionError("spec: Dur takes no coefficient vectors");
            break;
        }
    }
}

BipartitePureState antisym_vector(int i, int j, int d1, int d2) {
    if (!(i >= 0 && i < j && j < std::min(d1, d2)))
        throw PreconditionError("antisym_vector: need 0 <= i < j < min(d1,d2)");
    std::vector<cplx> amp(size_t(d1) * d2, cplx(0, 0));
    const double r = 1.0 / std::sqrt(2.0);
    amp[size_t(i) * d2 + j] = r;
    amp[size_t(j) * d2 + i] = -r;
    return BipartitePureState(std::move(amp), d1, d2);
}

BipartitePureState sym_vector(int i, int j, int d1, int d2) {
    if (!(i >= 0 && i < j && j < std::min(d1, d2)))
        throw PreconditionError("sym_vector: need 0 <= i < j < min(d1,d2)");
    std::vector<cplx> amp(size_t(d1) * d2, cplx(0, 0));
    const double r = 1.0 / std::sqrt(2.0);
    amp[size_t(i) * d2 + j] = r;
    amp[size_t(j) * d2 + i] = r;
    return BipartitePureState(std::move(amp), d1, d2);
}

std::vector<PtEigenpair> pure_pt_eigensystem(const BipartitePureState& phi) {
    const SchmidtDecomposition& sd = qcore::schmidt_decompose(phi);
    const int dA = phi.dimA, dB = phi.dimB;
    const int k = sd.rank;

    // local bases: Schmidt vectors (B side conjugated), completed orthonormally
    std::vector<std::vector<cplx>> ua(sd.basisA.begin(), sd.basisA.begin() + k);
    std::vector<std::vector<cplx>> wb;
    wb.reserve(k);
    for (int i = 0; i < k; ++i) {
        std::vector<cplx> w(dB);
        for (int b = 0; b < dB; ++b) w[b] = std::conj(sd.basisB[i][b]);
        wb.push_back(std::move(w));
    }
    ua = linalg::complete_orthonormal(std::move(ua), dA, dA);
    wb = linalg::complete_orthonormal(std::move(wb), dB, dB);

    const double r = 1.0 / std::sqrt(2.0);
    std::vector<PtEigenpair> out;
    out.reserve(size_t(dA) * dB);
    for (int i = 0; i < k; ++i) {
        out.push_back({sd.coefficients[i] * sd.coefficients[i],
                       BipartitePureState(qcore::product_amplitudes(ua[i], wb[i]), dA, dB)});
    }
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const double sij = sd.coefficients[i] * sd.coefficients[j];
            std::vector<cplx> plus = qcore::product_amplitudes(ua[i], wb[j]);
            std::vector<cplx> iw = qcore::product_amplitudes(ua[j], wb[i]);
            std::vector<cplx> minus = plus;
            kern::axpy(cplx(1, 0), iw.data(), plus.data(), plus.size());
            kern::axpy(cplx(-1, 0), iw.data(), minus.data(), minus.size());
            kern::scal(r, plus.data(), plus.size());
            kern::scal(r, minus.data(), minus.size());
            out.push_back({sij, BipartitePureState(std::move(plus), dA, dB)});
            out.push_back({-sij, BipartitePureState(std::move(minus), dA, dB)});
        }
    }
    // zero modes: every remaining product pair
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j) {
            if (i < k && j < k) continue;
            out.push_back({0.0, BipartitePureState(qcore::product_amplitudes(ua[i], wb[j]), dA, dB)});
        }
    return out;
}

ComplexOperator complement_state(const BipartitePureState& phi) {
    const int D = phi.dim();
    if (D < 2) throw PreconditionError("complement_state: dimension too small");
    ComplexOperator proj = qcore::projector(phi);
    ComplexOperator op = ComplexOperator::zero(phi.dimA, phi.dimB);
    const double f = 1.0 / (D - 1);
    for (int i = 0; i < D; ++i) {
        for (int j = 0; j < D; ++j) op.m(i, j) = -f * proj.m(i, j);
        op.m(i, i) += f;
    }
    return qcore::partial_transpose(op);
}

ComplexOperator build_rho(const ComplexOperator& sigma, const BipartitePureState& phi,
                          double eps) {
    if (eps < 0.0 || eps > 1.0) throw PreconditionError("build_rho: eps must lie in [0,1]");
    if (sigma.dimA != phi.dimA || sigma.dimB != phi.dimB)
        throw PreconditionError("build_rho: dimension mismatch");
    ComplexOperator comp = complement_state(phi);
    ComplexOperator out = ComplexOperator::zero(sigma.dimA, sigma.dimB);
    for (size_t i = 0; i < out.m.size(); ++i)
        out.m.data()[i] = eps * sigma.m.data()[i] + (1.0 - eps) * comp.m.data()[i];
    return out;
}

ConstructedPair method_one(const std::vector<double>& beta, int i, int j, double alpha, int d) {
    check_unit_positive(beta, "method_one beta");
    const int m = int(beta.size());
    if (m > d - 1)
        throw PreconditionError("method_one: rank must be <= d-1 so a product state remains");
    if (m < 2) throw PreconditionError("method_one: rank must be >= 2");
    if (!(i >= 0 && i < j && j < m)) throw PreconditionError("method_one: need 0 <= i < j < m");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw PreconditionError("method_one: alpha must lie strictly inside (0,1)");

    std::vector<cplx> bc(beta.begin(), beta.end());
    std::vector<int> idx(m);
    for (int l = 0; l < m; ++l) idx[l] = l;
    BipartitePureState psi = diagonal_state(bc, idx, d, d);
    ComplexOperator sigma = qcore::projector(psi);

    // eta = |mm>, the first diagonal product state outside psi's support
    BipartitePureState anti = antisym_vector(i, j, d, d);
    std::vector<cplx> amp(size_t(d) * d, cplx(0, 0));
    const double ra = std::sqrt(alpha), rb = std::sqrt(1.0 - alpha);
    for (size_t t = 0; t < amp.size(); ++t) amp[t] = ra * anti.amp[t];
    amp[size_t(m) * d + m] += rb;
    BipartitePureState phi(std::move(amp), d, d);

    ConstructedPair pair{std::move(sigma), std::move(phi), alpha * beta[i] * beta[j]};
    return pair;
}

ConstructedPair method_two(const std::vector<double>& lambda,
                           const std::vector<PairWeight>& weights, int d1, int d2) {
    check_unit_positive(lambda, "method_two lambda");
    const int k = int(lambda.size());
    if (k < 3) throw PreconditionError("method_two: needs Schmidt rank k >= 3");
    if (k > std::min(d1, d2)) throw PreconditionError("method_two: rank exceeds min(d1,d2)");
    std::vector<PairWeight> w = weights.empty() ? uniform_weights(k) : weights;
    double s = 0.0;
    for (const auto& pw : w) {
        if (!(pw.i >= 0 && pw.i < pw.j && pw.j < k))
            throw PreconditionError("method_two: weight pair out of range");
        if (pw.w < 0.0) throw PreconditionError("method_two: weights must be non-negative");
        s += pw.w;
    }
    if (std::abs(s - 1.0) > 1e-12) throw PreconditionError("method_two: weights must sum to 1");

    ComplexOperator sigma = ComplexOperator::zero(d1, d2);
    double lam_abs = 0.0;
    for (const auto& pw : w) {
        if (pw.w == 0.0) continue;
        BipartitePureState v = antisym_vector(pw.i, pw.j, d1, d2);
        ComplexOperator p = qcore::projector(v);
        for (size_t t = 0; t < sigma.m.size(); ++t) sigma.m.data()[t] += pw.w * p.m.data()[t];
        lam_abs += pw.w * lambda[pw.i] * lambda[pw.j];
    }

    std::vector<cplx> lc(lambda.begin(), lambda.end());
    std::vector<int> idx(k);
    for (int l = 0; l < k; ++l) idx[l] = l;
    BipartitePureState phi = diagonal_state(lc, idx, d1, d2);

    return ConstructedPair{std::move(sigma), std::move(phi), lam_abs};
}

std::vector<BipartitePureState> generalized_block_states(
    const std::vector<std::vector<double>>& blocks, int d) {
    const int m = int(blocks.size());
    if (m < 1) throw PreconditionError("generalized: needs at least one block");
    const int k = int(blocks[0].size());
    if (k < 3) throw PreconditionError("generalized: block rank must be >= 3");
    if (m * k > d) throw PreconditionError("generalized: blocks exceed the local dimension");
    std::vector<BipartitePureState> out;
    out.reserve(m);
    for (int b = 0; b < m; ++b) {
        if (int(blocks[b].size()) != k)
            throw PreconditionError("generalized: all blocks must share rank k");
        check_unit_positive(blocks[b], "generalized block");
        std::vector<cplx> coeff(blocks[b].begin(), blocks[b].end());
        std::vector<int> idx(k);
        for (int l = 0; l < k; ++l) idx[l] = k * b + l;
        out.push_back(diagonal_state(coeff, idx, d, d));
    }
    return out;
}

ComplexOperator default_generalized_sigma(const std::vector<std::vector<double>>& blocks, int d) {
    const int m = int(blocks.size());
    const int k = int(blocks[0].size());
    const int per_block = k * (k - 1) / 2;
    const double w = 1.0 / (m * per_block);
    ComplexOperator sigma = ComplexOperator::zero(d, d);
    for (int b = 0; b < m; ++b) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                BipartitePureState v = antisym_vector(k * b + i, k * b + j, d, d);
                ComplexOperator p = qcore::projector(v);
                for (size_t t = 0; t < sigma.m.size(); ++t)
                    sigma.m.data()[t] += w * p.m.data()[t];
            }
    }
    return sigma;
}

ComplexOperator generalized_rho(const std::vector<std::vector<double>>& blocks,
                                const ComplexOperator& sigma, double eps, int d) {
    if (eps < 0.0 || eps > 1.0) throw PreconditionError("generalized_rho: eps must lie in [0,1]");
    std::vector<BipartitePureState> phis = generalized_block_states(blocks, d);
    const int m = int(phis.size());
    const int D = d * d;
    if (sigma.dim() != D) throw PreconditionError("generalized_rho: sigma dimension mismatch");

    ComplexOperator inner = ComplexOperator::zero(d, d);
    for (int i = 0; i < D; ++i) inner.m(i, i) = 1.0;
    for (const auto& phi : phis) {
        ComplexOperator p = qcore::projector(phi);
        for (size_t t = 0; t < inner.m.size(); ++t) inner.m.data()[t] -= p.m.data()[t];
    }
    ComplexOperator pt = qcore::partial_transpose(inner);
    const double f = (1.0 - eps) / (D - m);
    ComplexOperator out = ComplexOperator::zero(d, d);
    for (size_t t = 0; t < out.m.size(); ++t)
        out.m.data()[t] = eps * sigma.m.data()[t] + f * pt.m.data()[t];
    return out;
}

ComplexOperator dur_pt_operator(int d) {
    if (d < 3) throw PreconditionError("dur_pt_operator: needs d >= 3");
    const int D = d * d;
    ComplexOperator out = ComplexOperator::zero(d, d);
    // phase states phi_k = (1/sqrt d) sum_j w^(jk) |jj>, k = 1..d-1
    for (int k = 1; k < d; ++k) {
        std::vector<cplx> c(d);
        for (int j = 0; j < d; ++j) {
            const double a = 2.0 * M_PI * double(j) * double(k) / double(d);
            c[j] = cplx(std::cos(a), std::sin(a)) / std::sqrt(double(d));
        }
        for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l)
                out.m(j * d + j, l * d + l) += c[j] * std::conj(c[l]);
    }
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            if (k != l) out.m(k * d + l, k * d + l) += 1.0;
    const double f = 1.0 / (D - 1);
    for (size_t t = 0; t < out.m.size(); ++t) out.m.data()[t] *= f;
    return out;
}

ConstructedPair construct_pair(const ConstructionSpec& spec) {
    spec.validate();
    switch (spec.method) {
        case Method::MethodI:
            return method_one(spec.schmidt_coeffs[0], spec.pair_i, spec.pair_j, spec.alpha,
                              spec.d1);
        case Method::MethodII:
            return method_two(spec.schmidt_coeffs[0], spec.mixing_weights, spec.d1, spec.d2);
        case Method::Dur: {
            const int d = spec.d1;
            std::vector<double> lam(d, 1.0 / std::sqrt(double(d)));
            return method_two(lam, spec.mixing_weights, d, d);
        }
        case Method::Generalized:
            throw PreconditionError(
                "construct_pair: Generalized has no single witness pair; use build_state");
    }
    throw PreconditionError("construct_pair: unreachable");
}

ComplexOperator build_state(const ConstructionSpec& spec, double eps) {
    spec.validate();
    if (spec.method == Method::Generalized) {
        ComplexOperator sigma = default_generalized_sigma(spec.schmidt_coeffs, spec.d1);
        return generalized_rho(spec.schmidt_coeffs, sigma, eps, spec.d1);
    }
    ConstructedPair pair = construct_pair(spec);
    return build_rho(pair.sigma, pair.phi, eps);
}

}  // namespace nptlab::constructions
