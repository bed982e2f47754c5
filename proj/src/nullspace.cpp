#include "nptlab/nullspace.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nptlab/constructions.hpp"
#include "nptlab/kernels.hpp"
#include "nptlab/linalg.hpp"
#include "nptlab/parallel.hpp"

namespace nptlab::nullspace {

namespace {

long ipow(long base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<std::vector<int>> multi_indices(int k, int n) {
    std::vector<std::vector<int>> out;
    out.reserve(ipow(k, n));
    std::vector<int> cur(n, 0);
    for (;;) {
        out.push_back(cur);
        int t = n - 1;
        while (t >= 0 && ++cur[t] == k) cur[t--] = 0;
        if (t < 0) break;
    }
    return out;
}

}  // namespace

LambdaMatrix extend_to_unitary(const std::vector<double>& lambda0) {
    const int k = int(lambda0.size());
    if (k == 0) throw PreconditionError("extend_to_unitary: empty vector");
    double norm2 = 0.0;
    for (double x : lambda0) {
        if (x < 0.0) throw PreconditionError("extend_to_unitary: entries must be non-negative");
        norm2 += x * x;
    }
    if (norm2 == 0.0) throw PreconditionError("extend_to_unitary: zero vector");
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw PreconditionError("extend_to_unitary: vector must have unit norm");

    // u = e0 - lambda0; H = I - 2 u u^T / |u|^2 maps e0 to lambda0
    std::vector<double> u(lambda0);
    for (double& x : u) x = -x;
    u[0] += 1.0;
    double un2 = 0.0;
    for (double x : u) un2 += x * x;

    LambdaMatrix lm;
    lm.k = k;
    lm.entries = Matrix::identity(k);
    if (un2 > 0.0) {
        const double f = 2.0 / un2;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) lm.entries(i, j) -= f * u[i] * u[j];
    }
    return lm;
}

LambdaMatrix random_lambda_matrix(int k, Rng& rng) {
    std::vector<double> lam(k);
    double n2 = 0.0;
    for (double& x : lam) {
        x = rng.uniform(0.2, 1.0);
        n2 += x * x;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : lam) x *= inv;

    LambdaMatrix base = extend_to_unitary(lam);
    if (k == 1) return base;
    Matrix v = linalg::random_unitary(k - 1, rng);
    // entries = base * diag(1, v)
    LambdaMatrix out;
    out.k = k;
    out.entries = Matrix(k, k);
    for (int i = 0; i < k; ++i) out.entries(i, 0) = base.entries(i, 0);
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < k; ++i) {
            cplx acc(0, 0);
            for (int l = 1; l < k; ++l) acc += base.entries(i, l) * v(l - 1, j - 1);
            out.entries(i, j) = acc;
        }
    return out;
}

NullspaceDimensions nullspace_dimension_check(const BipartitePureState& phi, int n,
                                              long size_cap) {
    if (n < 1) throw PreconditionError("nullspace_dimension_check: n must be >= 1");
    const long D = phi.dim();
    NullspaceDimensions r;
    r.expected = ipow(D, n) - ipow(D - 1, n);
    ComplexOperator comp = constructions::complement_state(phi);
    ComplexOperator base = qcore::partial_transpose(comp);  // (1/(D-1)) (I - |phi><phi|)
    ComplexOperator power = qcore::regrouped_tensor_power(base, n, size_cap);
    std::vector<double> ev = linalg::hermitian_eigenvalues(power.m);
    r.measured = std::count_if(ev.begin(), ev.end(), [](double e) { return e < 1e-10; });
    return r;
}

CoefficientMatrix coefficient_matrix(const LambdaMatrix& lm, int n) {
    const int k = lm.k;
    if (k < 3) throw PreconditionError("coefficient_matrix: needs k >= 3");
    if (n < 1) throw PreconditionError("coefficient_matrix: needs n >= 1");
    const long rows = ipow(k, n);
    if (rows > qcore::kDefaultSizeCap)
        throw PreconditionError("coefficient_matrix: k^n exceeds the size cap");

    CoefficientMatrix out;
    out.row_index = multi_indices(k, n);
    for (const auto& l : out.row_index) {
        if (std::find(l.begin(), l.end(), 0) != l.end()) out.col_index.push_back(l);
    }
    const long cols = long(out.col_index.size());
    out.a = Matrix(int(rows), int(cols));
    for (long r = 0; r < rows; ++r) {
        const auto& J = out.row_index[r];
        for (long c = 0; c < cols; ++c) {
            const auto& L = out.col_index[c];
            cplx v(1, 0);
            for (int t = 0; t < n; ++t) v *= lm.entries(J[t], L[t]);
            out.a(int(r), int(c)) = v;
        }
    }
    return out;
}

RankCheckReport two_deleted_rank_check(const Matrix& a, double tl, long exhaustive_limit,
                                       uint64_t seed) {
    const long rows = a.rows(), cols = a.cols();
    if (rows < cols + 2)
        throw PreconditionError("two_deleted_rank_check: needs rows >= cols + 2");

    const long total_pairs = rows * (rows - 1) / 2;
    std::vector<std::pair<int, int>> pairs;
    bool exhaustive = total_pairs <= exhaustive_limit;
    if (exhaustive) {
        pairs.reserve(total_pairs);
        for (int i = 0; i < rows; ++i)
            for (int j = i + 1; j < rows; ++j) pairs.emplace_back(i, j);
    } else {
        Rng rng(seed);
        std::set<long> chosen;
        while (long(chosen.size()) < exhaustive_limit)
            chosen.insert(long(rng.below(uint64_t(total_pairs))));
        for (long flat : chosen) {
            // unrank the pair (i < j) from the flat enumeration
            long i = 0, remaining = flat;
            while (remaining >= rows - 1 - i) {
                remaining -= rows - 1 - i;
                ++i;
            }
            pairs.emplace_back(int(i), int(i + 1 + remaining));
        }
    }

    std::vector<double> mins(pairs.size()), maxs(pairs.size());
    parallel_for(pairs.size(), [&](size_t p) {
        const auto [r1, r2] = pairs[p];
        Matrix sub(int(rows - 2), int(cols));
        int w = 0;
        for (int r = 0; r < rows; ++r) {
            if (r == r1 || r == r2) continue;
            for (int c = 0; c < cols; ++c) sub(w, c) = a(r, c);
            ++w;
        }
        linalg::SingularRange sr = linalg::singular_range(sub);
        mins[p] = sr.smallest;
        maxs[p] = sr.largest;
    });

    RankCheckReport rep;
    rep.rows = rows;
    rep.cols = cols;
    rep.pairs_tested = long(pairs.size());
    rep.exhaustive = exhaustive;
    rep.pass = true;
    rep.min_singular_value = mins.empty() ? 0.0 : mins[0];
    rep.max_singular_value = maxs.empty() ? 0.0 : maxs[0];
    for (size_t p = 0; p < pairs.size(); ++p) {
        rep.min_singular_value = std::min(rep.min_singular_value, mins[p]);
        rep.max_singular_value = std::max(rep.max_singular_value, maxs[p]);
        if (!(mins[p] > tl * maxs[p])) rep.pass = false;
    }
    return rep;
}

distill::SeesawResult sr2_nullspace_scan(const BipartitePureState& phi, int n,
                                         const distill::SeesawOptions& opts) {
    if (qcore::schmidt_rank(phi) < 3)
        throw PreconditionError("sr2_nullspace_scan: phi must have Schmidt rank >= 3");
    ComplexOperator comp = constructions::complement_state(phi);
    ComplexOperator base = qcore::partial_transpose(comp);
    ComplexOperator power = qcore::regrouped_tensor_power(base, n, opts.size_cap);
    distill::SeesawResult res = distill::seesaw_min(power, opts);
    res.n_copies = n;
    return res;
}

}  // namespace nptlab::nullspace
