#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nptlab/constructions.hpp"
#include "nptlab/qcore.hpp"
#include "nptlab/types.hpp"

// Schmidt-rank-2 witness search: alternating 2-dim subspace projection with
// exact eigenproblem half-steps. A negative value certifies distillability of
// the underlying n copies; a non-negative value is heuristic evidence only.
namespace nptlab::distill {

struct SeesawOptions {
    int restarts = 64;
    int max_iters = 200;
    double conv_tol = 1e-11;  // absolute objective change per full iteration
    uint64_t seed = 0;
    long size_cap = qcore::kDefaultSizeCap;

    void validate() const;
};

struct SeesawResult {
    double value = 0.0;             // best objective over restarts
    BipartitePureState witness;     // Schmidt rank <= 2
    std::vector<int> iterations_per_restart;
    std::vector<bool> converged;
    std::vector<std::vector<double>> traces;  // per-restart objective after each half-step
    int best_restart = -1;
    int n_copies = 0;                 // set by f_estimate / scans
    std::optional<double> epsilon;    // set by f_estimate
};

// Minimize <phi|M|phi> over Schmidt-rank-2 phi. Each restart draws a random
// orthonormal B-side pair, then alternates (project onto H_A x span(b1,b2),
// take minimal eigenvector) with the A-side analogue on the iterate's Schmidt
// support. The objective never increases across half-steps; the result is an
// upper bound on the true minimum.
SeesawResult seesaw_min(const ComplexOperator& m, const SeesawOptions& opts);

// Builds rho(eps) from the spec, applies PT, takes the regrouped n-copy
// power, and runs seesaw_min. PT commutes with the regrouped power, so the
// transpose is applied first on the small factor.
SeesawResult f_estimate(const constructions::ConstructionSpec& spec, double eps, int n,
                        const SeesawOptions& opts);

struct ThresholdReport {
    int n = 0;
    bool bracket_found = false;
    double lo = 0.0, hi = 0.0;  // hi carries a verified negative certificate
    SeesawResult certificate_at_hi;
    std::vector<std::pair<double, double>> search_trace;  // (eps, f-estimate)
};

// Coarse grid scan for the first sign change, then bisection on the sign of
// the see-saw estimate (20 steps or bracket width < 1e-4). hi is a certified
// upper bound on the threshold; lo is heuristic (no witness found there).
ThresholdReport epsilon_threshold(const constructions::ConstructionSpec& spec, int n,
                                  const SeesawOptions& opts, int grid = 10);

// Same search over an arbitrary estimator (estimate(eps) -> SeesawResult).
template <typename F>
ThresholdReport threshold_search(F&& estimate, int n, int grid) {
    if (grid < 2) throw PreconditionError("epsilon_threshold: grid must be >= 2");
    ThresholdReport rep;
    rep.n = n;

    SeesawResult at_zero = estimate(0.0);
    rep.search_trace.emplace_back(0.0, at_zero.value);
    if (at_zero.value < -1e-12)
        throw PreconditionError("epsilon_threshold: f-estimate already negative at eps = 0");

    double lo = 0.0, hi = -1.0;
    SeesawResult cert;
    for (int i = 1; i <= grid; ++i) {
        const double eps = double(i) / grid;
        SeesawResult r = estimate(eps);
        rep.search_trace.emplace_back(eps, r.value);
        if (r.value < -1e-10) {
            hi = eps;
            cert = std::move(r);
            break;
        }
        lo = eps;
    }
    if (hi < 0.0) {
        rep.bracket_found = false;  // no distillability detected anywhere on the grid
        return rep;
    }

    for (int step = 0; step < 20 && (hi - lo) >= 1e-4; ++step) {
        const double mid = 0.5 * (lo + hi);
        SeesawResult r = estimate(mid);
        rep.search_trace.emplace_back(mid, r.value);
        if (r.value < -1e-10) {
            hi = mid;
            cert = std::move(r);
        } else {
            lo = mid;
        }
    }

    rep.bracket_found = true;
    rep.lo = lo;
    rep.hi = hi;
    rep.certificate_at_hi = std::move(cert);
    return rep;
}

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

// Independently rebuilds the operator and recomputes the witness value and
// Schmidt rank.
VerifyResult certificate_verify(const SeesawResult& res,
                                const constructions::ConstructionSpec& spec, double eps);

}  // namespace nptlab::distill
