#pragma once

#include "nptlab/linalg.hpp"
#include "nptlab/types.hpp"

// Dense complex linear algebra on bipartite Hilbert spaces. Everything here is
// a pure function of its inputs; operators use row-major index a*dimB + b.
namespace nptlab::qcore {

inline constexpr long kDefaultSizeCap = 32768;  // 2^15 total dimension

// Kronecker product; subsystem dims compose multiplicatively.
ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b);

// rho^(x)n with tensor factors permuted to the A-major bipartition
// (a1..an | b1..bn), so the result is bipartite over dA^n (x) dB^n.
ComplexOperator regrouped_tensor_power(const ComplexOperator& rho, int n,
                                       long size_cap = kDefaultSizeCap);

// Transpose on subsystem B only: out[(m,mu),(n,nu)] = in[(m,nu),(n,mu)].
ComplexOperator partial_transpose(const ComplexOperator& m);

// Schmidt data via SVD of the dA x dB coefficient matrix; cached on the state.
// Degenerate coefficients keep descending order; each A-basis vector has its
// first nonzero component made real positive, with the phase moved to B.
SchmidtDecomposition schmidt_decompose(const BipartitePureState& psi);

int schmidt_rank(const BipartitePureState& psi);

// Full Hermitian eigensystem, eigenvalues ascending. Rejects inputs with
// entrywise asymmetry above 1e-8.
linalg::HermitianEigen hermitian_spectrum(const ComplexOperator& m);

struct PptResult {
    bool ppt = false;
    double min_eigenvalue = 0.0;
};

// True iff min eig of partial_transpose(rho) >= -tol.
PptResult is_ppt(const ComplexOperator& rho, double tol = tol::kPpt);

// Re <phi| PT(rho) |phi>; asserts the imaginary part is <= 1e-10.
double witness_value(const BipartitePureState& phi, const ComplexOperator& rho);

// sqrt(Tr (a-b)^2) for Hermitian a, b == Frobenius norm of the difference.
double hs_distance(const ComplexOperator& a, const ComplexOperator& b);

// --- small helpers shared across modules ---

cplx trace(const ComplexOperator& m);
double vector_norm(const std::vector<cplx>& v);
void normalize(std::vector<cplx>& v);

// <phi| M |phi> as a complex number (no PT applied).
cplx quadratic_form(const ComplexOperator& m, const std::vector<cplx>& phi);

// M |x>
std::vector<cplx> apply(const ComplexOperator& m, const std::vector<cplx>& x);

// Throws PreconditionError when the invariant fails.
void require_hermitian(const ComplexOperator& m, double tl = tol::kHermitian);
void require_density(const ComplexOperator& m, double trace_tol = tol::kTrace,
                     double psd_tol = tol::kPsd);

// |a>(x)|b> product state amplitudes.
std::vector<cplx> product_amplitudes(const std::vector<cplx>& a, const std::vector<cplx>& b);

// Projector |psi><psi| as an operator with psi's dims.
ComplexOperator projector(const BipartitePureState& psi);

}  // namespace nptlab::qcore
