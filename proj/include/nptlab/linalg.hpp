#pragma once

#include <vector>

#include "nptlab/rng.hpp"
#include "nptlab/types.hpp"

namespace nptlab::linalg {

struct HermitianEigen {
    std::vector<double> values;              // ascending
    std::vector<std::vector<cplx>> vectors;  // vectors[k] pairs with values[k]; orthonormal
};

// Dense Hermitian eigensolver: Householder tridiagonalization followed by
// implicit-shift QL with accumulated transforms. Throws PreconditionError when
// max entrywise |A - A'| exceeds asym_tol, NumericError on non-convergence.
HermitianEigen hermitian_eigensystem(const Matrix& a, double asym_tol = 1e-8);

// Eigenvalues only (same reduction, no accumulation).
std::vector<double> hermitian_eigenvalues(const Matrix& a, double asym_tol = 1e-8);

struct SvdResult {
    std::vector<double> singular;            // descending, length min(m,n)
    std::vector<std::vector<cplx>> u;        // left vectors, length m each
    std::vector<std::vector<cplx>> v;        // right vectors, length n each; A = sum s u v^dag
};

// Thin SVD by one-sided Jacobi on columns. High relative accuracy on the
// small singular values, which is what the rank checks lean on.
SvdResult svd(const Matrix& a);

struct SingularRange {
    double smallest = 0.0;
    double largest = 0.0;
};

// Column-norm extremes after Jacobi sweeps; no vector accumulation.
SingularRange singular_range(const Matrix& a);

double max_asymmetry(const Matrix& a);
void hermitize(Matrix& a);  // a <- (a + a^dag)/2

// Extends `family` (orthonormal vectors of length dim) to `count` vectors by
// Gram-Schmidt over canonical basis candidates. Deterministic.
std::vector<std::vector<cplx>> complete_orthonormal(std::vector<std::vector<cplx>> family,
                                                    int dim, int count);

// In-place modified Gram-Schmidt with one re-orthogonalization pass.
// Returns false if a column collapses (rank deficiency).
bool orthonormalize(std::vector<std::vector<cplx>>& cols);

Matrix random_unitary(int n, Rng& rng);

}  // namespace nptlab::linalg
