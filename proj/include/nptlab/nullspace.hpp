#pragma once

#include <cstdint>
#include <vector>

#include "nptlab/distill.hpp"
#include "nptlab/qcore.hpp"
#include "nptlab/rng.hpp"
#include "nptlab/types.hpp"

// Computational check of the null-space rank property: build the diagonal
// entangled basis, assemble the product-coefficient linear system for n
// copies, and test that every two-row-deleted submatrix keeps full column
// rank.
namespace nptlab::nullspace {

// Unitary whose column l holds the coefficients of the l-th diagonal basis
// state sum_i entries(i,l) |ii>; column 0 is the construction's positive
// coefficient vector.
struct LambdaMatrix {
    Matrix entries;
    int k = 0;
};

// Deterministic completion of a positive unit vector to an orthonormal column
// set via the Householder reflector mapping e0 to lambda0.
LambdaMatrix extend_to_unitary(const std::vector<double>& lambda0);

// Haar-like draw with column 0 forced positive: reflector of a random
// positive unit vector times diag(1, Haar(k-1)).
LambdaMatrix random_lambda_matrix(int k, Rng& rng);

struct NullspaceDimensions {
    long expected = 0;  // D^n - (D-1)^n
    long measured = 0;  // eigenvalues below 1e-10
};

NullspaceDimensions nullspace_dimension_check(const BipartitePureState& phi, int n,
                                              long size_cap = qcore::kDefaultSizeCap);

struct CoefficientMatrix {
    Matrix a;                                 // k^n rows, k^n - (k-1)^n cols
    std::vector<std::vector<int>> row_index;  // J in {0..k-1}^n, lexicographic
    std::vector<std::vector<int>> col_index;  // L with at least one zero entry
};

// A[J, L] = prod_t entries(j_t, l_t): the coefficient of |J>|J> in the
// product of diagonal basis states indexed by L.
CoefficientMatrix coefficient_matrix(const LambdaMatrix& lm, int n);

struct RankCheckReport {
    int k = 0, n = 0;
    long rows = 0, cols = 0;
    long pairs_tested = 0;
    bool exhaustive = true;
    double min_singular_value = 0.0;  // raw minimum over all tested submatrices
    double max_singular_value = 0.0;
    bool pass = false;  // min sigma > tol * per-submatrix largest sigma
};

// Deletes every unordered row pair (exhaustive when the pair count fits the
// limit, otherwise a seeded sample) and checks the smallest singular value of
// the remaining submatrix.
RankCheckReport two_deleted_rank_check(const Matrix& a, double tl = tol::kRank,
                                       long exhaustive_limit = 5000, uint64_t seed = 0);

// See-saw scan of the n-copy complement operator; a strictly positive value
// corroborates the absence of Schmidt-rank-2 null vectors.
distill::SeesawResult sr2_nullspace_scan(const BipartitePureState& phi, int n,
                                         const distill::SeesawOptions& opts);

}  // namespace nptlab::nullspace
