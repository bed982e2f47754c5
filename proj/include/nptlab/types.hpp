#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nptlab {

using cplx = std::complex<double>;

// User/config error: bad dimensions, out-of-range parameters, malformed input.
// CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (eigensolver non-convergence etc.). CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Dense row-major complex matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw PreconditionError("Matrix: negative dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    cplx* row(int i) { return a_.data() + size_t(i) * cols_; }
    const cplx* row(int i) const { return a_.data() + size_t(i) * cols_; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    size_t size() const { return a_.size(); }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

// Schmidt data of a bipartite pure state: amplitudes = Σ_k c_k · a_k ⊗ b_k,
// coefficients sorted descending, local bases orthonormal.
struct SchmidtDecomposition {
    std::vector<double> coefficients;
    std::vector<std::vector<cplx>> basisA;
    std::vector<std::vector<cplx>> basisB;
    int rank = 0;
    static constexpr double kRankTol = 1e-9;
};

// Square operator on H_A ⊗ H_B, side dimA·dimB, row-major, index a·dimB + b.
struct ComplexOperator {
    Matrix m;
    int dimA = 0, dimB = 0;

    ComplexOperator() = default;
    ComplexOperator(Matrix mat, int dA, int dB) : m(std::move(mat)), dimA(dA), dimB(dB) {
        if (dA <= 0 || dB <= 0) throw PreconditionError("ComplexOperator: dims must be positive");
        if (m.rows() != m.cols() || m.rows() != dA * dB)
            throw PreconditionError("ComplexOperator: matrix side must equal dimA*dimB");
    }

    int dim() const { return dimA * dimB; }

    static ComplexOperator identity(int dA, int dB) {
        return ComplexOperator(Matrix::identity(dA * dB), dA, dB);
    }
    static ComplexOperator zero(int dA, int dB) {
        return ComplexOperator(Matrix(dA * dB, dA * dB), dA, dB);
    }
};

// Normalized vector on H_A ⊗ H_B with lazily cached Schmidt data.
struct BipartitePureState {
    std::vector<cplx> amp;
    int dimA = 0, dimB = 0;
    mutable std::shared_ptr<const SchmidtDecomposition> schmidt;

    BipartitePureState() = default;
    BipartitePureState(std::vector<cplx> amplitudes, int dA, int dB)
        : amp(std::move(amplitudes)), dimA(dA), dimB(dB) {
        if (dA <= 0 || dB <= 0) throw PreconditionError("BipartitePureState: dims must be positive");
        if (amp.size() != size_t(dA) * dB)
            throw PreconditionError("BipartitePureState: amplitude length must equal dimA*dimB");
    }

    int dim() const { return dimA * dimB; }
    cplx& at(int a, int b) { return amp[size_t(a) * dimB + b]; }
    const cplx& at(int a, int b) const { return amp[size_t(a) * dimB + b]; }
};

// Shared numeric tolerances.
namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kPpt = 1e-10;
inline constexpr double kRank = 1e-9;
}  // namespace tol

}  // namespace nptlab
