#pragma once

#include <tuple>
#include <vector>

#include "nptlab/qcore.hpp"
#include "nptlab/types.hpp"

// State families: the analytic PT eigensystem of a pure state, the complement
// state, the epsilon family, the two pair-construction methods, the
// block-generalized family, and the reference PT operator they coincide with
// at the maximally entangled point.
namespace nptlab::constructions {

enum class Method { MethodI, MethodII, Generalized, Dur };

const char* method_name(Method m);
Method method_from_name(const std::string& s);

// Mixing weight for the antisymmetric pair (i, j), i < j.
struct PairWeight {
    int i = 0, j = 1;
    double w = 1.0;
};

struct ConstructionSpec {
    Method method = Method::MethodII;
    int d1 = 3, d2 = 3;
    // One coefficient vector per block (single entry except for Generalized).
    std::vector<std::vector<double>> schmidt_coeffs;
    std::vector<PairWeight> mixing_weights;  // MethodII/Dur; empty -> uniform
    double alpha = 0.5;                      // MethodI weight
    int pair_i = 0, pair_j = 1;              // MethodI antisymmetric pair
    int block_count = 1;                     // Generalized
    double epsilon = 0.0;

    void validate() const;  // throws PreconditionError with field diagnostics
};

struct ConstructedPair {
    ComplexOperator sigma;    // NPT density
    BipartitePureState phi;   // Schmidt rank >= 3
    double lambda_abs = 0.0;  // -<phi| sigma^PT |phi>
};

// (|ij> - |ji>)/sqrt(2) and (|ij> + |ji>)/sqrt(2); Schmidt rank 2.
BipartitePureState antisym_vector(int i, int j, int d1, int d2);
BipartitePureState sym_vector(int i, int j, int d1, int d2);

struct PtEigenpair {
    double value = 0.0;
    BipartitePureState vector;
};

// Analytic eigensystem of PT(|phi><phi|): {s_i^2 on the diagonal pairs,
// +-s_i s_j on the symmetric/antisymmetric pairs, zeros on the rest}.
// General phi is canonicalized through its Schmidt decomposition.
std::vector<PtEigenpair> pure_pt_eigensystem(const BipartitePureState& phi);

// (1/(D-1)) (I - |phi><phi|)^PT — the separable endpoint of the family.
ComplexOperator complement_state(const BipartitePureState& phi);

// eps*sigma + (1-eps)*complement_state(phi).
ComplexOperator build_rho(const ComplexOperator& sigma, const BipartitePureState& phi,
                          double eps);

// sigma = |psi><psi| for psi = sum beta_l |ll>, phi mixes the (i,j)
// antisymmetric eigenvector with the product state |mm> outside the support.
ConstructedPair method_one(const std::vector<double>& beta, int i, int j, double alpha, int d);

// phi = sum lambda_i |ii>; sigma = convex mix of antisymmetric projectors.
ConstructedPair method_two(const std::vector<double>& lambda,
                           const std::vector<PairWeight>& weights, int d1, int d2);

// Uniform convex mix over every in-block antisymmetric eigenvector.
ComplexOperator default_generalized_sigma(const std::vector<std::vector<double>>& blocks, int d);

// eps*sigma + ((1-eps)/(D-m)) (I - sum_i |phi_i><phi_i|)^PT, block i occupying
// indices [k*i, k*i + k - 1].
ComplexOperator generalized_rho(const std::vector<std::vector<double>>& blocks,
                                const ComplexOperator& sigma, double eps, int d);

// Block states phi_i used by generalized_rho.
std::vector<BipartitePureState> generalized_block_states(
    const std::vector<std::vector<double>>& blocks, int d);

// (1/(d^2-1)) (sum_{k>=1} |phi_k><phi_k| + sum_{k!=l} |kl><kl|) with
// phi_k = (1/sqrt d) sum_j exp(2 pi i j k / d) |jj>.
ComplexOperator dur_pt_operator(int d);

// Dispatch on spec.method; Generalized has no single witness pair.
ConstructedPair construct_pair(const ConstructionSpec& spec);

// The family member rho(eps) for any method.
ComplexOperator build_state(const ConstructionSpec& spec, double eps);

}  // namespace nptlab::constructions
