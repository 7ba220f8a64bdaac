#pragma once

#include "susyqft/algebra.hpp"

#include <cstdint>
#include <vector>

namespace sqft {

enum class LaplaceMethod { Auto, TensorGaussLaguerre, QuasiMonteCarlo };

struct LaplaceConfig {
    LaplaceMethod method = LaplaceMethod::Auto;
    int nodes_per_dim = 48;
    int qmc_samples = 1 << 16;
    int dim_switch = 4;  // Auto uses the tensor rule up to this many dimensions
    std::uint64_t seed = 20240601;
};

struct EvalConfig {
    KernelConfig kernel;
    LaplaceConfig laplace;
};

using CMatrix = std::vector<std::vector<cplx>>;

// Covariances <f_k|f_l> at relative shifts z_l - z_k for every ordered pair.
CMatrix covariance_matrix(const Gens& gens, const KernelConfig& cfg = {});

// omega(R(l_1,f_1) ... R(l_n,f_n)) times the word coefficient. Negative Re(lambda)
// uses R(l, f) = -R(-l, -f). Runs of identical adjacent resolvents are merged into
// one Laplace variable with weight t^{m-1}/(m-1)!.
cplx omega_resolvent(const Word& w, const EvalConfig& cfg = {});

// omega of a bosonic word with exactly one field generator.
cplx omega_with_field_insertion(const Word& w, const EvalConfig& cfg = {});

// Signed sum over pairings P with P(1)<...<P(k), P(j)<P(k+j), including (-1)^{k(k-1)/2}.
// theta[a][b] is read for a < b only.
cplx pairing_sum(const CMatrix& theta, std::size_t n);
std::size_t pairing_count(std::size_t n);

// psi(c(f_1) ... c(f_n)) times the word coefficient.
cplx psi_clifford(const Word& w, const KernelConfig& cfg = {});

// phi = psi (x) omega, extended linearly.
cplx phi(const Element& a, const EvalConfig& cfg = {});

struct KmsValues {
    cplx lhs;
    cplx rhs;
};

// lhs = phi(A alpha_{t+i}(B)), rhs = phi(alpha_t(B) gamma(A)).
KmsValues kms_boundary_check(const Element& A, const Element& B, double t, const EvalConfig& cfg = {});

struct MasterLemmaValues {
    cplx lhs;  // d/dx_r omega along f_r -> x f_r at x = 1
    cplx rhs;  // covariance-derivative combination of second lambda derivatives
    double residual;
};

// Word of resolvents with positive real lambdas; r indexes the scaled generator.
MasterLemmaValues master_lemma_check(const Word& w, std::size_t r, const EvalConfig& cfg = {}, double hx = 1e-3,
                                     double hl = 1e-2);

// Largest |<f_k|f_l>| over all generators of all words (relative shifts, upper triangle).
double max_covariance(const Element& a, const KernelConfig& cfg = {});

}  // namespace sqft
