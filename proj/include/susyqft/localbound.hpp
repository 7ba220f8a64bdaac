#pragma once

#include "susyqft/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace sqft {

// J = [-half_length, half_length].
struct Interval {
    double half_length = 0.5;
    double length() const { return 2 * half_length; }
};

// Kernel K sampled at the midpoints x_a = -k + (a + 1/2) dx; the operator acts as
// (Af)(x_a) = sum_b K(x_a, x_b) f(x_b) dx.
struct GridOperator {
    Interval J;
    int N = 0;
    double dx = 0;
    std::vector<double> x;
    Eigen::MatrixXcd kernel;

    // dx * kernel: the matrix in the orthonormal basis of normalized cell indicators
    Eigen::MatrixXcd matrix() const { return dx * kernel; }
};

// int_0^inf ln(1 - e^{-p}) cos(p u) dp. The piece on [0,1] uses p = e^v on ten
// 32-point panels, the tail is 200-point Gauss-Legendre on [1, 60]. Absolute error is
// below 1e-10 for |u| <= 12 and grows past that (about 2e-8 at u = 15).
double L_kernel(double u);

GridOperator grid_operator(Interval J, int N, const std::function<cplx(double, double)>& k);

// K(x, y) = 2i (x - y) L(x - y)
GridOperator kernel_T(Interval J, int N);

std::vector<double> singular_values(const GridOperator& op);
double trace_norm(const GridOperator& op);
// max |M - M^*| over entries of the kernel
double hermiticity_residual(const GridOperator& op);

struct SpectrumS {
    std::vector<double> eigenvalues;  // ascending
    double block_residual = 0;        // max entry of |D + A| and |C + B|
    double hermitian_residual = 0;    // max entry of |S - S^*| before symmetrization
    double symmetry_residual = 0;     // max |s_k + s_{n-1-k}|
};

// S = 1/2 (0 I; I 0) + (-iB A; A iB) from the blocks of t in the antiperiodic Fourier
// basis of J split into positive and negative frequencies. t is the two-point kernel
// correction itself (already normalized); N must be even.
SpectrumS spectrum_S(const GridOperator& t);
// Same with t = -K / (2 pi), K from kernel_T.
SpectrumS spectrum_S(Interval J, int N);

struct LocalBound {
    double half_length = 0;
    int N = 0;
    double trace_norm = 0;
    double product = 1;     // prod over |s| > 1/2 of 2|s|
    double excess_sum = 0;  // sum over |s| > 1/2 of (2|s| - 1)
    int outliers = 0;  // eigenvalues with |s| > 1/2 + 1e-9
    double bound = 1;  // exp(b * trace_norm)
    double log_product_over_J_squared = 0;
};

// Product over eigenvalues with |s| > 1/2 of 2|s|; outliers counts |s| > 1/2 + 1e-9.
double spectral_product(const std::vector<double>& s, double* excess = nullptr, int* outliers = nullptr);

LocalBound local_norm_bound(Interval J, int N, double b);

// lengths are |J|; rows carry half_length = |J|/2
std::vector<LocalBound> local_bound_sweep(const std::vector<double>& lengths, int N, double b);

std::string sweep_csv(const std::vector<LocalBound>& rows);

// Maxima of log(product)/trace_norm and log(product)/|J|^2 on the 2048-point reference
// sweep over |J| in {1, 2, 4, 8} (`susyqft local-bound --grid 2048 --fit`).
constexpr double kBReference = 0.27804729464838174;
constexpr double kKReference = 0.44042601586376329;
constexpr double kFitHeadroom = 1.001;
constexpr double kBFit = kBReference * kFitHeadroom;
constexpr double kKFit = kKReference * kFitHeadroom;
// product at |J| = 2 on the 2048-point grid
constexpr double kProductJ2Reference = 3.2865941098364622;

struct FitConstants {
    double b = 0;
    double K = 0;
};

FitConstants fit_constants(const std::vector<LocalBound>& rows);

}  // namespace sqft
