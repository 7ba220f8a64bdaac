#pragma once

#include "susyqft/quadrature.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

namespace sqft {

// Real test function in the orthonormal Hermite-Gauss basis
// h_k(x) = H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi)).
// Trailing zero coefficients are stripped, so equal functions compare equal.
class TestFunction {
public:
    TestFunction() = default;
    explicit TestFunction(std::vector<double> coeffs);

    static TestFunction mode(std::size_t k, double amplitude = 1.0);

    const std::vector<double>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }
    bool is_zero() const { return c_.empty(); }

    double operator()(double x) const;
    // Unitary transform: sum_k c_k (-i)^k h_k(p).
    cplx fourier(double p) const;

    TestFunction operator+(const TestFunction& o) const;
    TestFunction operator-(const TestFunction& o) const;
    TestFunction operator-() const;
    TestFunction operator*(double a) const;
    friend TestFunction operator*(double a, const TestFunction& f) { return f * a; }

    bool operator==(const TestFunction& o) const { return c_ == o.c_; }
    bool operator!=(const TestFunction& o) const { return c_ != o.c_; }
    bool operator<(const TestFunction& o) const { return c_ < o.c_; }

private:
    void trim();
    std::vector<double> c_;
};

// Values h_0(x) ... h_{n-1}(x).
std::vector<double> hermite_functions(std::size_t n, double x);

TestFunction derivative(const TestFunction& f);
double inner(const TestFunction& f, const TestFunction& g);
// sigma(f, g) = (f, g').
double symplectic(const TestFunction& f, const TestFunction& g);

struct KernelConfig {
    double p_window = 40.0;
    int n_nodes = 2048;
    double pv_epsilon = 1e-6;
    bool operator<(const KernelConfig& o) const
    {
        if (p_window != o.p_window) return p_window < o.p_window;
        if (n_nodes != o.n_nodes) return n_nodes < o.n_nodes;
        return pv_epsilon < o.pv_epsilon;
    }
};

// Throws DomainError unless 0 <= Im z <= 1 (up to rounding slack).
void check_strip(cplx z, const char* where);

// Thermal covariances with complex shift z applied to the second argument.
// Transforms of test functions at the quadrature nodes are cached; the cache is
// guarded for concurrent readers and a single writer at a time.
class CovarianceEngine {
public:
    explicit CovarianceEngine(KernelConfig cfg = {});

    const KernelConfig& config() const { return cfg_; }

    // int p/(1-e^{-p}) e^{ipz} f^(p) conj(g^(p)) dp
    cplx s_cov(const TestFunction& f, const TestFunction& g, cplx z) const;
    // principal value of int e^{ipz}/(1-e^{-p}) f^ conj(g^) dp, smooth-part subtraction
    cplx theta(const TestFunction& f, const TestFunction& g, cplx z) const;
    // same integral with the window (-eps, eps) cut out; diagnostic only
    cplx theta_excluded(const TestFunction& f, const TestFunction& g, cplx z, double eps) const;

private:
    const std::vector<cplx>& transform(const TestFunction& f) const;

    KernelConfig cfg_;
    Rule rule_;
    mutable std::shared_mutex mutex_;
    mutable std::map<std::vector<double>, std::unique_ptr<std::vector<cplx>>> cache_;
};

// Shared engine per configuration.
const CovarianceEngine& engine_for(const KernelConfig& cfg);

cplx s_cov(const TestFunction& f, const TestFunction& g, cplx z, const KernelConfig& cfg = {});
cplx theta(const TestFunction& f, const TestFunction& g, cplx z, const KernelConfig& cfg = {});

struct Envelope {
    double A = 0;
    double B = 0;
    double min_margin = 0;  // min over samples of A + B|t| - |theta|
    std::size_t samples = 0;
};

// Affine envelope of |theta(f, g, t + is)| over t in [-t_max, t_max], s in {0, 1/2, 1}.
Envelope growth_check(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg = {},
                      double t_max = 10.0, int n_t = 41);

}  // namespace sqft
