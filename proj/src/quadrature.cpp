#include "susyqft/quadrature.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_qrng.h>

#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace sqft {

namespace {

// GSL tables are cached per node count; rules are rescaled on demand.
std::mutex g_mutex;
std::map<std::size_t, Rule> g_legendre;
std::map<std::size_t, Rule> g_laguerre;

const Rule& legendre_unit(std::size_t n)
{
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_legendre.find(n);
    if (it != g_legendre.end()) return it->second;
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
    if (!t) throw std::runtime_error("gauss_legendre: allocation failed");
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        gsl_integration_glfixed_point(-1.0, 1.0, i, &r.x[i], &r.w[i], t);
    gsl_integration_glfixed_table_free(t);
    return g_legendre.emplace(n, std::move(r)).first->second;
}

}  // namespace

Rule gauss_legendre(std::size_t n, double a, double b)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    const Rule& u = legendre_unit(n);
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    for (std::size_t i = 0; i < n; ++i) {
        r.x[i] = m + h * u.x[i];
        r.w[i] = h * u.w[i];
    }
    return r;
}

Rule gauss_laguerre(std::size_t n)
{
    if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be positive");
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_laguerre.find(n);
    if (it != g_laguerre.end()) return it->second;
    gsl_integration_fixed_workspace* ws =
        gsl_integration_fixed_alloc(gsl_integration_fixed_laguerre, n, 0.0, 1.0, 0.0, 0.0);
    if (!ws) throw std::runtime_error("gauss_laguerre: allocation failed");
    Rule r;
    r.x.assign(gsl_integration_fixed_nodes(ws), gsl_integration_fixed_nodes(ws) + n);
    r.w.assign(gsl_integration_fixed_weights(ws), gsl_integration_fixed_weights(ws) + n);
    gsl_integration_fixed_free(ws);
    return g_laguerre.emplace(n, r).first->second;
}

namespace {

template <class T>
T pairwise(const T* v, std::size_t n)
{
    if (n == 0) return T(0);
    if (n <= 8) {
        T s(0);
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise(v, h) + pairwise(v + h, n - h);
}

}  // namespace

cplx pairwise_sum(const std::vector<cplx>& v) { return pairwise(v.data(), v.size()); }
double pairwise_sum(const std::vector<double>& v) { return pairwise(v.data(), v.size()); }

ShiftedSobol::ShiftedSobol(unsigned dim, std::uint64_t seed) : dim_(dim), shift_(dim)
{
    q_ = gsl_qrng_alloc(gsl_qrng_sobol, dim);
    if (!q_) throw std::invalid_argument("ShiftedSobol: unsupported dimension");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : shift_) s = u(rng);
    // skip the origin
    std::vector<double> tmp(dim);
    gsl_qrng_get(static_cast<gsl_qrng*>(q_), tmp.data());
}

ShiftedSobol::~ShiftedSobol() { gsl_qrng_free(static_cast<gsl_qrng*>(q_)); }

void ShiftedSobol::next(double* out)
{
    gsl_qrng_get(static_cast<gsl_qrng*>(q_), out);
    for (unsigned k = 0; k < dim_; ++k) {
        double v = out[k] + shift_[k];
        out[k] = v >= 1.0 ? v - 1.0 : v;
    }
}

}  // namespace sqft
