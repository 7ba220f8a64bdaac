#pragma once

// Independent reference computations used only by the tests.

#include <gsl/gsl_sf_erf.h>
#include <gsl/gsl_sf_hermite.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline double hermite_value(const std::vector<double>& c, double x)
{
    double s = 0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * gsl_sf_hermite_func(static_cast<int>(k), x);
    return s;
}

// unitary transform of a Hermite expansion: h_k -> (-i)^k h_k
inline cplx hermite_fourier(const std::vector<double>& c, double p)
{
    const cplx mi(0, -1);
    cplx s = 0, ph = 1;
    for (std::size_t k = 0; k < c.size(); ++k, ph *= mi) s += c[k] * ph * gsl_sf_hermite_func(static_cast<int>(k), p);
    return s;
}

// Midpoint rule on [-a, a] with n cells; symmetric nodes never hit 0, so odd
// singularities at the origin cancel in pairs (principal value).
inline cplx midpoint(const std::function<cplx(double)>& f, double a, int n)
{
    const double h = 2 * a / n;
    cplx s = 0;
    for (int k = 0; k < n; ++k) s += f(-a + (k + 0.5) * h);
    return s * h;
}

// Pfaffian of the antisymmetric matrix built from the upper triangle, by expansion
// along the first row.
inline cplx pfaffian(const std::vector<std::vector<cplx>>& up, std::vector<int> idx)
{
    if (idx.empty()) return 1.0;
    if (idx.size() % 2) return 0.0;
    const int a = idx[0];
    cplx s = 0;
    for (std::size_t j = 1; j < idx.size(); ++j) {
        std::vector<int> rest;
        for (std::size_t k = 1; k < idx.size(); ++k)
            if (k != j) rest.push_back(idx[k]);
        double sign = (j % 2) ? 1.0 : -1.0;
        s += sign * up[a][idx[j]] * pfaffian(up, rest);
    }
    return s;
}

// int_0^inf exp(-l t - a t^2) dt for l real, a > 0
inline double gauss_laplace(double l, double a)
{
    const double r = std::sqrt(a);
    return std::sqrt(M_PI) / (2 * r) * std::exp(l * l / (4 * a) + gsl_sf_log_erfc(l / (2 * r)));
}

// int_0^inf ln(1 - e^{-p}) cos(pu) dp in closed form
inline double L_closed(double u)
{
    if (u == 0) return -M_PI * M_PI / 6;
    const double x = M_PI * u;
    return -(x / std::tanh(x) - 1) / (2 * u * u);
}

}  // namespace oracle
