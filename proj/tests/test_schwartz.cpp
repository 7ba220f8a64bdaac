#include "oracles.hpp"

#include "susyqft/errors.hpp"
#include "susyqft/schwartz.hpp"

#include <doctest.h>

using namespace sqft;

namespace {

const TestFunction F({0.7, -0.2, 0.4, 0.1});
const TestFunction G({-0.3, 0.5, 0.0, 0.25, -0.1});

double numeric_inner(const TestFunction& a, const TestFunction& b)
{
    return oracle::midpoint([&](double x) { return oracle::hermite_value(a.coeffs(), x) * oracle::hermite_value(b.coeffs(), x); },
                            15.0, 30000)
        .real();
}

}  // namespace

TEST_CASE("hermite functions agree with GSL")
{
    for (double x : {-6.0, -1.3, 0.0, 0.4, 2.5, 9.0}) {
        std::vector<double> h = hermite_functions(12, x);
        for (int k = 0; k < 12; ++k) CHECK(h[k] == doctest::Approx(gsl_sf_hermite_func(k, x)).epsilon(1e-12));
    }
}

TEST_CASE("point values and trailing zeros")
{
    CHECK(TestFunction({1.0, 2.0, 0.0, 0.0}) == TestFunction({1.0, 2.0}));
    CHECK(TestFunction({0.0, 0.0}).is_zero());
    for (double x : {-2.0, 0.3, 1.7}) CHECK(F(x) == doctest::Approx(oracle::hermite_value(F.coeffs(), x)).epsilon(1e-13));
}

TEST_CASE("inner product and modes")
{
    CHECK(inner(F, G) == doctest::Approx(numeric_inner(F, G)).epsilon(1e-10));
    for (std::size_t k = 0; k < 5; ++k) CHECK(inner(TestFunction::mode(k), TestFunction::mode(k)) == doctest::Approx(1.0));
    CHECK(inner(TestFunction::mode(1), TestFunction::mode(3)) == 0.0);
}

TEST_CASE("derivative matches a central difference")
{
    const TestFunction d = derivative(F);
    for (double x : {-1.5, 0.0, 0.8, 2.2}) {
        const double h = 1e-4;
        double fd = (oracle::hermite_value(F.coeffs(), x + h) - oracle::hermite_value(F.coeffs(), x - h)) / (2 * h);
        CHECK(d(x) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("symplectic form is (f, g') and antisymmetric")
{
    double direct = numeric_inner(F, derivative(G));
    CHECK(symplectic(F, G) == doctest::Approx(direct).epsilon(1e-10));
    CHECK(symplectic(F, G) == doctest::Approx(-symplectic(G, F)).epsilon(1e-13));
    CHECK(symplectic(F, F) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("fourier transform matches direct quadrature")
{
    for (double p : {-2.0, 0.0, 0.7, 3.1}) {
        cplx direct = oracle::midpoint(
                          [&](double x) { return oracle::hermite_value(F.coeffs(), x) * std::exp(cplx(0, -p * x)); }, 15.0,
                          30000) /
                      std::sqrt(2 * M_PI);
        cplx got = F.fourier(p);
        CHECK(std::abs(got - direct) < 1e-10);
    }
}

TEST_CASE("bosonic covariance against an independent quadrature")
{
    for (cplx z : {cplx(0, 0), cplx(0.4, 0.3), cplx(-1.0, 1.0)}) {
        cplx direct = oracle::midpoint(
            [&](double p) {
                double w = std::abs(p) < 1e-12 ? 1.0 : p / -std::expm1(-p);
                return w * std::exp(cplx(0, 1) * p * z) * oracle::hermite_fourier(F.coeffs(), p) *
                       std::conj(oracle::hermite_fourier(G.coeffs(), p));
            },
            40.0, 40000);
        CHECK(std::abs(s_cov(F, G, z) - direct) < 1e-8);
    }
    // s(f, f) is real and positive
    cplx sff = s_cov(F, F, 0.0);
    CHECK(std::abs(sff.imag()) < 1e-13);
    CHECK(sff.real() > 0);
}

TEST_CASE("fermionic kernel against a symmetric midpoint principal value")
{
    for (cplx z : {cplx(0, 0), cplx(0.5, 0.0), cplx(0.2, 0.6), cplx(1.0, 1.0)}) {
        cplx direct = oracle::midpoint(
            [&](double p) {
                return std::exp(cplx(0, 1) * p * z) / -std::expm1(-p) * oracle::hermite_fourier(F.coeffs(), p) *
                       std::conj(oracle::hermite_fourier(G.coeffs(), p));
            },
            40.0, 80000);
        CHECK(std::abs(theta(F, G, z) - direct) < 1e-6);
    }
}

TEST_CASE("theta anticommutator and boundary relation")
{
    CHECK(std::abs(theta(F, G, 0.0) + theta(G, F, 0.0) - inner(F, G)) < 1e-10);
    for (double t : {-1.0, 0.0, 2.0}) CHECK(std::abs(theta(F, G, cplx(t, 1.0)) + theta(G, F, cplx(-t, 0.0))) < 1e-8);
}

TEST_CASE("excluded window converges linearly to the principal value")
{
    // cutting (-eps, eps) drops the regular part 1/2 F(0) of the kernel, an O(eps) gap
    cplx pv = theta(F, G, 0.3);
    double gap3 = std::abs(pv - engine_for({}).theta_excluded(F, G, 0.3, 1e-3));
    double gap4 = std::abs(pv - engine_for({}).theta_excluded(F, G, 0.3, 1e-4));
    double F0 = std::abs(F.fourier(0) * std::conj(G.fourier(0)));
    CHECK(gap3 == doctest::Approx(1e-3 * F0).epsilon(0.05));
    CHECK(gap4 == doctest::Approx(1e-4 * F0).epsilon(0.05));
}

TEST_CASE("shifts outside the strip are rejected")
{
    CHECK_THROWS_AS(s_cov(F, G, cplx(0, 1.5)), DomainError);
    CHECK_THROWS_AS(theta(F, G, cplx(0, -0.2)), DomainError);
    CHECK_NOTHROW(check_strip(cplx(3, 1.0), "test"));
}

TEST_CASE("affine envelope covers the sampled kernel")
{
    Envelope e = growth_check(F, G, {}, 5.0, 11);
    CHECK(e.samples == 33);
    CHECK(e.min_margin >= -1e-12);
}
