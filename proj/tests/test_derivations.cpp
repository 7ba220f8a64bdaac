#include "susyqft/derivations.hpp"
#include "susyqft/errors.hpp"

#include <doctest.h>

using namespace sqft;

namespace {

const cplx I(0, 1);
const TestFunction f({0.7, 0.3}), g({0.2, -0.4, 0.5}), h({-0.6, 0.0, 0.2});

}  // namespace

TEST_CASE("superderivation on generators")
{
    CHECK(super_derivation(c(f)) == j(f));
    CHECK(super_derivation(j(f)) == I * c(derivative(f)));
    CHECK(super_derivation(R(1.5, f)) == I * c(derivative(f)) * R(1.5, f) * R(1.5, f));
    CHECK(super_derivation(Element::one()).is_zero());
}

TEST_CASE("time derivation on generators")
{
    CHECK(time_derivation(c(f)) == I * c(derivative(f)));
    CHECK(time_derivation(j(f)) == I * j(derivative(f)));
    CHECK(time_derivation(R(0.8, f)) == I * R(0.8, f) * j(derivative(f)) * R(0.8, f));
}

TEST_CASE("graded Leibniz rule")
{
    const Element a = zeta(f) + 2.0 * c(g), b = R(1.0, h) * c(f) - j(g);
    // a is odd, so gamma(a) = -a
    CHECK(super_derivation(a * b) == super_derivation(a) * b - a * super_derivation(b));
    const Element e = R(1.0, f) * R(2.0, g);
    CHECK(super_derivation(e * b) == super_derivation(e) * b + e * super_derivation(b));
    CHECK(time_derivation(a * b) == time_derivation(a) * b + a * time_derivation(b));
}

TEST_CASE("delta squared equals delta_0 on c and j")
{
    for (const Element& x : {c(f), j(g), c(f) * j(h) + 3.0 * c(g)}) {
        CHECK(super_derivation(super_derivation(x)) == time_derivation(x));
        CHECK(apply_derivation(DerivationKind::Super, x) == super_derivation(x));
        CHECK(apply_derivation(DerivationKind::Time, x) == time_derivation(x));
    }
}

TEST_CASE("delta of zeta")
{
    // delta(c R) = j R - c i c' R^2
    Element want = j(f) * R(1.0, f) - c(f) * (I * c(derivative(f)) * R(1.0, f) * R(1.0, f));
    CHECK(super_derivation(zeta(f)) == want);
    Element reduced = reduce_field_resolvent(want);
    Element closed = I * R(1.0, f) - Element::one() - c(f) * (I * c(derivative(f)) * R(1.0, f) * R(1.0, f));
    CHECK(reduced == closed);
}

TEST_CASE("translations compose")
{
    const Element a = zeta(f) * R(2.0, g);
    CHECK(alpha_shift(alpha_shift(a, 0.3), cplx(0.2, 0.5)) == alpha_shift(a, cplx(0.5, 0.5)));
    CHECK(alpha_shift(a, 0.0) == a);
    CHECK(alpha_shift(Element::one(), 1.0) == Element::one());
}

TEST_CASE("supersymmetric domain membership")
{
    CHECK(is_in_DS(zeta(f)));
    CHECK(is_in_DS(adjoint(zeta(f))));
    CHECK(is_in_DS(R(1.3, f) * zeta(g) * adjoint(zeta(h))));
    CHECK(is_in_DS(alpha_shift(zeta(f), 0.4) * R(-1.0, g)));
    CHECK_FALSE(is_in_DS(c(f)));
    CHECK_FALSE(is_in_DS(j(f)));
    CHECK_FALSE(is_in_DS(c(f) * R(1.0, g)));
    CHECK_FALSE(is_in_DS(c(f) * alpha_shift(R(1.0, f), 0.5)));
}

TEST_CASE("mollifiers")
{
    CHECK(default_mollifier(zeta(f) * c(g) * c(f)) == R(1.0, f) * R(1.0, g));
    CHECK(default_mollifier(R(1.0, h)) == Element::one());
    CHECK_THROWS_AS(mollified_delta_squared(zeta(f), R(1.0, f) + R(1.0, g)), DomainError);
    CHECK_THROWS_AS(mollified_delta_squared(zeta(f), c(f)), DomainError);
}

TEST_CASE("mollified delta squared equals the finite difference")
{
    const Element A = zeta(f) * R(0.7, g), M = default_mollifier(A), B = c(h), C = R(1.0, g);
    cplx fd = finite_difference_time(A, B, C, M);
    cplx v = phi(B * mollified_delta_squared(A, M) * C);
    CHECK(std::abs(v) > 1e-3);
    CHECK(std::abs(fd - v) < 1e-6 * std::abs(v));
}

TEST_CASE("phi annihilates delta on the supersymmetric domain")
{
    for (const Element& a : {zeta(f), zeta(f) * R(1.4, g), adjoint(zeta(g)) * alpha_shift(R(-0.8, h), 0.3)}) {
        Element da = super_derivation(a);
        CHECK(std::abs(phi(da)) < 1e-12);
    }
}
