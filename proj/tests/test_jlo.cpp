#include "susyqft/errors.hpp"
#include "susyqft/jlo.hpp"

#include <doctest.h>

#include <map>

using namespace sqft;

namespace {

const cplx I(0, 1);
const TestFunction h0 = TestFunction::mode(0), h1 = TestFunction::mode(1);

// tau_2(R(1,h0), zeta(h0), zeta(h0)) from simplex order 9 and 40 Laplace nodes per
// dimension; order 7 with 32 nodes agrees to 2e-12 relative.
const cplx kTau2Reference(0.0, -0.03111519469336655);

// Deterministic pseudo-values keyed on the text of the arguments.
Cochain labelled(int n)
{
    return {n, true, [](const Tuple& a) {
                std::string key;
                for (const auto& x : a) key += to_string(x) + "|";
                std::size_t hsh = std::hash<std::string>{}(key);
                return cplx(double(hsh % 1000) / 1000.0, double((hsh / 1000) % 1000) / 1000.0);
            }};
}

}  // namespace

TEST_CASE("simplex rule integrates monomials")
{
    // volume 1/n!, and the integral of s_1 over {0 <= s_1 <= s_2 <= 1} is 1/6
    for (int n = 1; n <= 3; ++n) {
        SimplexRule r = simplex_rule(n, 5);
        double vol = 0;
        for (double w : r.w) vol += w;
        double fact = n == 1 ? 1 : n == 2 ? 2 : 6;
        CHECK(vol == doctest::Approx(1.0 / fact).epsilon(1e-14));
    }
    SimplexRule r = simplex_rule(2, 5);
    double m = 0, m2 = 0;
    for (std::size_t q = 0; q < r.w.size(); ++q) {
        m += r.w[q] * r.s[q][0];
        m2 += r.w[q] * r.s[q][0] * r.s[q][1];
    }
    CHECK(m == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(m2 == doctest::Approx(1.0 / 8).epsilon(1e-14));
    for (std::size_t q = 0; q < r.w.size(); ++q) CHECK(r.s[q][0] <= r.s[q][1]);
    CHECK_THROWS_AS(simplex_rule(4, 5), ShapeError);
}

TEST_CASE("tau_0 is phi")
{
    Element a = R(1.0, h0) * R(2.0, h1);
    CHECK(std::abs(tau(0, {a}) - phi(a, JloConfig::default_eval())) < 1e-15);
}

TEST_CASE("tau vanishes when a slot above zero is a unit")
{
    for (int n = 1; n <= 2; ++n) CHECK(tau(n, Tuple(n + 1, Element::one())) == cplx(0.0));
    CHECK(tau(1, {zeta(h0), Element::one()}) == cplx(0.0));
}

TEST_CASE("tau_2 reference value")
{
    cplx v = tau(2, zeta_family(h0, 2));
    CHECK(std::abs(v - kTau2Reference) < 1e-6 * std::abs(kTau2Reference));
}

TEST_CASE("tau is multilinear")
{
    Tuple a{R(1.0, h0), zeta(h1)};
    Tuple b = a;
    b[0] = 2.0 * a[0];
    CHECK(std::abs(tau(1, b) - 2.0 * tau(1, a)) < 1e-14);
}

TEST_CASE("tau_n(gamma a) = (-1)^n tau_n(a)")
{
    Tuple a{R(1.0, h0) * R(2.0, h1), zeta(h1)};
    Tuple ga{grading(a[0]), grading(a[1])};
    cplx v = tau(1, a);
    CHECK(std::abs(v) > 1e-3);
    CHECK(std::abs(tau(1, ga) + v) < 1e-12);
}

TEST_CASE("coboundary b at arity 0 and 1")
{
    Cochain r0 = labelled(0), r1 = labelled(1);
    const Element x = zeta(h0), y = R(1.0, h1), z = c(h1);
    // (b r0)(x, y) = r0(x y) - r0(gamma(y) x)
    cplx want0 = r0({x * y}) - r0({grading(y) * x});
    CHECK(coboundary_b(r0, {x, y}) == want0);
    cplx want1 = r1({x * y, z}) - r1({x, y * z}) + r1({grading(z) * x, y});
    CHECK(std::abs(coboundary_b(r1, {x, y, z}) - want1) < 1e-15);
    CHECK_THROWS_AS(coboundary_b(r0, {x}), ShapeError);
}

TEST_CASE("coboundary B at arity 2")
{
    Cochain r2 = labelled(2);
    const Element x = zeta(h0), y = c(h1), one = Element::one();
    cplx want = r2({one, x, y}) - r2({x, y, one}) - r2({one, grading(y), x}) + r2({grading(y), x, one});
    CHECK(std::abs(coboundary_B(r2, {x, y}) - want) < 1e-15);
    CHECK(coboundary_B(Cochain::zero(2), {x, y}) == cplx(0.0));
}

TEST_CASE("cocycle residual with the signed sequence")
{
    JloConfig cfg;
    Tuple a{zeta(h0), zeta(h1)};
    CocycleValues v = cocycle_check(1, a, cfg);
    CHECK(std::abs(v.b_side) > 1e-2);
    CHECK(v.residual < 1e-5);
    // the residual is linear in a_0
    Tuple a2{2.0 * a[0], a[1]};
    CHECK(cocycle_residual(1, a2, cfg) == doctest::Approx(2 * v.residual).epsilon(1e-6));
    CHECK(cocycle_residual(1, {Element::one(), Element::one()}, cfg) == 0.0);
    CHECK_THROWS_AS(cocycle_check(3, {a[0], a[1], a[0], a[1]}, cfg), ShapeError);
}

TEST_CASE("the unsigned sequence does not close")
{
    JloConfig cfg;
    cfg.sign = CoboundarySign::BMinusB;
    CocycleValues v = cocycle_check(1, {zeta(h0), zeta(h1)}, cfg);
    CHECK(std::abs(v.b_side + v.B_side) < 1e-5);
    CHECK(v.residual > 0.1);
}

TEST_CASE("imaginary time cyclicity")
{
    CHECK(kms_cyclicity_check({R(1.0, h0), R(1.0, h1)}).residual < 1e-5);
    CHECK(kms_cyclicity_check({c(h0), R(1.0, h1), c(h1)}).residual < 1e-4);
    CHECK(kms_cyclicity_check({Element::one(), Element::one()}).residual == 0.0);
}

TEST_CASE("delta insertion against a finite difference in s")
{
    DeltaInsertionValues v = delta_insertion_check(zeta(h0), adjoint(zeta(h1)), 0.4, JloConfig::default_eval());
    CHECK(std::abs(v.lhs) > 1e-2);
    CHECK(v.residual < 1e-4 * std::abs(v.lhs));
    CHECK_THROWS_AS(delta_insertion_check(zeta(h0), zeta(h1), 0.0), DomainError);
}

TEST_CASE("growth profile bookkeeping")
{
    std::vector<GrowthRow> rows = growth_profile([](int n) { return Tuple(n + 1, Element::one()); }, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].abs_tau == doctest::Approx(1.0));
    CHECK(rows[1].abs_tau == 0.0);
    CHECK(rows[2].root == 0.0);
    Tuple z = zeta_family(h0, 3);
    REQUIRE(z.size() == 4);
    CHECK(z[0] == R(1.0, h0));
    CHECK(z[3] == zeta(h0));
    CHECK(proxy_norm(Element::one()) == doctest::Approx(1.0));
}
