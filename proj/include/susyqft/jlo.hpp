#pragma once

#include "susyqft/derivations.hpp"
#include "susyqft/functionals.hpp"

#include <functional>
#include <vector>

namespace sqft {

using Tuple = std::vector<Element>;

// Sign pattern of the cochain sequence: BPlusB uses (tau_0, 0, -tau_2, 0, tau_4, ...),
// BMinusB uses (tau_0, 0, tau_2, 0, tau_4, ...).
enum class CoboundarySign { BPlusB, BMinusB };

struct JloConfig {
    EvalConfig eval = default_eval();
    int simplex_order = 5;  // Gauss-Legendre nodes per simplex dimension
    CoboundarySign sign = CoboundarySign::BPlusB;

    static EvalConfig default_eval()
    {
        EvalConfig e;
        e.laplace.nodes_per_dim = 20;
        return e;
    }
};

constexpr int kSimplexCap = 3;

// Nodes and weights on {0 <= s_1 <= ... <= s_n <= 1}; weights sum to 1/n!.
struct SimplexRule {
    int n = 0;
    std::vector<std::vector<double>> s;
    std::vector<double> w;
};

SimplexRule simplex_rule(int n, int order);

// (n+1)-linear functional with fixed arity n.
struct Cochain {
    int n = 0;
    bool even = true;  // gamma-even cochains twist the wrap-around term of b
    std::function<cplx(const Tuple&)> eval;

    cplx operator()(const Tuple& a) const { return eval ? eval(a) : cplx(0); }
    static Cochain zero(int n) { return {n, true, {}}; }
};

// Integral over the simplex of phi(b_0 alpha_{is_1}(b_1) ... alpha_{is_n}(b_n)).
cplx simplex_correlator(const Tuple& b, const JloConfig& cfg = {});

// i^{n mod 2} * simplex_correlator(a_0, delta gamma(a_1), delta(a_2), ..., delta gamma^n(a_n)).
cplx tau(int n, const Tuple& a, const JloConfig& cfg = {});
Cochain tau_cochain(int n, const JloConfig& cfg = {});

// a has n + 2 entries for rho of arity n.
cplx coboundary_b(const Cochain& rho, const Tuple& a);
// a has n entries for rho of arity n.
cplx coboundary_B(const Cochain& rho, const Tuple& a);

struct CocycleValues {
    cplx b_side;  // (b rho_{n-1})(a)
    cplx B_side;  // (B rho_{n+1})(a)
    double residual;
};

// |(b rho_{n-1})(a) - (B rho_{n+1})(a)| where rho is the signed sequence selected by
// cfg.sign. Only n = 1 is supported.
CocycleValues cocycle_check(int n, const Tuple& a, const JloConfig& cfg = {});
double cocycle_residual(int n, const Tuple& a, const JloConfig& cfg = {});

struct GrowthRow {
    int n = 0;
    double abs_tau = 0;
    double root = 0;        // n^{1/2} |tau_n|^{1/n}, zero at n = 0
    double proxy_norm = 0;  // product of proxy seminorms of the slots
    double normalized_root = 0;
};

// Proxy for |a| + |delta a|: largest |phi(X a Y)| + |phi(X delta(a) Y)| over a fixed sandwich set.
double proxy_norm(const Element& a, const EvalConfig& cfg = {});

// family(n) returns the (n+1)-tuple evaluated at order n.
std::vector<GrowthRow> growth_profile(const std::function<Tuple(int)>& family, int n_max, const JloConfig& cfg = {});

// R(1,f), zeta(f), ..., zeta(f).
Tuple zeta_family(const TestFunction& f, int n);

struct CyclicityValues {
    cplx lhs;
    cplx rhs;
    double residual;
};

// lhs: simplex_correlator(b_0, ..., b_n); rhs: simplex_correlator(gamma(b_n), b_0, ..., b_{n-1}).
CyclicityValues kms_cyclicity_check(const Tuple& b, const JloConfig& cfg = {});

struct DeltaInsertionValues {
    cplx lhs;  // phi(delta(a_0) alpha_{is}(delta a_1))
    cplx rhs;  // d/ds phi(gamma(a_0) alpha_{is}(a_1))
    double residual;
};

DeltaInsertionValues delta_insertion_check(const Element& a0, const Element& a1, double s, const EvalConfig& cfg = {},
                                           double h = 1e-3);

}  // namespace sqft
