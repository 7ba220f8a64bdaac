#include "susyqft/jlo.hpp"

#include "susyqft/errors.hpp"

#include <cmath>

namespace sqft {

namespace {

const cplx I(0, 1);

void check_arity(int n)
{
    if (n < 0 || n > kSimplexCap) throw ShapeError("simplex dimension above the supported cap of 3");
}

Tuple with_one_in_front(const Tuple& rest)
{
    Tuple t{Element::one()};
    t.insert(t.end(), rest.begin(), rest.end());
    return t;
}

// sign of rho_m inside the cocycle sequence
double cochain_sign(int m, CoboundarySign s)
{
    if (s == CoboundarySign::BMinusB) return 1.0;
    return (m / 2) % 2 ? -1.0 : 1.0;
}

}  // namespace

SimplexRule simplex_rule(int n, int order)
{
    check_arity(n);
    if (order < 2) throw DomainError("simplex_rule: order must be at least 2");
    SimplexRule r;
    r.n = n;
    if (n == 0) {
        r.s.push_back({});
        r.w.push_back(1.0);
        return r;
    }
    const Rule g = gauss_legendre(order, 0.0, 1.0);
    std::vector<int> idx(n, 0);
    while (true) {
        std::vector<double> s(n);
        double w = 1.0;
        s[n - 1] = g.x[idx[n - 1]];
        w *= g.w[idx[n - 1]];
        for (int k = n - 2; k >= 0; --k) {
            s[k] = g.x[idx[k]] * s[k + 1];
            w *= g.w[idx[k]] * s[k + 1];
        }
        r.s.push_back(std::move(s));
        r.w.push_back(w);
        int k = 0;
        while (k < n && ++idx[k] == order) idx[k++] = 0;
        if (k == n) break;
    }
    return r;
}

cplx simplex_correlator(const Tuple& b, const JloConfig& cfg)
{
    if (b.empty()) throw ShapeError("simplex_correlator: empty tuple");
    const int n = static_cast<int>(b.size()) - 1;
    check_arity(n);
    for (const auto& x : b)
        if (x.is_zero()) return 0.0;
    const SimplexRule rule = simplex_rule(n, cfg.simplex_order);
    std::vector<cplx> terms(rule.w.size());
    for (std::size_t q = 0; q < rule.w.size(); ++q) {
        Element prod = b[0];
        for (int k = 1; k <= n; ++k) prod = prod * alpha_shift(b[k], I * rule.s[q][k - 1]);
        terms[q] = rule.w[q] * phi(prod, cfg.eval);
    }
    return pairwise_sum(terms);
}

cplx tau(int n, const Tuple& a, const JloConfig& cfg)
{
    check_arity(n);
    if (static_cast<int>(a.size()) != n + 1) throw ShapeError("tau: tuple must have n + 1 entries");
    Tuple b{a[0]};
    for (int k = 1; k <= n; ++k) {
        Element x = a[k];
        if (k % 2) x = grading(x);
        b.push_back(super_derivation(x));
    }
    cplx pre = n % 2 ? I : cplx(1.0);
    return pre * simplex_correlator(b, cfg);
}

Cochain tau_cochain(int n, const JloConfig& cfg)
{
    check_arity(n);
    return {n, true, [n, cfg](const Tuple& a) { return tau(n, a, cfg); }};
}

cplx coboundary_b(const Cochain& rho, const Tuple& a)
{
    const int n = rho.n;
    if (static_cast<int>(a.size()) != n + 2) throw ShapeError("coboundary_b: tuple must have n + 2 entries");
    std::vector<cplx> terms;
    for (int j = 0; j <= n; ++j) {
        Tuple t;
        for (int k = 0; k < j; ++k) t.push_back(a[k]);
        t.push_back(a[j] * a[j + 1]);
        for (int k = j + 2; k <= n + 1; ++k) t.push_back(a[k]);
        terms.push_back((j % 2 ? -1.0 : 1.0) * rho(t));
    }
    Tuple t{(rho.even ? grading(a[n + 1]) : a[n + 1]) * a[0]};
    for (int k = 1; k <= n; ++k) t.push_back(a[k]);
    terms.push_back(((n + 1) % 2 ? -1.0 : 1.0) * rho(t));
    return pairwise_sum(terms);
}

cplx coboundary_B(const Cochain& rho, const Tuple& a)
{
    const int n = rho.n;
    if (n < 1 || static_cast<int>(a.size()) != n) throw ShapeError("coboundary_B: tuple must have n entries, n >= 1");
    const double sn = (n - 1) % 2 ? -1.0 : 1.0;
    std::vector<cplx> terms;
    terms.push_back(rho(with_one_in_front(a)));
    Tuple back = a;
    back.push_back(Element::one());
    terms.push_back(sn * rho(back));
    for (int j = 1; j <= n - 1; ++j) {
        Tuple rot;
        for (int k = n - j; k <= n - 1; ++k) rot.push_back(grading(a[k]));
        for (int k = 0; k <= n - j - 1; ++k) rot.push_back(a[k]);
        const double sj = ((n - 1) * j) % 2 ? -1.0 : 1.0;
        terms.push_back(sj * rho(with_one_in_front(rot)));
        rot.push_back(Element::one());
        terms.push_back(sj * sn * rho(rot));
    }
    return pairwise_sum(terms);
}

CocycleValues cocycle_check(int n, const Tuple& a, const JloConfig& cfg)
{
    if (n != 1) throw ShapeError("cocycle_check: only n = 1 is supported");
    if (static_cast<int>(a.size()) != n + 1) throw ShapeError("cocycle_check: tuple must have n + 1 entries");
    const double lo = cochain_sign(n - 1, cfg.sign), hi = cochain_sign(n + 1, cfg.sign);
    Cochain lower = tau_cochain(n - 1, cfg), upper = tau_cochain(n + 1, cfg);
    CocycleValues v;
    v.b_side = lo * coboundary_b(lower, a);
    v.B_side = hi * coboundary_B(upper, a);
    v.residual = std::abs(v.b_side - v.B_side);
    return v;
}

double cocycle_residual(int n, const Tuple& a, const JloConfig& cfg) { return cocycle_check(n, a, cfg).residual; }

double proxy_norm(const Element& a, const EvalConfig& cfg)
{
    const TestFunction h0 = TestFunction::mode(0);
    const std::vector<Element> sandwich{Element::one(), R(1.0, h0), R(-1.0, h0), c(h0)};
    const Element da = super_derivation(a);
    double na = 0, nd = 0;
    for (const auto& x : sandwich)
        for (const auto& y : sandwich) {
            na = std::max(na, std::abs(phi(x * a * y, cfg)));
            nd = std::max(nd, std::abs(phi(x * da * y, cfg)));
        }
    return na + nd;
}

std::vector<GrowthRow> growth_profile(const std::function<Tuple(int)>& family, int n_max, const JloConfig& cfg)
{
    check_arity(n_max);
    std::vector<GrowthRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        const Tuple a = family(n);
        GrowthRow r;
        r.n = n;
        r.abs_tau = std::abs(tau(n, a, cfg));
        r.proxy_norm = 1.0;
        for (const auto& x : a) r.proxy_norm *= proxy_norm(x, cfg.eval);
        if (n > 0) {
            r.root = std::sqrt(double(n)) * std::pow(r.abs_tau, 1.0 / n);
            if (r.proxy_norm > 0) r.normalized_root = std::sqrt(double(n)) * std::pow(r.abs_tau / r.proxy_norm, 1.0 / n);
        }
        rows.push_back(r);
    }
    return rows;
}

Tuple zeta_family(const TestFunction& f, int n)
{
    Tuple t{R(1.0, f)};
    for (int k = 1; k <= n; ++k) t.push_back(zeta(f));
    return t;
}

CyclicityValues kms_cyclicity_check(const Tuple& b, const JloConfig& cfg)
{
    if (b.empty() || b.size() > 3) throw ShapeError("kms_cyclicity_check: tuple length must be 1..3");
    Tuple rot{grading(b.back())};
    rot.insert(rot.end(), b.begin(), b.end() - 1);
    CyclicityValues v;
    v.lhs = simplex_correlator(b, cfg);
    v.rhs = simplex_correlator(rot, cfg);
    v.residual = std::abs(v.lhs - v.rhs);
    return v;
}

DeltaInsertionValues delta_insertion_check(const Element& a0, const Element& a1, double s, const EvalConfig& cfg,
                                           double h)
{
    if (!(h > 0) || s - h < 0 || s + h > 1) throw DomainError("delta_insertion_check: need h <= s <= 1 - h");
    DeltaInsertionValues v;
    v.lhs = phi(super_derivation(a0) * alpha_shift(super_derivation(a1), I * s), cfg);
    const Element g0 = grading(a0);
    auto F = [&](double x) { return phi(g0 * alpha_shift(a1, I * x), cfg); };
    auto D = [&](double e) { return (F(s + e) - F(s - e)) / (2.0 * e); };
    v.rhs = (4.0 * D(h / 2) - D(h)) / 3.0;
    v.residual = std::abs(v.lhs - v.rhs);
    return v;
}

}  // namespace sqft
