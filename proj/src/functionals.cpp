#include "susyqft/functionals.hpp"

#include "susyqft/derivations.hpp"
#include "susyqft/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace sqft {

namespace {

const cplx I(0, 1);

struct Group {
    cplx lambda;  // sign-normalized, Re > 0
    TestFunction f;
    cplx shift;
    int m;
    double sign;
};

std::vector<Group> group_resolvents(const Gens& gens)
{
    std::vector<Group> out;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const Generator& g = gens[k];
        if (g.kind != Kind::Resolvent) throw ShapeError("omega_resolvent: word must contain resolvents only");
        double re = g.lambda.real();
        if (re == 0.0) throw DomainError("omega_resolvent: Re(lambda) must be nonzero");
        if (k > 0 && g == gens[k - 1]) {
            ++out.back().m;
            continue;
        }
        double s = re > 0 ? 1.0 : -1.0;
        out.push_back({g.lambda * s, g.f * s, g.shift, 1, s});
    }
    return out;
}

double factorial(int m)
{
    double r = 1;
    for (int k = 2; k <= m; ++k) r *= k;
    return r;
}

struct TensorIntegrand {
    int d;
    std::vector<std::vector<double>> t, w;  // per dimension: node values and weights
    std::vector<double> im;                 // Im(lambda)
    CMatrix C;
    std::vector<double> tcur;
    cplx sum = 0;

    void rec(int k, cplx e, double wt)
    {
        const auto& tk = t[k];
        const auto& wk = w[k];
        const cplx ckk = 0.5 * C[k][k] + I * 0.0;
        for (std::size_t i = 0; i < tk.size(); ++i) {
            double wi = wt * wk[i];
            if (wi == 0.0) continue;
            double x = tk[i];
            cplx lin = 0;
            for (int j = 0; j < k; ++j) lin += tcur[j] * C[j][k];
            cplx ee = e - x * lin - ckk * (x * x) - I * (im[k] * x);
            if (k == d - 1) {
                sum += wi * std::exp(ee);
            } else {
                tcur[k] = x;
                rec(k + 1, ee, wi);
            }
        }
    }
};

// Rate used to place the nodes of one Laplace variable: the integrand decays like
// exp(-a t - c t^2 / 2), so 1/a alone overshoots when a is small against sqrt(c).
double decay_scale(double a, cplx c) { return a + std::sqrt(std::max(c.real(), 0.0) / 2); }

cplx laplace_integral(const std::vector<Group>& g, const CMatrix& C, const LaplaceConfig& lc)
{
    const int d = static_cast<int>(g.size());
    bool tensor = lc.method == LaplaceMethod::TensorGaussLaguerre ||
                  (lc.method == LaplaceMethod::Auto && d <= lc.dim_switch);
    if (tensor) {
        const Rule rule = gauss_laguerre(static_cast<std::size_t>(lc.nodes_per_dim));
        TensorIntegrand ti;
        ti.d = d;
        ti.C = C;
        ti.tcur.assign(d, 0.0);
        for (int k = 0; k < d; ++k) {
            const double a = g[k].lambda.real(), kap = decay_scale(a, C[k][k]);
            ti.im.push_back(g[k].lambda.imag());
            std::vector<double> tv(rule.size()), wv(rule.size());
            double fact = factorial(g[k].m - 1);
            for (std::size_t i = 0; i < rule.size(); ++i) {
                tv[i] = rule.x[i] / kap;
                // the Laguerre weight carries e^{-x}; restore e^{-a t} from it
                wv[i] = rule.w[i] * std::exp(rule.x[i] * (1 - a / kap)) / kap * std::pow(tv[i], g[k].m - 1) / fact;
            }
            ti.t.push_back(std::move(tv));
            ti.w.push_back(std::move(wv));
        }
        ti.rec(0, 0.0, 1.0);
        return ti.sum;
    }
    // exponential importance sampling on shifted Sobol points
    ShiftedSobol qrng(static_cast<unsigned>(d), lc.seed);
    std::vector<double> u(d), t(d);
    std::vector<cplx> vals(static_cast<std::size_t>(lc.qmc_samples));
    for (auto& v : vals) {
        qrng.next(u.data());
        double wt = 1;
        for (int k = 0; k < d; ++k) {
            const double a = g[k].lambda.real(), kap = decay_scale(a, C[k][k]);
            t[k] = -std::log1p(-u[k]) / kap;
            wt *= std::exp((kap - a) * t[k]) * std::pow(t[k], g[k].m - 1) / factorial(g[k].m - 1) / kap;
        }
        cplx e = 0;
        for (int k = 0; k < d; ++k) {
            e -= 0.5 * C[k][k] * t[k] * t[k] + I * (g[k].lambda.imag() * t[k]);
            for (int l = k + 1; l < d; ++l) e -= C[k][l] * t[k] * t[l];
        }
        v = wt * std::exp(e);
    }
    return pairwise_sum(vals) / static_cast<double>(vals.size());
}

cplx omega_gens(const Gens& gens, const EvalConfig& cfg)
{
    if (gens.empty()) return 1.0;
    auto g = group_resolvents(gens);
    const auto& eng = engine_for(cfg.kernel);
    const std::size_t d = g.size();
    CMatrix C(d, std::vector<cplx>(d, 0.0));
    for (std::size_t k = 0; k < d; ++k) {
        C[k][k] = eng.s_cov(g[k].f, g[k].f, 0.0);
        for (std::size_t l = k + 1; l < d; ++l) C[k][l] = eng.s_cov(g[k].f, g[l].f, g[l].shift - g[k].shift);
    }
    cplx pre = 1;
    for (const auto& x : g)
        for (int q = 0; q < x.m; ++q) pre *= -I * x.sign;
    return pre * laplace_integral(g, C, cfg.laplace);
}

cplx insertion_gens(const Gens& gens, const EvalConfig& cfg)
{
    std::size_t p = gens.size();
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (gens[k].kind == Kind::Field) {
            if (p != gens.size()) throw ShapeError("omega_with_field_insertion: more than one field");
            p = k;
        }
    if (p == gens.size()) throw ShapeError("omega_with_field_insertion: no field generator");
    const Generator& jg = gens[p];
    const auto& eng = engine_for(cfg.kernel);
    cplx total = 0;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (k == p) continue;
        const Generator& rk = gens[k];
        cplx s = k < p ? eng.s_cov(rk.f, jg.f, jg.shift - rk.shift) : eng.s_cov(jg.f, rk.f, rk.shift - jg.shift);
        Gens h;
        for (std::size_t q = 0; q < gens.size(); ++q) {
            if (q == p) continue;
            h.push_back(gens[q]);
            if (q == k) h.push_back(gens[q]);
        }
        total += s * omega_gens(h, cfg);
    }
    return total;
}

// Rewrites adjacent j(f) R(l, f) or R(l, f) j(f) with equal shifts as i l R(l, f) - 1
// until at most one field remains.
std::vector<std::pair<cplx, Gens>> reduce_fields(const Gens& bos)
{
    if (field_count(bos) <= 1) return {{1.0, bos}};
    for (std::size_t k = 0; k + 1 < bos.size(); ++k) {
        const Generator &a = bos[k], &b = bos[k + 1];
        const Generator* jf = nullptr;
        const Generator* rs = nullptr;
        if (a.kind == Kind::Field && b.kind == Kind::Resolvent) jf = &a, rs = &b;
        if (a.kind == Kind::Resolvent && b.kind == Kind::Field) jf = &b, rs = &a;
        if (!jf || jf->f != rs->f || jf->shift != rs->shift) continue;
        Gens with_r(bos.begin(), bos.begin() + static_cast<long>(k));
        with_r.push_back(*rs);
        with_r.insert(with_r.end(), bos.begin() + static_cast<long>(k) + 2, bos.end());
        Gens without(bos.begin(), bos.begin() + static_cast<long>(k));
        without.insert(without.end(), bos.begin() + static_cast<long>(k) + 2, bos.end());
        std::vector<std::pair<cplx, Gens>> out;
        for (auto& [c1, g1] : reduce_fields(with_r)) out.push_back({c1 * I * rs->lambda, std::move(g1)});
        for (auto& [c2, g2] : reduce_fields(without)) out.push_back({-c2, std::move(g2)});
        return out;
    }
    throw ShapeError("phi: word with more than one field generator");
}

cplx psi_gens(const Gens& cl, const KernelConfig& kc)
{
    const std::size_t n = cl.size();
    if (n % 2) return 0.0;
    if (n == 0) return 1.0;
    const auto& eng = engine_for(kc);
    CMatrix th(n, std::vector<cplx>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) th[a][b] = eng.theta(cl[a].f, cl[b].f, cl[b].shift - cl[a].shift);
    return pairing_sum(th, n);
}

void matchings(std::vector<int>& used, std::vector<std::pair<int, int>>& cur, const CMatrix& th, int n, cplx& acc)
{
    int a = 0;
    while (a < n && used[a]) ++a;
    if (a == n) {
        std::vector<int> perm;
        for (auto& pr : cur) perm.push_back(pr.first);
        for (auto& pr : cur) perm.push_back(pr.second);
        int inv = 0;
        for (std::size_t x = 0; x < perm.size(); ++x)
            for (std::size_t y = x + 1; y < perm.size(); ++y) inv += perm[x] > perm[y];
        cplx prod = inv % 2 ? -1.0 : 1.0;
        for (auto& pr : cur) prod *= th[pr.first][pr.second];
        acc += prod;
        return;
    }
    used[a] = 1;
    for (int b = a + 1; b < n; ++b) {
        if (used[b]) continue;
        used[b] = 1;
        cur.push_back({a, b});
        matchings(used, cur, th, n, acc);
        cur.pop_back();
        used[b] = 0;
    }
    used[a] = 0;
}

}  // namespace

CMatrix covariance_matrix(const Gens& gens, const KernelConfig& cfg)
{
    const auto& eng = engine_for(cfg);
    const std::size_t n = gens.size();
    CMatrix C(n, std::vector<cplx>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) C[k][l] = eng.s_cov(gens[k].f, gens[l].f, gens[l].shift - gens[k].shift);
    return C;
}

cplx omega_resolvent(const Word& w, const EvalConfig& cfg) { return w.coeff * omega_gens(w.gens, cfg); }

cplx omega_with_field_insertion(const Word& w, const EvalConfig& cfg)
{
    for (const auto& g : w.gens)
        if (g.kind == Kind::Clifford) throw ShapeError("omega_with_field_insertion: Clifford generator in word");
    return w.coeff * insertion_gens(w.gens, cfg);
}

cplx pairing_sum(const CMatrix& theta, std::size_t n)
{
    if (n % 2) return 0.0;
    if (n == 0) return 1.0;
    std::vector<int> used(n, 0);
    std::vector<std::pair<int, int>> cur;
    cplx acc = 0;
    matchings(used, cur, theta, static_cast<int>(n), acc);
    std::size_t k = n / 2;
    return (k * (k - 1) / 2) % 2 ? -acc : acc;
}

std::size_t pairing_count(std::size_t n)
{
    if (n % 2) return 0;
    std::size_t r = 1;
    for (std::size_t m = n - 1; m > 1; m -= 2) r *= m;
    return r;
}

cplx psi_clifford(const Word& w, const KernelConfig& cfg)
{
    for (const auto& g : w.gens)
        if (g.kind != Kind::Clifford) throw ShapeError("psi_clifford: word must contain Clifford generators only");
    return w.coeff * psi_gens(w.gens, cfg);
}

cplx phi(const Element& a, const EvalConfig& cfg)
{
    std::map<Gens, cplx> psi_memo, omega_memo;
    auto bosonic = [&](const Gens& bos) -> cplx {
        auto it = omega_memo.find(bos);
        if (it != omega_memo.end()) return it->second;
        cplx v = 0;
        for (const auto& [cf, g] : reduce_fields(bos)) {
            std::size_t nf = field_count(g);
            v += cf * (nf == 0 ? omega_gens(g, cfg) : insertion_gens(g, cfg));
        }
        omega_memo.emplace(bos, v);
        return v;
    };
    std::vector<cplx> terms;
    for (const auto& w : a.words()) {
        Gens cl, bos;
        for (const auto& g : w.gens) (g.kind == Kind::Clifford ? cl : bos).push_back(g);
        if (cl.size() % 2) continue;
        cplx ps;
        auto it = psi_memo.find(cl);
        if (it != psi_memo.end())
            ps = it->second;
        else
            ps = psi_memo.emplace(cl, psi_gens(cl, cfg.kernel)).first->second;
        if (ps == 0.0) continue;
        terms.push_back(w.coeff * ps * bosonic(bos));
    }
    return pairwise_sum(terms);
}

KmsValues kms_boundary_check(const Element& A, const Element& B, double t, const EvalConfig& cfg)
{
    KmsValues r;
    r.lhs = phi(A * alpha_shift(B, cplx(t, 1.0)), cfg);
    r.rhs = phi(alpha_shift(B, t) * grading(A), cfg);
    return r;
}

namespace {

cplx richardson(const std::function<cplx(double)>& F, double h)
{
    auto D = [&](double s) { return (F(s) - F(-s)) / (2.0 * s); };
    return (4.0 * D(h / 2) - D(h)) / 3.0;
}

}  // namespace

MasterLemmaValues master_lemma_check(const Word& w, std::size_t r, const EvalConfig& cfg, double hx, double hl)
{
    const std::size_t n = w.gens.size();
    if (r >= n) throw DomainError("master_lemma_check: index out of range");
    for (const auto& g : w.gens)
        if (g.kind != Kind::Resolvent || g.lambda.imag() != 0.0 || g.lambda.real() <= 0.0)
            throw DomainError("master_lemma_check: resolvents with positive real lambda required");
    MasterLemmaValues out;
    if (w.gens[r].f.is_zero()) return out;

    auto omega_at = [&](double x, std::size_t k1, double d1, std::size_t k2, double d2) {
        Word v = w;
        v.gens[r].f = w.gens[r].f * x;
        v.gens[k1].lambda += d1;
        v.gens[k2].lambda += d2;
        return omega_resolvent(v, cfg);
    };
    out.lhs = richardson([&](double s) { return omega_at(1.0 + s, 0, 0.0, 0, 0.0); }, hx);

    auto second = [&](std::size_t k) -> cplx {
        if (k == r) {
            auto D2 = [&](double h) {
                return (omega_at(1.0, r, h, r, 0.0) - 2.0 * omega_at(1.0, r, 0.0, r, 0.0) + omega_at(1.0, r, -h, r, 0.0)) /
                       (h * h);
            };
            return (4.0 * D2(hl / 2) - D2(hl)) / 3.0;
        }
        auto M = [&](double h) {
            return (omega_at(1.0, r, h, k, h) - omega_at(1.0, r, h, k, -h) - omega_at(1.0, r, -h, k, h) +
                    omega_at(1.0, r, -h, k, -h)) /
                   (4.0 * h * h);
        };
        return (4.0 * M(hl / 2) - M(hl)) / 3.0;
    };
    const auto& eng = engine_for(cfg.kernel);
    const Generator& gr = w.gens[r];
    cplx rhs = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Generator& gk = w.gens[k];
        cplx dcov;
        if (k < r)
            dcov = eng.s_cov(gk.f, gr.f, gr.shift - gk.shift);
        else if (k == r)
            dcov = 0.5 * 2.0 * eng.s_cov(gr.f, gr.f, 0.0);
        else
            dcov = eng.s_cov(gr.f, gk.f, gk.shift - gr.shift);
        rhs -= dcov * second(k);
    }
    out.rhs = rhs;
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

double max_covariance(const Element& a, const KernelConfig& cfg)
{
    const auto& eng = engine_for(cfg);
    double m = 0;
    for (const auto& w : a.words()) {
        const Gens& g = w.gens;
        for (std::size_t k = 0; k < g.size(); ++k)
            for (std::size_t l = k; l < g.size(); ++l) {
                bool kc = g[k].kind == Kind::Clifford, lc = g[l].kind == Kind::Clifford;
                if (kc != lc) continue;
                cplx z = l == k ? cplx(0.0) : g[l].shift - g[k].shift;
                try {
                    cplx v = kc ? (l == k ? cplx(0.5 * inner(g[k].f, g[k].f)) : eng.theta(g[k].f, g[l].f, z))
                                : eng.s_cov(g[k].f, g[l].f, z);
                    m = std::max(m, std::abs(v));
                } catch (const DomainError&) {
                }
            }
    }
    return m;
}

}  // namespace sqft
