#include "susyqft/localbound.hpp"

#include "susyqft/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sqft {

namespace {

const double kPi = 3.14159265358979323846;

// ln(1 - e^{-p}) without cancellation for small p
double log_one_minus_exp(double p) { return p < 0.693 ? std::log(-std::expm1(-p)) : std::log1p(-std::exp(-p)); }

struct LRule {
    std::vector<double> p, w;  // node, weight (substitution Jacobian folded in)
};

const LRule& l_rule()
{
    static const LRule rule = [] {
        LRule r;
        // [0,1] as p = e^v, v in [-50, 0]
        for (int panel = 0; panel < 10; ++panel) {
            Rule g = gauss_legendre(32, -50.0 + 5.0 * panel, -45.0 + 5.0 * panel);
            for (std::size_t k = 0; k < g.x.size(); ++k) {
                double p = std::exp(g.x[k]);
                r.p.push_back(p);
                r.w.push_back(g.w[k] * p);
            }
        }
        Rule g = gauss_legendre(200, 1.0, 60.0);
        r.p.insert(r.p.end(), g.x.begin(), g.x.end());
        r.w.insert(r.w.end(), g.w.begin(), g.w.end());
        return r;
    }();
    return rule;
}

}  // namespace

double L_kernel(double u)
{
    const LRule& r = l_rule();
    std::vector<double> terms(r.p.size());
    for (std::size_t k = 0; k < r.p.size(); ++k) terms[k] = r.w[k] * log_one_minus_exp(r.p[k]) * std::cos(r.p[k] * u);
    return pairwise_sum(terms);
}

GridOperator grid_operator(Interval J, int N, const std::function<cplx(double, double)>& k)
{
    if (N < 16) throw DomainError("grid operator needs N >= 16");
    if (!(J.half_length > 0)) throw DomainError("interval half length must be positive");
    GridOperator op;
    op.J = J;
    op.N = N;
    op.dx = J.length() / N;
    for (int a = 0; a < N; ++a) op.x.push_back(-J.half_length + (a + 0.5) * op.dx);
    op.kernel.resize(N, N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) op.kernel(a, b) = k(op.x[a], op.x[b]);
    return op;
}

GridOperator kernel_T(Interval J, int N)
{
    if (N < 16) throw DomainError("kernel_T needs N >= 16");
    const double dx = J.length() / N;
    // x_a - x_b = (a - b) dx, so L is needed at 2N - 1 points only
    std::vector<double> L(N);
    for (int d = 0; d < N; ++d) L[d] = L_kernel(d * dx);
    GridOperator op = grid_operator(J, N, [](double, double) { return cplx(0); });
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            double u = (a - b) * dx;
            op.kernel(a, b) = cplx(0, 2.0 * u * L[std::abs(a - b)]);
        }
    return op;
}

std::vector<double> singular_values(const GridOperator& op)
{
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(op.matrix());
    const auto& s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

double trace_norm(const GridOperator& op)
{
    std::vector<double> s = singular_values(op);
    return pairwise_sum(s);
}

double hermiticity_residual(const GridOperator& op)
{
    return (op.kernel - op.kernel.adjoint()).cwiseAbs().maxCoeff();
}

SpectrumS spectrum_S(const GridOperator& t)
{
    const int N = t.N;
    if (N % 2) throw DomainError("spectrum_S needs an even grid size");
    const int h = N / 2;
    // antiperiodic modes, positive frequencies first, then their reflections
    Eigen::MatrixXcd U(N, N);
    const double base = 2 * kPi / t.J.length();
    for (int col = 0; col < N; ++col) {
        int m = col < h ? col : h - 1 - col;
        double nu = base * (m + 0.5);
        for (int a = 0; a < N; ++a) U(a, col) = std::polar(1.0 / std::sqrt(double(N)), nu * t.x[a]);
    }
    const Eigen::MatrixXcd Tp = U.adjoint() * t.matrix() * U;
    const Eigen::MatrixXcd A = Tp.topLeftCorner(h, h), B = Tp.topRightCorner(h, h);
    const Eigen::MatrixXcd C = Tp.bottomLeftCorner(h, h), D = Tp.bottomRightCorner(h, h);
    SpectrumS out;
    out.block_residual = std::max((D + A).cwiseAbs().maxCoeff(), (C + B).cwiseAbs().maxCoeff());

    const cplx I(0, 1);
    Eigen::MatrixXcd S(N, N);
    const Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(h, h);
    S.topLeftCorner(h, h) = -I * B;
    S.topRightCorner(h, h) = A + half;
    S.bottomLeftCorner(h, h) = A + half;
    S.bottomRightCorner(h, h) = I * B;
    out.hermitian_residual = (S - S.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd Sh = 0.5 * (S + S.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Sh, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    for (int k = 0; k < N; ++k)
        out.symmetry_residual = std::max(out.symmetry_residual, std::abs(out.eigenvalues[k] + out.eigenvalues[N - 1 - k]));
    return out;
}

SpectrumS spectrum_S(Interval J, int N)
{
    GridOperator t = kernel_T(J, N);
    t.kernel *= -1.0 / (2 * kPi);
    return spectrum_S(t);
}

double spectral_product(const std::vector<double>& s, double* excess, int* outliers)
{
    std::vector<double> logs, ts;
    int count = 0;
    for (double v : s)
        if (std::abs(v) > 0.5) {
            logs.push_back(std::log(2 * std::abs(v)));
            ts.push_back(2 * std::abs(v) - 1);
            count += std::abs(v) > 0.5 + 1e-9;
        }
    if (excess) *excess = pairwise_sum(ts);
    if (outliers) *outliers = count;
    return std::exp(pairwise_sum(logs));
}

LocalBound local_norm_bound(Interval J, int N, double b)
{
    GridOperator K = kernel_T(J, N);
    LocalBound r;
    r.half_length = J.half_length;
    r.N = N;
    r.trace_norm = trace_norm(K);
    K.kernel *= -1.0 / (2 * kPi);
    SpectrumS sp = spectrum_S(K);
    r.product = spectral_product(sp.eigenvalues, &r.excess_sum, &r.outliers);
    r.bound = std::exp(b * r.trace_norm);
    r.log_product_over_J_squared = std::log(r.product) / (J.length() * J.length());
    return r;
}

std::vector<LocalBound> local_bound_sweep(const std::vector<double>& lengths, int N, double b)
{
    std::vector<LocalBound> rows;
    for (double len : lengths) rows.push_back(local_norm_bound(Interval{len / 2}, N, b));
    return rows;
}

FitConstants fit_constants(const std::vector<LocalBound>& rows)
{
    FitConstants f;
    for (const auto& r : rows) {
        double lp = std::log(r.product);
        if (r.trace_norm > 0) f.b = std::max(f.b, lp / r.trace_norm);
        f.K = std::max(f.K, r.log_product_over_J_squared);
    }
    return f;
}

std::string sweep_csv(const std::vector<LocalBound>& rows)
{
    std::string s = "half_length,N,trace_norm,product,bound,log_product_over_J_squared\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,%.17g,%.17g\n", r.half_length, r.N, r.trace_norm, r.product,
                      r.bound, r.log_product_over_J_squared);
        s += buf;
    }
    return s;
}

}  // namespace sqft
