#include "susyqft/schwartz.hpp"

#include "susyqft/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace sqft {

TestFunction::TestFunction(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

TestFunction TestFunction::mode(std::size_t k, double amplitude)
{
    std::vector<double> c(k + 1, 0.0);
    c[k] = amplitude;
    return TestFunction(std::move(c));
}

void TestFunction::trim()
{
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

std::vector<double> hermite_functions(std::size_t n, double x)
{
    std::vector<double> h(n);
    if (n == 0) return h;
    h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n > 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        double kk = static_cast<double>(k);
        h[k + 1] = std::sqrt(2.0 / (kk + 1)) * x * h[k] - std::sqrt(kk / (kk + 1)) * h[k - 1];
    }
    return h;
}

double TestFunction::operator()(double x) const
{
    auto h = hermite_functions(c_.size(), x);
    double s = 0;
    for (std::size_t k = 0; k < c_.size(); ++k) s += c_[k] * h[k];
    return s;
}

cplx TestFunction::fourier(double p) const
{
    auto h = hermite_functions(c_.size(), p);
    static const cplx phase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    cplx s = 0;
    for (std::size_t k = 0; k < c_.size(); ++k) s += phase[k % 4] * (c_[k] * h[k]);
    return s;
}

TestFunction TestFunction::operator+(const TestFunction& o) const
{
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    return TestFunction(std::move(r));
}

TestFunction TestFunction::operator-(const TestFunction& o) const { return *this + (-o); }

TestFunction TestFunction::operator-() const { return *this * -1.0; }

TestFunction TestFunction::operator*(double a) const
{
    std::vector<double> r(c_);
    for (auto& v : r) v *= a;
    return TestFunction(std::move(r));
}

TestFunction derivative(const TestFunction& f)
{
    const auto& c = f.coeffs();
    if (c.empty()) return {};
    std::vector<double> d(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        double kk = static_cast<double>(k);
        if (k > 0) d[k - 1] += std::sqrt(kk / 2.0) * c[k];
        d[k + 1] -= std::sqrt((kk + 1.0) / 2.0) * c[k];
    }
    return TestFunction(std::move(d));
}

double inner(const TestFunction& f, const TestFunction& g)
{
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    double s = 0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) s += a[k] * b[k];
    return s;
}

double symplectic(const TestFunction& f, const TestFunction& g) { return inner(f, derivative(g)); }

void check_strip(cplx z, const char* where)
{
    constexpr double slack = 1e-12;
    if (!(z.imag() >= -slack && z.imag() <= 1.0 + slack))
        throw DomainError(std::string(where) + ": shift outside the strip 0 <= Im z <= 1");
}

namespace {

// p e^{-ps} / (1 - e^{-p}), evaluated without overflow for s in [0, 1].
double thermal_weight(double p, double s)
{
    if (p > 0) return p * std::exp(-p * s) / (-std::expm1(-p));
    if (p < 0) {
        double a = -p;
        return a * std::exp(-a * (1.0 - s)) / (-std::expm1(-a));
    }
    return 1.0;
}

}  // namespace

CovarianceEngine::CovarianceEngine(KernelConfig cfg) : cfg_(cfg)
{
    if (cfg_.n_nodes < 2) throw std::invalid_argument("KernelConfig: n_nodes must be >= 2");
    if (!(cfg_.p_window > 0)) throw std::invalid_argument("KernelConfig: p_window must be positive");
    int n = cfg_.n_nodes + (cfg_.n_nodes % 2);  // even count keeps p = 0 off the node set
    rule_ = gauss_legendre(static_cast<std::size_t>(n), -cfg_.p_window, cfg_.p_window);
}

const std::vector<cplx>& CovarianceEngine::transform(const TestFunction& f) const
{
    {
        std::shared_lock<std::shared_mutex> lock(mutex_);
        auto it = cache_.find(f.coeffs());
        if (it != cache_.end()) return *it->second;
    }
    auto v = std::make_unique<std::vector<cplx>>(rule_.size());
    for (std::size_t i = 0; i < rule_.size(); ++i) (*v)[i] = f.fourier(rule_.x[i]);
    std::unique_lock<std::shared_mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(f.coeffs(), std::move(v));
    return *it->second;
}

cplx CovarianceEngine::s_cov(const TestFunction& f, const TestFunction& g, cplx z) const
{
    check_strip(z, "s_cov");
    const auto& F = transform(f);
    const auto& G = transform(g);
    const double t = z.real(), s = z.imag();
    cplx acc = 0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
        double p = rule_.x[i];
        acc += rule_.w[i] * thermal_weight(p, s) * std::polar(1.0, p * t) * F[i] * std::conj(G[i]);
    }
    return acc;
}

cplx CovarianceEngine::theta(const TestFunction& f, const TestFunction& g, cplx z) const
{
    check_strip(z, "theta");
    const auto& F = transform(f);
    const auto& G = transform(g);
    const double t = z.real(), s = z.imag();
    const cplx g0 = f.fourier(0.0) * std::conj(g.fourier(0.0));
    cplx acc = 0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
        double p = rule_.x[i];
        cplx gp = thermal_weight(p, s) * std::polar(1.0, p * t) * F[i] * std::conj(G[i]);
        acc += rule_.w[i] * (gp - g0) / p;
    }
    return acc;
}

cplx CovarianceEngine::theta_excluded(const TestFunction& f, const TestFunction& g, cplx z, double eps) const
{
    check_strip(z, "theta_excluded");
    const double t = z.real(), s = z.imag();
    cplx acc = 0;
    for (int side = -1; side <= 1; side += 2) {
        Rule r = gauss_legendre(static_cast<std::size_t>(cfg_.n_nodes), eps, cfg_.p_window);
        for (std::size_t i = 0; i < r.size(); ++i) {
            double p = side * r.x[i];
            cplx v = thermal_weight(p, s) * std::polar(1.0, p * t) * f.fourier(p) * std::conj(g.fourier(p)) / p;
            acc += r.w[i] * v;
        }
    }
    return acc;
}

const CovarianceEngine& engine_for(const KernelConfig& cfg)
{
    static std::mutex m;
    static std::map<KernelConfig, std::unique_ptr<CovarianceEngine>> engines;
    std::lock_guard<std::mutex> lock(m);
    auto it = engines.find(cfg);
    if (it == engines.end()) it = engines.emplace(cfg, std::make_unique<CovarianceEngine>(cfg)).first;
    return *it->second;
}

cplx s_cov(const TestFunction& f, const TestFunction& g, cplx z, const KernelConfig& cfg)
{
    return engine_for(cfg).s_cov(f, g, z);
}

cplx theta(const TestFunction& f, const TestFunction& g, cplx z, const KernelConfig& cfg)
{
    return engine_for(cfg).theta(f, g, z);
}

Envelope growth_check(const TestFunction& f, const TestFunction& g, const KernelConfig& cfg, double t_max,
                      int n_t)
{
    const auto& eng = engine_for(cfg);
    std::vector<double> ts(n_t), m(n_t, 0.0);
    for (int a = 0; a < n_t; ++a) {
        ts[a] = n_t > 1 ? -t_max + 2.0 * t_max * a / (n_t - 1) : 0.0;
        for (double s : {0.0, 0.5, 1.0}) m[a] = std::max(m[a], std::abs(eng.theta(f, g, cplx(ts[a], s))));
    }
    // least-squares slope in |t|, clipped at zero, then lift the intercept over every sample
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int a = 0; a < n_t; ++a) {
        double x = std::abs(ts[a]);
        sx += x;
        sy += m[a];
        sxx += x * x;
        sxy += x * m[a];
    }
    double den = n_t * sxx - sx * sx;
    Envelope e;
    e.B = den > 0 ? std::max(0.0, (n_t * sxy - sx * sy) / den) : 0.0;
    e.A = 0;
    for (int a = 0; a < n_t; ++a) e.A = std::max(e.A, m[a] - e.B * std::abs(ts[a]));
    e.min_margin = INFINITY;
    for (int a = 0; a < n_t; ++a) e.min_margin = std::min(e.min_margin, e.A + e.B * std::abs(ts[a]) - m[a]);
    e.samples = static_cast<std::size_t>(3 * n_t);
    return e;
}

}  // namespace sqft
