#include "susyqft/algebra.hpp"

#include "susyqft/errors.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

namespace sqft {

Generator Generator::clifford(TestFunction f, cplx shift) { return {Kind::Clifford, 0.0, std::move(f), shift}; }

Generator Generator::resolvent(cplx lambda, TestFunction f, cplx shift)
{
    if (lambda.imag() == 0.0 && lambda.real() == 0.0) throw DomainError("R(lambda, f): lambda must be nonzero");
    if (f.is_zero()) throw DomainError("R(lambda, f): f must be nonzero");
    return {Kind::Resolvent, lambda, std::move(f), shift};
}

Generator Generator::field(TestFunction f, cplx shift) { return {Kind::Field, 0.0, std::move(f), shift}; }

bool Generator::operator==(const Generator& o) const
{
    return kind == o.kind && lambda == o.lambda && shift == o.shift && f == o.f;
}

bool Generator::operator<(const Generator& o) const
{
    auto key = [](const Generator& g) {
        return std::make_tuple(static_cast<int>(g.kind), g.lambda.real(), g.lambda.imag(), g.shift.real(),
                               g.shift.imag());
    };
    auto a = key(*this), b = key(o);
    if (a != b) return a < b;
    return f < o.f;
}

std::size_t clifford_count(const Gens& g)
{
    std::size_t n = 0;
    for (const auto& x : g) n += x.kind == Kind::Clifford;
    return n;
}

std::size_t field_count(const Gens& g)
{
    std::size_t n = 0;
    for (const auto& x : g) n += x.kind == Kind::Field;
    return n;
}

Element Element::from_words(std::vector<Word> ws)
{
    std::map<Gens, cplx> acc;
    for (auto& w : ws) {
        if (w.coeff == 0.0) continue;
        auto it = acc.find(w.gens);
        if (it == acc.end())
            acc.emplace(std::move(w.gens), w.coeff);
        else
            it->second += w.coeff;
    }
    Element e;
    for (auto& [g, cf] : acc)
        if (cf != 0.0) e.words_.push_back({cf, g});
    return e;
}

Element::Element(const Word& w) { *this = from_words({w}); }

Element::Element(const Generator& g) { words_.push_back({1.0, {g}}); }

Element Element::scalar(cplx c) { return from_words({Word{c, {}}}); }

cplx Element::scalar_part() const
{
    for (const auto& w : words_)
        if (w.gens.empty()) return w.coeff;
    return 0.0;
}

bool Element::is_scalar() const { return words_.empty() || (words_.size() == 1 && words_[0].gens.empty()); }

Element Element::operator+(const Element& o) const
{
    std::vector<Word> ws = words_;
    ws.insert(ws.end(), o.words_.begin(), o.words_.end());
    return from_words(std::move(ws));
}

Element Element::operator-() const { return *this * cplx(-1.0); }

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator*(const Element& o) const
{
    std::vector<Word> ws;
    ws.reserve(words_.size() * o.words_.size());
    for (const auto& a : words_)
        for (const auto& b : o.words_) {
            Word w{a.coeff * b.coeff, a.gens};
            w.gens.insert(w.gens.end(), b.gens.begin(), b.gens.end());
            ws.push_back(std::move(w));
        }
    return from_words(std::move(ws));
}

Element Element::operator*(cplx a) const
{
    std::vector<Word> ws = words_;
    for (auto& w : ws) w.coeff *= a;
    return from_words(std::move(ws));
}

bool Element::operator==(const Element& o) const
{
    if (words_.size() != o.words_.size()) return false;
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k].coeff != o.words_[k].coeff || words_[k].gens != o.words_[k].gens) return false;
    return true;
}

double Element::l1() const
{
    double s = 0;
    for (const auto& w : words_) s += std::abs(w.coeff);
    return s;
}

Element c(const TestFunction& f) { return Element(Generator::clifford(f)); }
Element R(cplx lambda, const TestFunction& f) { return Element(Generator::resolvent(lambda, f)); }
Element j(const TestFunction& f) { return Element(Generator::field(f)); }
Element zeta(const TestFunction& f) { return c(f) * R(1.0, f); }

Element pow(const Element& a, int n)
{
    Element r = Element::one();
    for (int k = 0; k < n; ++k) r = r * a;
    return r;
}

Element multiply(const Element& a, const Element& b) { return a * b; }

Element adjoint(const Element& a)
{
    std::vector<Word> ws;
    for (const auto& w : a.words()) {
        Word r{std::conj(w.coeff), {}};
        for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
            Generator g = *it;
            if (g.kind == Kind::Resolvent) g.lambda = -std::conj(g.lambda);
            g.shift = std::conj(g.shift);
            r.gens.push_back(std::move(g));
        }
        ws.push_back(std::move(r));
    }
    return Element::from_words(std::move(ws));
}

Element grading(const Element& a)
{
    std::vector<Word> ws = a.words();
    for (auto& w : ws)
        if (clifford_count(w.gens) % 2) w.coeff = -w.coeff;
    return Element::from_words(std::move(ws));
}

Parity parity(const Element& a)
{
    bool even = false, odd = false;
    for (const auto& w : a.words()) (clifford_count(w.gens) % 2 ? odd : even) = true;
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
}

Element neumann_series(cplx lambda, cplx lambda0, const TestFunction& f, int order)
{
    if (!(std::abs(lambda0 - lambda) < std::abs(lambda0)))
        throw DomainError("neumann_series: |lambda0 - lambda| must be below |lambda0|");
    if (order < 0) throw DomainError("neumann_series: negative order");
    const Element r0 = R(lambda0, f);
    const cplx q = cplx(0, 1) * (lambda0 - lambda);
    Element sum, power = r0;
    cplx qn = 1;
    for (int n = 0; n <= order; ++n) {
        sum += power * qn;
        power = power * r0;
        qn *= q;
    }
    return sum;
}

Element relation_residual(Relation rel, const RelationParams& p)
{
    const cplx I(0, 1);
    const double lam = p.lambda, mu = p.mu;
    switch (rel) {
    case Relation::Rinvol:
        return adjoint(R(lam, p.f)) - R(-lam, p.f);
    case Relation::Rhomog:
        return R(lam, p.f) - R(1.0, p.f * (1.0 / lam)) * (1.0 / lam);
    case Relation::Resolv: {
        Element rl = R(lam, p.f), rm = R(mu, p.f);
        return rl - rm - rl * rm * (I * (mu - lam));
    }
    case Relation::Rccr: {
        Element rf = R(lam, p.f), rg = R(mu, p.g);
        return rf * rg - rg * rf - rf * rg * rg * rf * (I * symplectic(p.f, p.g));
    }
    case Relation::Rsum: {
        if (lam + mu == 0.0) throw DomainError("Rsum: lambda + mu must be nonzero");
        if ((p.f + p.g).is_zero()) throw DomainError("Rsum: f + g must be nonzero");
        Element rf = R(lam, p.f), rg = R(mu, p.g);
        Element bracket = rf + rg + rf * rf * rg * (I * symplectic(p.f, p.g));
        return rf * rg - R(lam + mu, p.f + p.g) * bracket;
    }
    }
    throw DomainError("relation_residual: unknown relation");
}

const char* relation_name(Relation rel)
{
    switch (rel) {
    case Relation::Rinvol: return "Rinvol";
    case Relation::Rhomog: return "Rhomog";
    case Relation::Resolv: return "Resolv";
    case Relation::Rccr: return "Rccr";
    case Relation::Rsum: return "Rsum";
    }
    return "?";
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_scalar(cplx v)
{
    std::string s = "(" + format_double(v.real());
    s += std::signbit(v.imag()) ? "-" : "+";
    s += format_double(std::abs(v.imag())) + "i)";
    return s;
}

namespace {

std::string format_function(const TestFunction& f)
{
    std::string s = "[";
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        if (k) s += ",";
        s += format_double(f.coeffs()[k]);
    }
    return s + "]";
}

}  // namespace

std::string to_string(const Generator& g)
{
    std::string s;
    switch (g.kind) {
    case Kind::Clifford: s = "c(" + format_function(g.f) + ")"; break;
    case Kind::Field: s = "j(" + format_function(g.f) + ")"; break;
    case Kind::Resolvent: s = "R(" + format_scalar(g.lambda) + "," + format_function(g.f) + ")"; break;
    }
    if (g.shift != 0.0) s += "@" + format_scalar(g.shift);
    return s;
}

std::string to_string(const Element& a)
{
    if (a.is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < a.words().size(); ++k) {
        const Word& w = a.words()[k];
        if (k) s += " + ";
        s += format_scalar(w.coeff);
        if (w.gens.empty()) s += "*one";
        for (const auto& g : w.gens) s += "*" + to_string(g);
    }
    return s;
}

}  // namespace sqft
