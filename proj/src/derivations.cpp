#include "susyqft/derivations.hpp"

#include "susyqft/errors.hpp"

#include <functional>

namespace sqft {

namespace {

const cplx I(0, 1);

Element gen(const Generator& g) { return Element(g); }

Element delta_generator(const Generator& g)
{
    switch (g.kind) {
    case Kind::Clifford:
        return gen(Generator::field(g.f, g.shift));
    case Kind::Field:
        return gen(Generator::clifford(derivative(g.f), g.shift)) * I;
    case Kind::Resolvent: {
        Element r = gen(g);
        return gen(Generator::clifford(derivative(g.f), g.shift)) * r * r * I;
    }
    }
    return {};
}

Element delta0_generator(const Generator& g)
{
    switch (g.kind) {
    case Kind::Clifford:
        return gen(Generator::clifford(derivative(g.f), g.shift)) * I;
    case Kind::Field:
        return gen(Generator::field(derivative(g.f), g.shift)) * I;
    case Kind::Resolvent: {
        Element r = gen(g);
        return r * gen(Generator::field(derivative(g.f), g.shift)) * r * I;
    }
    }
    return {};
}

Element leibniz(const Element& a, const std::function<Element(const Generator&)>& d, bool graded)
{
    std::vector<Word> out;
    for (const auto& w : a.words()) {
        for (std::size_t k = 0; k < w.gens.size(); ++k) {
            std::size_t odd_before = graded ? clifford_count(Gens(w.gens.begin(), w.gens.begin() + static_cast<long>(k))) : 0;
            Word left{odd_before % 2 ? -w.coeff : w.coeff, Gens(w.gens.begin(), w.gens.begin() + static_cast<long>(k))};
            Word right{1.0, Gens(w.gens.begin() + static_cast<long>(k) + 1, w.gens.end())};
            Element term = Element(left) * d(w.gens[k]) * Element(right);
            out.insert(out.end(), term.words().begin(), term.words().end());
        }
    }
    return Element::from_words(std::move(out));
}

}  // namespace

Element alpha_shift(const Element& a, cplx z)
{
    std::vector<Word> ws = a.words();
    for (auto& w : ws)
        for (auto& g : w.gens) g.shift += z;
    return Element::from_words(std::move(ws));
}

Element super_derivation(const Element& a) { return leibniz(a, delta_generator, true); }

Element time_derivation(const Element& a) { return leibniz(a, delta0_generator, false); }

Element apply_derivation(DerivationKind k, const Element& a)
{
    return k == DerivationKind::Super ? super_derivation(a) : time_derivation(a);
}

Element mollified_delta_squared(const Element& a, const Element& mollifier)
{
    if (mollifier.size() != 1) throw DomainError("mollified_delta_squared: mollifier must be a single word");
    for (const auto& g : mollifier.words()[0].gens)
        if (g.kind != Kind::Resolvent) throw DomainError("mollified_delta_squared: mollifier must be a resolvent monomial");
    Element da = super_derivation(a);
    Element out = super_derivation(mollifier * da) - super_derivation(mollifier) * da;
    for (const auto& w : out.words())
        if (field_count(w.gens) > 1) throw ShapeError("mollified_delta_squared: word with more than one field");
    return out;
}

Element default_mollifier(const Element& a)
{
    std::vector<TestFunction> fs;
    for (const auto& w : a.words())
        for (const auto& g : w.gens)
            if (g.kind == Kind::Clifford && !g.f.is_zero()) {
                bool seen = false;
                for (const auto& h : fs) seen = seen || h == g.f;
                if (!seen) fs.push_back(g.f);
            }
    Element m = Element::one();
    for (const auto& f : fs) m = m * R(1.0, f);
    return m;
}

bool is_in_DS(const Element& a)
{
    for (const auto& w : a.words()) {
        const Gens& g = w.gens;
        std::vector<char> ok(g.size() + 1, 0);
        ok[g.size()] = 1;
        for (std::size_t k = g.size(); k-- > 0;) {
            if (g[k].kind == Kind::Resolvent && ok[k + 1]) ok[k] = 1;
            if (k + 1 < g.size() && ok[k + 2]) {
                const Generator &x = g[k], &y = g[k + 1];
                bool same = x.f == y.f && x.shift == y.shift;
                if (same && x.kind == Kind::Clifford && y.kind == Kind::Resolvent && y.lambda == cplx(1.0)) ok[k] = 1;
                if (same && x.kind == Kind::Resolvent && y.kind == Kind::Clifford && x.lambda == cplx(-1.0)) ok[k] = 1;
            }
        }
        if (!ok[0]) return false;
    }
    return true;
}

Element reduce_field_resolvent(const Element& a)
{
    std::vector<Word> pending = a.words(), done;
    while (!pending.empty()) {
        Word w = std::move(pending.back());
        pending.pop_back();
        bool rewritten = false;
        for (std::size_t k = 0; k + 1 < w.gens.size() && !rewritten; ++k) {
            const Generator &x = w.gens[k], &y = w.gens[k + 1];
            const Generator* r = nullptr;
            if (x.kind == Kind::Field && y.kind == Kind::Resolvent) r = &y;
            if (x.kind == Kind::Resolvent && y.kind == Kind::Field) r = &x;
            if (!r || x.f != y.f || x.shift != y.shift) continue;
            Word keep{w.coeff * I * r->lambda, Gens(w.gens.begin(), w.gens.begin() + static_cast<long>(k))};
            keep.gens.push_back(*r);
            keep.gens.insert(keep.gens.end(), w.gens.begin() + static_cast<long>(k) + 2, w.gens.end());
            Word drop{-w.coeff, Gens(w.gens.begin(), w.gens.begin() + static_cast<long>(k))};
            drop.gens.insert(drop.gens.end(), w.gens.begin() + static_cast<long>(k) + 2, w.gens.end());
            pending.push_back(std::move(keep));
            pending.push_back(std::move(drop));
            rewritten = true;
        }
        if (!rewritten) done.push_back(std::move(w));
    }
    return Element::from_words(std::move(done));
}

cplx finite_difference_time(const Element& A, const Element& B, const Element& C, const Element& M, double h,
                            const EvalConfig& cfg)
{
    if (!(h > 0)) throw DomainError("finite_difference_time: step must be positive");
    const Element left = B * M;
    auto F = [&](double t) { return phi(left * alpha_shift(A, t) * C, cfg); };
    auto D = [&](double s) { return (F(s) - F(-s)) / (2.0 * s); };
    cplx d = (4.0 * D(h / 2) - D(h)) / 3.0;
    return -I * d;
}

}  // namespace sqft
