#pragma once

#include "susyqft/schwartz.hpp"

#include <string>
#include <vector>

namespace sqft {

enum class Kind { Clifford = 0, Resolvent = 1, Field = 2 };

// c(f), R(lambda, f) or j(f), translated by the complex shift.
struct Generator {
    Kind kind = Kind::Clifford;
    cplx lambda = 0;  // resolvents only
    TestFunction f;
    cplx shift = 0;

    static Generator clifford(TestFunction f, cplx shift = 0);
    static Generator resolvent(cplx lambda, TestFunction f, cplx shift = 0);
    static Generator field(TestFunction f, cplx shift = 0);

    bool is_odd() const { return kind == Kind::Clifford; }
    bool operator==(const Generator& o) const;
    bool operator!=(const Generator& o) const { return !(*this == o); }
    bool operator<(const Generator& o) const;
};

using Gens = std::vector<Generator>;

struct Word {
    cplx coeff = 1;
    Gens gens;  // empty means coeff * 1
};

std::size_t clifford_count(const Gens& g);
std::size_t field_count(const Gens& g);

enum class Parity { Even, Odd, Mixed };

// Finite linear combination of words in the free *-algebra. Words are kept sorted
// with equal generator sequences merged and zero coefficients dropped.
class Element {
public:
    Element() = default;
    Element(const Word& w);
    Element(const Generator& g);

    static Element one() { return scalar(1.0); }
    static Element scalar(cplx c);

    const std::vector<Word>& words() const { return words_; }
    bool is_zero() const { return words_.empty(); }
    std::size_t size() const { return words_.size(); }
    // coefficient of the identity word
    cplx scalar_part() const;
    bool is_scalar() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element operator*(cplx a) const;
    friend Element operator*(cplx a, const Element& e) { return e * a; }
    Element& operator+=(const Element& o) { return *this = *this + o; }
    Element& operator*=(const Element& o) { return *this = *this * o; }

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    // sum of |coeff| over words
    double l1() const;

    static Element from_words(std::vector<Word> ws);

private:
    std::vector<Word> words_;
};

Element c(const TestFunction& f);
Element R(cplx lambda, const TestFunction& f);
Element j(const TestFunction& f);
Element zeta(const TestFunction& f);
Element pow(const Element& a, int n);

Element multiply(const Element& a, const Element& b);
Element adjoint(const Element& a);
Element grading(const Element& a);
Parity parity(const Element& a);

// sum_{n=0}^{order} (i (lambda0 - lambda))^n R(lambda0, f)^{n+1}
Element neumann_series(cplx lambda, cplx lambda0, const TestFunction& f, int order);

enum class Relation { Rinvol, Rhomog, Resolv, Rccr, Rsum };

struct RelationParams {
    double lambda = 1;
    double mu = 1;
    TestFunction f;
    TestFunction g;
};

// LHS - RHS of the chosen resolvent relation. For Rinvol the residual is
// adjoint(R(lambda, f)) - R(-lambda, f), which is structurally zero.
Element relation_residual(Relation rel, const RelationParams& p);
const char* relation_name(Relation rel);

// Text form accepted by parse_element (see cli.hpp); round trip is exact.
std::string to_string(const Element& a);
std::string to_string(const Generator& g);
std::string format_double(double v);
std::string format_scalar(cplx v);

}  // namespace sqft
