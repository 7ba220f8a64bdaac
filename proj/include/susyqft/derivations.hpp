#pragma once

#include "susyqft/algebra.hpp"
#include "susyqft/functionals.hpp"

namespace sqft {

enum class DerivationKind { Super, Time };

// Adds z to the shift of every generator.
Element alpha_shift(const Element& a, cplx z);

// Odd derivation: delta c(f) = j(f), delta j(f) = i c(f'), delta R(l,f) = i c(f') R(l,f)^2,
// extended by delta(ab) = delta(a) b + gamma(a) delta(b).
Element super_derivation(const Element& a);

// Even derivation: delta0 c(f) = i c(f'), delta0 j(f) = i j(f'), delta0 R = i R j(f') R.
Element time_derivation(const Element& a);

Element apply_derivation(DerivationKind k, const Element& a);

// delta(M delta(a)) - delta(M) delta(a); M must be a single word of resolvents.
Element mollified_delta_squared(const Element& a, const Element& mollifier);

// Product of R(1, f) over the distinct Clifford test functions of a, in order of appearance.
Element default_mollifier(const Element& a);

// Every word factors into R(l, f), zeta(f) = c(f)R(1,f) and zeta(f)* = R(-1,f)c(f) blocks.
bool is_in_DS(const Element& a);

// Rewrites adjacent j(f)R(l,f) and R(l,f)j(f) with equal shifts as i l R(l,f) - 1.
Element reduce_field_resolvent(const Element& a);

// Richardson-extrapolated central difference of -i d/dt phi(B M alpha_t(A) C) at t = 0.
cplx finite_difference_time(const Element& A, const Element& B, const Element& C, const Element& M, double h = 1e-3,
                            const EvalConfig& cfg = {});

}  // namespace sqft
