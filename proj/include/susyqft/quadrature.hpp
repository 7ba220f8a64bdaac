#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sqft {

using cplx = std::complex<double>;

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// Gauss-Legendre rule with n nodes on [a, b].
Rule gauss_legendre(std::size_t n, double a, double b);

// Gauss-Laguerre rule for weight exp(-x) on [0, inf).
Rule gauss_laguerre(std::size_t n);

// Pairwise sum with a fixed tree shape, independent of evaluation order.
cplx pairwise_sum(const std::vector<cplx>& v);
double pairwise_sum(const std::vector<double>& v);

// Sobol points in [0,1)^dim with a Cranley-Patterson random shift drawn from seed.
class ShiftedSobol {
public:
    ShiftedSobol(unsigned dim, std::uint64_t seed);
    ~ShiftedSobol();
    ShiftedSobol(const ShiftedSobol&) = delete;
    ShiftedSobol& operator=(const ShiftedSobol&) = delete;

    void next(double* out);
    unsigned dim() const { return dim_; }

private:
    unsigned dim_;
    void* q_;
    std::vector<double> shift_;
};

}  // namespace sqft
