#pragma once

#include "susyqft/functionals.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace sqft {

enum class Suite { Kms, Susy, Relations, Tau, Cocycle, LocalBound, All };

Suite parse_suite(const std::string& name);
const char* suite_name(Suite s);

struct RunConfig {
    Suite suite = Suite::All;
    std::uint64_t seed = 20240601;
    int laplace_nodes = 0;  // 0 keeps the defaults
    int kernel_nodes = 0;
    double p_window = 0;
    int grid = 512;
    std::vector<double> sweep{1, 2, 4, 8};
    std::string output_path;
    std::string csv_path;
};

struct Record {
    std::string name;
    std::string anchor;  // statement being checked, or "plumbing"
    int criterion = 0;   // acceptance criterion number, 0 if none
    std::map<std::string, double> values;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    std::string note;  // exception text when the check could not run
};

struct Report {
    static constexpr int schema_version = 1;
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Record> records;  // sorted by name
    std::string csv;              // localbound sweep, empty otherwise

    std::size_t passed() const;
    bool ok() const { return passed() == records.size(); }
};

Report run_suite(const RunConfig& cfg);

// JSON text with schema_version, suite, seed, records and summary counts.
std::string report_json(const Report& r);

// Independent pairing sum over all permutations of 0..n-1 (n even), used as the oracle
// for the quasifree pairing formula.
cplx brute_force_pairing(const CMatrix& theta, std::size_t n);

// Deterministic uniform draws from a 64-bit Mersenne twister.
class Draws {
public:
    explicit Draws(std::uint64_t seed) : gen_(seed) {}
    double uniform(double a, double b);
    int integer(int lo, int hi);  // inclusive
    TestFunction function(int max_mode);
    double lambda(double lo = 0.5, double hi = 2.0);  // random sign

private:
    std::mt19937_64 gen_;
};

}  // namespace sqft
