// Acceptance driver: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N[,M...]]
//
// Exit status is 0 when every criterion passes except exactly the listed ones, which
// must fail. The listed criteria still print FAIL.

#include "susyqft/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace sqft;

namespace {

struct Outcome {
    bool pass = true;
    int records = 0;
    int passed = 0;
    double worst_ratio = 0;  // max residual / tolerance over records with tolerance > 0
    std::string first_failure;
    std::string note;
};

// runtime limits in seconds
const std::map<int, double> kRuntimeLimit{{1, 300}, {2, 300}, {7, 1800}, {9, 600}};

double run_timed(Suite s, std::uint64_t seed, std::vector<Record>& sink)
{
    RunConfig cfg;
    cfg.suite = s;
    cfg.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    Report r = run_suite(cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    sink.insert(sink.end(), r.records.begin(), r.records.end());
    return secs;
}

}  // namespace

int main(int argc, char** argv)
{
    std::set<int> expected_fail;
    for (int k = 1; k < argc; ++k) {
        std::string a = argv[k];
        if (a == "--expect-fail" && k + 1 < argc) {
            std::stringstream ss(argv[++k]);
            std::string item;
            while (std::getline(ss, item, ',')) expected_fail.insert(std::atoi(item.c_str()));
        } else {
            std::fprintf(stderr, "usage: acceptance [--expect-fail N[,M...]]\n");
            return 2;
        }
    }

    const std::uint64_t seed = 20240601;
    std::vector<Record> recs;
    std::map<int, double> runtime;
    double t_susy = run_timed(Suite::Susy, seed, recs);
    double t_kms = run_timed(Suite::Kms, seed, recs);
    double t_rel = run_timed(Suite::Relations, seed, recs);
    double t_tau = run_timed(Suite::Tau, seed, recs);
    double t_coc = run_timed(Suite::Cocycle, seed, recs);
    double t_lb = run_timed(Suite::LocalBound, seed, recs);
    runtime[1] = runtime[2] = t_susy;
    runtime[3] = runtime[4] = runtime[6] = t_kms;
    runtime[5] = t_rel;
    runtime[7] = t_tau + t_coc;
    runtime[8] = t_tau;
    runtime[9] = t_lb;

    std::map<int, Outcome> out;
    for (const auto& r : recs) {
        if (r.criterion < 1 || r.criterion > 9) continue;
        Outcome& o = out[r.criterion];
        ++o.records;
        o.passed += r.pass;
        if (r.tolerance > 0 && std::isfinite(r.residual)) o.worst_ratio = std::max(o.worst_ratio, r.residual / r.tolerance);
        if (!r.pass) {
            o.pass = false;
            if (o.first_failure.empty()) o.first_failure = r.name + (r.note.empty() ? "" : " (" + r.note + ")");
        }
    }

    // determinism: two invocations give byte-identical reports
    {
        Outcome& o = out[10];
        for (Suite s : {Suite::Relations, Suite::Kms, Suite::Cocycle}) {
            RunConfig cfg;
            cfg.suite = s;
            cfg.seed = seed;
            std::string a = report_json(run_suite(cfg)), b = report_json(run_suite(cfg));
            ++o.records;
            o.passed += a == b;
            if (a != b) {
                o.pass = false;
                o.first_failure = suite_name(s);
            }
        }
    }

    int unexpected = 0;
    for (int k = 1; k <= 10; ++k) {
        Outcome& o = out[k];
        if (o.records == 0) {
            o.pass = false;
            o.first_failure = "no records";
        }
        auto lim = kRuntimeLimit.find(k);
        if (lim != kRuntimeLimit.end() && runtime[k] > lim->second) {
            o.pass = false;
            o.note = "runtime limit exceeded";
        }
        std::printf("criterion %2d: %s  %d/%d records", k, o.pass ? "PASS" : "FAIL", o.passed, o.records);
        if (k <= 9) std::printf("  worst residual/tolerance %.3g  %.1fs", o.worst_ratio, runtime[k]);
        if (!o.first_failure.empty()) std::printf("  first failure: %s", o.first_failure.c_str());
        if (!o.note.empty()) std::printf("  %s", o.note.c_str());
        if (expected_fail.count(k)) std::printf("  [expected to fail]");
        std::printf("\n");
        if (o.pass == static_cast<bool>(expected_fail.count(k))) ++unexpected;
    }
    return unexpected ? 1 : 0;
}
