#ifndef HEIS_ESTIMATES_HPP
#define HEIS_ESTIMATES_HPP

#include <complex>
#include <vector>

#include "heis/algebra.hpp"
#include "heis/report.hpp"

namespace heis {

// ---------------------------------------------------------------------------
// Coercivity of box_b + c.
//
// ((box_b + c) v, v) = S + c W with S = sum ||Lbar_j v||^2 >= 0, W = ||v||^2 >= 0,
// so the best constant with |S + c W| >= C (S + W) is the distance from 0 to
// the segment [1, c].  It vanishes exactly for real c <= 0.

enum class CoercivityStatus { ok, degenerate };

struct CoercivityResult {
    std::complex<double> c;
    double constant = 0.0;
    CoercivityStatus status = CoercivityStatus::ok;
};

CoercivityResult coercivity_constant(std::complex<double> c);

// min over t in [0, 1] of |(1 - t) + t c| on a uniform grid of `samples` points
// (endpoints included).
double coercivity_sampled(std::complex<double> c, long samples);

VerificationReport to_report(const CoercivityResult &r);

// ---------------------------------------------------------------------------
// Nested domains d_j = 2^{-(j+1)}, j = 0..floor(log2 p).

struct NestingSchedule {
    int p = 1;
    std::vector<Scalar> levels;
    Scalar sum_d = 0;
    // log2 of the smallest C with prod d_j^{-p/2^j} <= C^p, i.e. sum (j+1)/2^j
    Scalar log2_minimal_c = 0;
    double minimal_c = 0.0;

    int depth() const { return static_cast<int>(levels.size()) - 1; } // J
};

int floor_log2(long p);
NestingSchedule nesting_schedule(long p);

struct GrowthAudit {
    long p = 1;
    double c0 = 1.0;
    double log_amplification = 0.0; // ln A(p)
    double rate = 0.0;              // A(p)^{1/p}
    double rate_bound = 0.0;        // 32 C0
    bool pass = false;
};

// A(p) = prod_j (C0 / d_j)^{ceil(p / 2^j)}
GrowthAudit growth_audit(long p, double c0, const NestingSchedule &schedule);

VerificationReport to_report(const NestingSchedule &s);
VerificationReport to_report(const GrowthAudit &g);

} // namespace heis

#endif
