#ifndef HEIS_CUTOFF_HPP
#define HEIS_CUTOFF_HPP

// One-dimensional Ehrenpreis cutoffs as exact splines.
//
// psi_N = chi_[-r-d/2, r+d/2] * rho_w^{*K},   K = factor * N,  w = d / (2 K),
//
// where rho_w is the unit-mass boxcar of width w.  The K boxcars spread the
// indicator by d/4 on each side, so psi_N = 1 on [-r, r] and vanishes outside
// [-r - 3d/4, r + 3d/4].

#include <optional>
#include <vector>

#include "heis/polynomial.hpp"
#include "heis/report.hpp"

namespace heis {

// Piecewise polynomial on breakpoints x_0 < ... < x_M, identically zero outside
// [x_0, x_M].  pieces[i] lives on [x_i, x_{i+1}] in the global variable x.
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<Scalar> breakpoints, std::vector<Polynomial> pieces);

    static PiecewisePoly indicator(const Scalar &lo, const Scalar &hi);

    const std::vector<Scalar> &breakpoints() const { return x_; }
    const std::vector<Polynomial> &pieces() const { return p_; }
    std::size_t size() const { return p_.size(); }
    bool empty() const { return p_.empty(); }
    Scalar support_lo() const { return x_.front(); }
    Scalar support_hi() const { return x_.back(); }

    // Value at x; at an interior breakpoint the right-hand piece is used.
    Scalar operator()(const Scalar &x) const;
    double eval(double x) const;

    PiecewisePoly derivative(int k = 1) const;
    Scalar integral() const;

    // (f * rho_w)(x) = (F(x + w/2) - F(x - w/2)) / w, F the antiderivative.
    PiecewisePoly convolve_boxcar(const Scalar &width) const;

    // Largest jump of the value across breakpoints, including the two ends.
    Scalar max_jump() const;

private:
    std::vector<Scalar> x_;
    std::vector<Polynomial> p_;
};

struct CutoffParams {
    int n = 1;        // N
    Scalar d = 1;     // separation of the two sets
    Scalar r = 1;     // inner set is [-r, r]
    int factor = 3;   // K = factor * N boxcars

    int boxcars() const { return factor * n; }
    Scalar width() const { return d / (2 * boxcars()); }
};

PiecewisePoly cutoff_build(const CutoffParams &params);
inline PiecewisePoly cutoff_build(int n, const Scalar &d, const Scalar &r)
{
    return cutoff_build(CutoffParams{n, d, r, 3});
}

// Enclosure of sup |f| over the whole line.
Enclosure sup_norm(const PiecewisePoly &f, SupMethod method = SupMethod::exact_roots, int bits = 24);
// Enclosure of inf f over its support.
Enclosure inf_value(const PiecewisePoly &f, int bits = 24);

struct DerivativeBound {
    int k = 0;
    Enclosure sup;        // sup |D^k psi_N|
    double sup_upper = 0; // upper end as a double
    double ceiling = 0;   // (2 / w)^k, i.e. (12 N / d)^k for factor 3
    double scaled = 0;    // (sup_upper * (d / N)^k)^{1/k}
};

struct CutoffBoundReport {
    std::vector<DerivativeBound> bounds;
    double c_emp = 0.0;
    double c_budget = 12.0;
    bool ceilings_ok = true;
    bool pass = false;
};

struct CutoffBoundOptions {
    int k_max = 1;
    double c_budget = 12.0;
    SupMethod method = SupMethod::exact_roots;
    int bits = 24;
};

// Throws std::invalid_argument when k_max exceeds K - 1 (the highest
// classical derivative of the spline).
CutoffBoundReport cutoff_bound_check(const PiecewisePoly &psi, const CutoffParams &params,
                                     const CutoffBoundOptions &opts);

// Structural checks: psi = 1 on [-r, r], support inside [-r-3d/4, r+3d/4],
// symmetry, 0 <= psi <= 1, integral 2r + d, continuity of D^k for k < K - 1.
VerificationReport cutoff_shape_check(const PiecewisePoly &psi, const CutoffParams &params);

VerificationReport to_report(const CutoffBoundReport &rep, const CutoffParams &params);

} // namespace heis

#endif
