#include "heis/estimates.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heis {

namespace {

std::string fmt_double(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

CoercivityResult coercivity_constant(std::complex<double> c)
{
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw std::invalid_argument("heis: coercivity needs a finite c");
    }
    CoercivityResult r;
    r.c = c;
    if (c.imag() == 0.0 && c.real() <= 0.0) {
        r.status = CoercivityStatus::degenerate;
        r.constant = 0.0;
        return r;
    }
    // Foot of the perpendicular from 0 onto the line 1 + t (c - 1).
    const std::complex<double> dir = c - 1.0;
    const double len2 = std::norm(dir);
    if (len2 == 0.0) {
        r.constant = 1.0;
        return r;
    }
    const double t = -dir.real() / len2;
    if (t <= 0.0) {
        r.constant = 1.0;
    } else if (t >= 1.0) {
        r.constant = std::abs(c);
    } else {
        // |Im(conj(1) * c)| / |c - 1|
        r.constant = std::abs(c.imag()) / std::sqrt(len2);
    }
    return r;
}

double coercivity_sampled(std::complex<double> c, long samples)
{
    if (samples < 2) {
        throw std::invalid_argument("heis: need at least two samples");
    }
    double best = std::abs(std::complex<double>(1.0));
    for (long i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
        best = std::min(best, std::abs((1.0 - t) + t * c));
    }
    return best;
}

VerificationReport to_report(const CoercivityResult &r)
{
    VerificationReport out;
    out.check_id = "coercivity";
    out.params = {{"c_re", fmt_double(r.c.real())}, {"c_im", fmt_double(r.c.imag())}};
    out.metrics["constant"] = r.constant;
    out.status = r.status == CoercivityStatus::ok ? Status::pass : Status::degenerate;
    return out;
}

int floor_log2(long p)
{
    if (p < 1) {
        throw std::invalid_argument("heis: floor_log2 needs p >= 1");
    }
    int j = 0;
    while ((p >> 1) > 0) {
        p >>= 1;
        ++j;
    }
    return j;
}

NestingSchedule nesting_schedule(long p)
{
    if (p < 1) {
        throw std::invalid_argument("heis: nesting schedule needs p >= 1, got " + std::to_string(p));
    }
    NestingSchedule s;
    s.p = static_cast<int>(p);
    const int J = floor_log2(p);
    mpz_class pow2 = 1; // 2^j
    for (int j = 0; j <= J; ++j) {
        const Scalar d(mpz_class(1), pow2 * 2);
        s.levels.push_back(d);
        s.sum_d += d;
        s.log2_minimal_c += Scalar(mpz_class(j + 1), pow2);
        pow2 *= 2;
    }
    s.minimal_c = std::exp2(s.log2_minimal_c.get_d());
    return s;
}

GrowthAudit growth_audit(long p, double c0, const NestingSchedule &schedule)
{
    if (schedule.p != p) {
        throw std::invalid_argument("heis: schedule built for a different p");
    }
    GrowthAudit g;
    g.p = p;
    g.c0 = c0;
    long block = 1; // 2^j
    for (const auto &d : schedule.levels) {
        const long reps = (p + block - 1) / block;
        g.log_amplification += static_cast<double>(reps) * std::log(c0 / d.get_d());
        block *= 2;
    }
    g.rate = std::exp(g.log_amplification / static_cast<double>(p));
    g.rate_bound = 32.0 * c0;
    g.pass = g.rate <= g.rate_bound;
    return g;
}

VerificationReport to_report(const NestingSchedule &s)
{
    VerificationReport out;
    out.check_id = "nesting_schedule";
    out.params = {{"p", std::to_string(s.p)}};
    out.metrics["levels"] = static_cast<double>(s.levels.size());
    out.metrics["sum_d"] = s.sum_d.get_d();
    out.metrics["minimalC"] = s.minimal_c;
    out.metrics["log2_minimalC"] = s.log2_minimal_c.get_d();
    const bool ok = s.sum_d < 1 && s.minimal_c <= 16.0;
    out.status = ok ? Status::pass : Status::fail;
    if (!ok) {
        out.counterexample = "sum_d = " + s.sum_d.get_str() + ", minimalC = " + fmt_double(s.minimal_c);
    }
    return out;
}

VerificationReport to_report(const GrowthAudit &g)
{
    VerificationReport out;
    out.check_id = "growth_audit";
    out.params = {{"p", std::to_string(g.p)}, {"C0", fmt_double(g.c0)}};
    out.metrics["log_A"] = g.log_amplification;
    out.metrics["rate"] = g.rate;
    out.metrics["rate_bound"] = g.rate_bound;
    out.status = g.pass ? Status::pass : Status::fail;
    return out;
}

} // namespace heis
