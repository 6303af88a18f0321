#include "heis/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

PiecewisePoly::PiecewisePoly(std::vector<Scalar> breakpoints, std::vector<Polynomial> pieces)
    : x_(std::move(breakpoints)), p_(std::move(pieces))
{
    if (x_.size() != p_.size() + 1 || p_.empty()) {
        throw std::invalid_argument("heis: piecewise polynomial needs one more breakpoint than pieces");
    }
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i - 1] < x_[i])) {
            throw std::invalid_argument("heis: breakpoints must be strictly increasing");
        }
    }
}

PiecewisePoly PiecewisePoly::indicator(const Scalar &lo, const Scalar &hi)
{
    return PiecewisePoly({lo, hi}, {Polynomial::constant(1)});
}

namespace {

// Index of the piece containing x: -1 left of the support, size() at or
// right of the last breakpoint.
long locate(const std::vector<Scalar> &x, const Scalar &v)
{
    if (v < x.front()) {
        return -1;
    }
    const auto it = std::upper_bound(x.begin(), x.end(), v);
    return static_cast<long>(it - x.begin()) - 1;
}

} // namespace

Scalar PiecewisePoly::operator()(const Scalar &x) const
{
    const long i = locate(x_, x);
    if (i < 0) {
        return 0;
    }
    if (static_cast<std::size_t>(i) >= p_.size()) {
        return x == x_.back() ? p_.back()(x) : Scalar(0);
    }
    return p_[static_cast<std::size_t>(i)](x);
}

double PiecewisePoly::eval(double x) const
{
    return (*this)(Scalar(x)).get_d();
}

PiecewisePoly PiecewisePoly::derivative(int k) const
{
    auto pieces = p_;
    for (int j = 0; j < k; ++j) {
        for (auto &q : pieces) {
            q = q.derivative();
        }
    }
    return PiecewisePoly(x_, std::move(pieces));
}

Scalar PiecewisePoly::integral() const
{
    Scalar total = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        const auto a = p_[i].antiderivative();
        total += a(x_[i + 1]) - a(x_[i]);
    }
    return total;
}

PiecewisePoly PiecewisePoly::convolve_boxcar(const Scalar &width) const
{
    if (width <= 0) {
        throw std::invalid_argument("heis: boxcar width must be positive");
    }
    const Scalar h = width / 2;

    // Continuous antiderivative, one polynomial per piece plus the two tails.
    std::vector<Polynomial> anti;
    anti.reserve(p_.size());
    Scalar acc = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        auto a = p_[i].antiderivative();
        a = a + Polynomial::constant(acc - a(x_[i]));
        acc = a(x_[i + 1]);
        anti.push_back(std::move(a));
    }
    const Polynomial right_tail = Polynomial::constant(acc);
    auto F = [&](long i) -> Polynomial {
        if (i < 0) {
            return {};
        }
        if (static_cast<std::size_t>(i) >= anti.size()) {
            return right_tail;
        }
        return anti[static_cast<std::size_t>(i)];
    };

    std::vector<Scalar> knots;
    knots.reserve(2 * x_.size());
    for (const auto &x : x_) {
        knots.push_back(x - h);
        knots.push_back(x + h);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::vector<Polynomial> pieces;
    pieces.reserve(knots.size() - 1);
    const Scalar inv_w = 1 / width;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const Scalar mid = (knots[i] + knots[i + 1]) / 2;
        const auto upper = F(locate(x_, mid + h)).shifted(h);
        const auto lower = F(locate(x_, mid - h)).shifted(-h);
        pieces.push_back((upper - lower) * inv_w);
    }
    return PiecewisePoly(std::move(knots), std::move(pieces));
}

Scalar PiecewisePoly::max_jump() const
{
    Scalar worst = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
        const Scalar left = i == 0 ? Scalar(0) : p_[i - 1](x_[i]);
        const Scalar right = i == p_.size() ? Scalar(0) : p_[i](x_[i]);
        worst = std::max(worst, Scalar(abs(left - right)));
    }
    return worst;
}

PiecewisePoly cutoff_build(const CutoffParams &params)
{
    if (params.n < 1 || params.d <= 0 || params.r <= 0 || params.factor < 1) {
        throw std::invalid_argument("heis: cutoff needs N >= 1, d > 0, r > 0 and factor >= 1");
    }
    const Scalar half = params.r + params.d / 2;
    auto psi = PiecewisePoly::indicator(-half, half);
    const Scalar w = params.width();
    for (int i = 0; i < params.boxcars(); ++i) {
        psi = psi.convolve_boxcar(w);
    }
    return psi;
}

Enclosure sup_norm(const PiecewisePoly &f, SupMethod method, int bits)
{
    Enclosure out{0, 0};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto e = sup_abs(f.pieces()[i], f.breakpoints()[i], f.breakpoints()[i + 1], method, bits);
        out.lower = std::max(out.lower, e.lower);
        out.upper = std::max(out.upper, e.upper);
    }
    return out;
}

Enclosure inf_value(const PiecewisePoly &f, int bits)
{
    std::optional<Enclosure> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto e = min_value(f.pieces()[i], f.breakpoints()[i], f.breakpoints()[i + 1], bits);
        if (!out) {
            out = e;
        } else {
            out->lower = std::min(out->lower, e.lower);
            out->upper = std::min(out->upper, e.upper);
        }
    }
    return out.value_or(Enclosure{0, 0});
}

namespace {

Scalar pow_int(const Scalar &b, int k)
{
    Scalar r = 1;
    for (int i = 0; i < k; ++i) {
        r *= b;
    }
    return r;
}

std::string str(const Scalar &s) { return s.get_str(); }

} // namespace

CutoffBoundReport cutoff_bound_check(const PiecewisePoly &psi, const CutoffParams &params,
                                     const CutoffBoundOptions &opts)
{
    const int K = params.boxcars();
    if (opts.k_max < 1) {
        throw std::invalid_argument("heis: kMax must be at least 1");
    }
    if (opts.k_max > K - 1) {
        throw std::invalid_argument("heis: kMax = " + std::to_string(opts.k_max) + " exceeds " + std::to_string(K - 1)
                                    + ", the highest classical derivative of a spline built from "
                                    + std::to_string(K) + " boxcars");
    }
    CutoffBoundReport rep;
    rep.c_budget = opts.c_budget;
    const Scalar rate = 2 / params.width();
    const Scalar scale = params.d / params.n;
    for (int k = 1; k <= opts.k_max; ++k) {
        DerivativeBound b;
        b.k = k;
        b.sup = sup_norm(psi.derivative(k), opts.method, opts.bits);
        b.sup_upper = b.sup.upper.get_d();
        const Scalar ceiling = pow_int(rate, k);
        b.ceiling = ceiling.get_d();
        b.scaled = std::pow(Scalar(b.sup.upper * pow_int(scale, k)).get_d(), 1.0 / k);
        rep.ceilings_ok = rep.ceilings_ok && b.sup.upper <= ceiling;
        rep.c_emp = std::max(rep.c_emp, b.scaled);
        rep.bounds.push_back(b);
    }
    rep.pass = rep.ceilings_ok && rep.c_emp <= rep.c_budget;
    return rep;
}

VerificationReport to_report(const CutoffBoundReport &rep, const CutoffParams &params)
{
    VerificationReport out;
    out.check_id = "cutoff_bounds";
    out.params = {{"N", std::to_string(params.n)},
                  {"d", str(params.d)},
                  {"r", str(params.r)},
                  {"factor", std::to_string(params.factor)},
                  {"k_max", std::to_string(rep.bounds.size())}};
    out.metrics["C_emp"] = rep.c_emp;
    out.metrics["C_budget"] = rep.c_budget;
    for (const auto &b : rep.bounds) {
        const std::string k = std::to_string(b.k);
        out.metrics["sup_D" + k] = b.sup_upper;
        out.metrics["ceiling_D" + k] = b.ceiling;
    }
    out.status = rep.pass ? Status::pass : Status::fail;
    if (!rep.pass) {
        out.counterexample = rep.ceilings_ok ? "C_emp exceeds the budget" : "a derivative exceeds (2/w)^k";
    }
    return out;
}

VerificationReport cutoff_shape_check(const PiecewisePoly &psi, const CutoffParams &params)
{
    VerificationReport out;
    out.check_id = "cutoff_shape";
    out.params = {{"N", std::to_string(params.n)},
                  {"d", str(params.d)},
                  {"r", str(params.r)},
                  {"factor", std::to_string(params.factor)}};
    std::vector<std::string> problems;

    // identically one on [-r, r]
    bool one_inner = true;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const auto &lo = psi.breakpoints()[i];
        const auto &hi = psi.breakpoints()[i + 1];
        if (hi > -params.r && lo < params.r && !(psi.pieces()[i] == Polynomial::constant(1))) {
            one_inner = false;
        }
    }
    one_inner = one_inner && psi(-params.r) == 1 && psi(params.r) == 1 && psi(0) == 1;
    if (!one_inner) {
        problems.push_back("not identically 1 on [-r, r]");
    }

    const Scalar reach = params.r + 3 * params.d / 4;
    const bool support_ok = psi.support_lo() >= -reach && psi.support_hi() <= reach
                            && psi.support_hi() < params.r + params.d && psi.support_lo() > -params.r - params.d;
    if (!support_ok) {
        problems.push_back("support leaves [-r-3d/4, r+3d/4]");
    }

    bool symmetric = true;
    for (std::size_t i = 0; i < psi.size() && symmetric; ++i) {
        const auto &lo = psi.breakpoints()[i];
        const auto &hi = psi.breakpoints()[i + 1];
        for (const Scalar &x : {lo, Scalar((lo + hi) / 2), Scalar((2 * lo + hi) / 3)}) {
            if (psi(x) != psi(-x)) {
                symmetric = false;
                break;
            }
        }
    }
    if (!symmetric) {
        problems.push_back("psi(x) != psi(-x)");
    }

    const auto sup = sup_norm(psi);
    const auto inf = inf_value(psi);
    const bool range_ok = sup.upper <= 1 && inf.lower >= 0;
    if (!range_ok) {
        problems.push_back("values leave [0, 1]");
    }

    const Scalar mass = psi.integral();
    const bool mass_ok = mass == 2 * params.r + params.d;
    if (!mass_ok) {
        problems.push_back("integral differs from 2r + d");
    }

    // C^{K-1}: every derivative below order K is continuous.
    const int K = params.boxcars();
    int smooth = -1;
    for (int k = 0; k < K; ++k) {
        if (psi.derivative(k).max_jump() != 0) {
            break;
        }
        smooth = k;
    }
    const bool smooth_ok = smooth >= K - 2;
    if (!smooth_ok) {
        problems.push_back("smoothness below C^{K-2}");
    }

    out.metrics["integral"] = mass.get_d();
    out.metrics["support_lo"] = psi.support_lo().get_d();
    out.metrics["support_hi"] = psi.support_hi().get_d();
    out.metrics["sup"] = sup.upper.get_d();
    out.metrics["inf_lower_bound"] = inf.lower.get_d();
    out.metrics["smoothness_class"] = smooth;
    out.metrics["pieces"] = static_cast<double>(psi.size());
    out.status = problems.empty() ? Status::pass : Status::fail;
    if (!problems.empty()) {
        std::string s;
        for (const auto &p : problems) {
            s += (s.empty() ? "" : "; ") + p;
        }
        out.counterexample = s;
    }
    return out;
}

} // namespace heis
