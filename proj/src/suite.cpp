#include "heis/suite.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "heis/cutoff.hpp"
#include "heis/estimates.hpp"
#include "heis/localization.hpp"
#include "heis/properties.hpp"

namespace heis {

SuiteTarget parse_target(const std::string &name)
{
    if (name == "algebra") return SuiteTarget::algebra;
    if (name == "localization") return SuiteTarget::localization;
    if (name == "constants") return SuiteTarget::constants;
    if (name == "cutoff") return SuiteTarget::cutoff;
    if (name == "nesting") return SuiteTarget::nesting;
    if (name == "all") return SuiteTarget::all;
    throw std::invalid_argument("heis: unknown target '" + name + "'");
}

std::string to_string(SuiteTarget t)
{
    switch (t) {
    case SuiteTarget::algebra: return "algebra";
    case SuiteTarget::localization: return "localization";
    case SuiteTarget::constants: return "constants";
    case SuiteTarget::cutoff: return "cutoff";
    case SuiteTarget::nesting: return "nesting";
    case SuiteTarget::all: return "all";
    }
    return "?";
}

std::vector<std::complex<double>> SuiteConfig::default_c_list()
{
    return {{1, 0}, {0, 1}, {-1, 1}, {1, 1}, {-2, 0.5}, {3, 0}, {-1, 0}};
}

void SuiteConfig::validate() const
{
    auto need = [](bool ok, const std::string &what) {
        if (!ok) {
            throw std::invalid_argument("heis: invalid config: " + what);
        }
    };
    need(p_max >= 1, "pMax must be >= 1");
    need(n_minus_1 >= 1, "n must be >= 1");
    need(cutoff_n_max >= 1, "cutoffNMax must be >= 1");
    need(d > 0, "d must be positive");
    need(r > 0, "r must be positive");
    need(std::isfinite(c_budget) && c_budget > 0, "cBudget must be positive");
    need(property_instances >= 1, "property instances must be >= 1");
    need(alpha_max >= 1, "alphaMax must be >= 1");
    need(factor >= 1, "factor must be >= 1");
    need(nesting_p_max >= 1, "nesting pMax must be >= 1");
    need(std::isfinite(growth_c0) && growth_c0 > 0, "C0 must be positive");
    need(coercivity_samples >= 2, "coercivity samples must be >= 2");
    for (const auto &c : c_list) {
        need(std::isfinite(c.real()) && std::isfinite(c.imag()), "c values must be finite");
    }
}

bool SuiteResult::any_failed() const
{
    for (const auto &r : reports) {
        if (r.failed()) {
            return true;
        }
    }
    return false;
}

namespace {

void append(SuiteResult &into, SuiteResult &&from)
{
    for (auto &r : from.reports) {
        into.reports.push_back(std::move(r));
    }
    if (from.matrix) {
        into.matrix = std::move(from.matrix);
    }
}

std::ofstream open_csv(const SuiteConfig &cfg, const std::string &name)
{
    std::filesystem::create_directories(*cfg.csv_dir);
    std::ofstream out(std::filesystem::path(*cfg.csv_dir) / name);
    if (!out) {
        throw std::runtime_error("heis: cannot write " + name + " in " + *cfg.csv_dir);
    }
    out.precision(17);
    return out;
}

} // namespace

SuiteResult run_algebra(const SuiteConfig &cfg)
{
    PropertyConfig pc;
    pc.seed = cfg.seed;
    pc.instances = cfg.property_instances;
    pc.dim_max = cfg.n_minus_1;
    using Fn = VerificationReport (*)(const PropertyConfig &);
    const Fn checks[] = {associativity_property, jacobi_property, grading_property, adjoint_property,
                         bilinearity_property};
    std::vector<std::future<VerificationReport>> jobs;
    for (Fn f : checks) {
        jobs.push_back(std::async(std::launch::async, f, pc));
    }
    SuiteResult out;
    for (auto &j : jobs) {
        out.reports.push_back(j.get());
    }
    return out;
}

SuiteResult run_localization(const SuiteConfig &cfg)
{
    SuiteResult out;
    const int dim = cfg.n_minus_1;
    for (int sigma : {1, -1}) {
        out.reports.push_back(expected_T_psi_check(SignConvention(sigma, LocSign::alpha), dim));
    }
    for (int p = 0; p <= cfg.p_max; ++p) {
        out.reports.push_back(term_count_check(p, dim));
    }

    auto search = convention_search({cfg.p_max, dim, cfg.alpha_max});
    for (auto &r : search.reports) {
        out.reports.push_back(std::move(r));
    }
    const auto passing = search.matrix.passing;
    out.matrix = std::move(search.matrix);

    // per-(p, k) checks, evaluated in parallel and merged in key order
    for (const auto &conv : passing) {
        std::vector<std::future<ReportList>> jobs;
        for (int p = 1; p <= cfg.p_max; ++p) {
            jobs.push_back(std::async(std::launch::async, [p, conv, dim] {
                ReportList rs;
                for (int k = 0; k < dim; ++k) {
                    rs.push_back(bracket_residual_check(Generator::L(k), p, conv, dim));
                    rs.push_back(bracket_residual_check(Generator::Lbar(k), p, conv, dim));
                }
                rs.push_back(box_bracket_check(p, conv, dim));
                return rs;
            }));
        }
        for (auto &j : jobs) {
            for (auto &r : j.get()) {
                out.reports.push_back(std::move(r));
            }
        }
        for (int k = 0; k < dim; ++k) {
            out.reports.push_back(expected_bracket_check(Generator::L(k), conv, dim));
            out.reports.push_back(expected_bracket_check(Generator::Lbar(k), conv, dim));
        }
    }

    // [Lbar^alpha, L^alpha]: |alpha| <= 4 in one variable, componentwise <= 2 in two.
    std::vector<MultiIndex> alphas;
    for (int t = 1; t <= 4; ++t) {
        alphas.push_back(MultiIndex({t}));
    }
    if (dim >= 2) {
        for (int a = 0; a <= 2; ++a) {
            for (int b = 0; b <= 2; ++b) {
                if (a + b > 0) {
                    alphas.push_back(MultiIndex({a, b}));
                }
            }
        }
    }
    std::map<int, bool> sigma_ok{{1, true}, {-1, true}};
    for (const auto &alpha : alphas) {
        for (int sigma : {1, -1}) {
            const SignConvention conv(sigma, LocSign::alpha);
            auto rep = alpha_commutator_check(alpha, conv);
            sigma_ok[sigma] = sigma_ok[sigma] && !rep.failed();
            bool wanted = false;
            for (const auto &c : passing) {
                wanted = wanted || c.sigma == sigma;
            }
            if (wanted) {
                out.reports.push_back(std::move(rep));
            }
        }
    }
    VerificationReport uniq;
    uniq.check_id = "alpha_commutator_sigma";
    uniq.params = {{"alphas", std::to_string(alphas.size())}};
    uniq.metrics["passes[sigma=+1]"] = sigma_ok[1] ? 1.0 : 0.0;
    uniq.metrics["passes[sigma=-1]"] = sigma_ok[-1] ? 1.0 : 0.0;
    uniq.status = sigma_ok[1] != sigma_ok[-1] ? Status::pass : Status::fail;
    if (uniq.failed()) {
        uniq.counterexample = "expected exactly one sigma to pass every alpha";
    }
    out.reports.push_back(std::move(uniq));

    for (const auto &conv : passing) {
        for (int s = 1; s <= 6; ++s) {
            out.reports.push_back(lbar_power_coefficient_check(s, conv));
        }
    }
    return out;
}

SuiteResult run_constants(const SuiteConfig &cfg)
{
    SuiteResult out;
    for (const auto &c : cfg.c_list) {
        const auto res = coercivity_constant(c);
        auto rep = to_report(res);
        if (res.status == CoercivityStatus::ok) {
            const double sampled = coercivity_sampled(c, cfg.coercivity_samples);
            const double rel = std::abs(sampled - res.constant) / res.constant;
            rep.metrics["sampled"] = sampled;
            rep.metrics["relative_error"] = rel;
            rep.params["samples"] = std::to_string(cfg.coercivity_samples);
            if (rel > 1e-6) {
                rep.status = Status::fail;
                rep.counterexample = "sampled minimum disagrees with the closed form";
            }
        }
        out.reports.push_back(std::move(rep));
    }
    return out;
}

SuiteResult run_cutoff(const SuiteConfig &cfg)
{
    std::vector<std::future<std::pair<ReportList, CutoffBoundReport>>> jobs;
    for (int n = 1; n <= cfg.cutoff_n_max; ++n) {
        jobs.push_back(std::async(std::launch::async, [n, &cfg] {
            const CutoffParams params{n, cfg.d, cfg.r, cfg.factor};
            const auto psi = cutoff_build(params);
            ReportList rs;
            rs.push_back(cutoff_shape_check(psi, params));
            CutoffBoundOptions opts;
            opts.k_max = params.boxcars() - 1;
            opts.c_budget = cfg.c_budget;
            CutoffBoundReport bound;
            if (opts.k_max >= 1) {
                bound = cutoff_bound_check(psi, params, opts);
                rs.push_back(to_report(bound, params));
            }
            return std::make_pair(std::move(rs), std::move(bound));
        }));
    }
    SuiteResult out;
    for (int n = 1; n <= cfg.cutoff_n_max; ++n) {
        auto [rs, bound] = jobs[static_cast<std::size_t>(n - 1)].get();
        for (auto &r : rs) {
            out.reports.push_back(std::move(r));
        }
        if (cfg.csv_dir && !bound.bounds.empty()) {
            auto csv = open_csv(cfg, "cutoff_N" + std::to_string(n) + ".csv");
            csv << "k,sup_abs_DkPsi,ceiling\n";
            for (const auto &b : bound.bounds) {
                csv << b.k << ',' << b.sup_upper << ',' << b.ceiling << '\n';
            }
        }
    }
    return out;
}

SuiteResult run_nesting(const SuiteConfig &cfg)
{
    SuiteResult out;

    // Sweep every p; the schedule depends on p only through floor(log2 p).
    VerificationReport sweep;
    sweep.check_id = "nesting_sweep";
    sweep.params = {{"p_max", std::to_string(cfg.nesting_p_max)}};
    VerificationReport growth;
    growth.check_id = "growth_sweep";
    growth.params = {{"p_max", std::to_string(cfg.nesting_p_max)}, {"C0", std::to_string(cfg.growth_c0)}};

    std::optional<std::ofstream> csv;
    if (cfg.csv_dir) {
        csv = open_csv(cfg, "growth_rates.csv");
        *csv << "p,rate\n";
    }

    bool sum_ok = true, c_ok = true, monotone = true, rate_ok = true;
    double prev_c = 0.0, worst_rate = 0.0, max_c = 0.0;
    long worst_p = 1;
    std::optional<NestingSchedule> sched;
    for (long p = 1; p <= cfg.nesting_p_max; ++p) {
        if (!sched || floor_log2(p) != sched->depth()) {
            sched = nesting_schedule(p);
            sum_ok = sum_ok && sched->sum_d < 1;
            c_ok = c_ok && sched->minimal_c <= 16.0;
            monotone = monotone && sched->minimal_c >= prev_c;
            prev_c = sched->minimal_c;
            max_c = std::max(max_c, sched->minimal_c);
        }
        sched->p = static_cast<int>(p);
        const auto g = growth_audit(p, cfg.growth_c0, *sched);
        if (g.rate > worst_rate) {
            worst_rate = g.rate;
            worst_p = p;
        }
        rate_ok = rate_ok && g.pass;
        if (csv && (p <= 1024 || (p & (p - 1)) == 0 || p == cfg.nesting_p_max)) {
            *csv << p << ',' << g.rate << '\n';
        }
    }
    sweep.metrics["final_minimalC"] = prev_c;
    sweep.metrics["max_minimalC"] = max_c;
    sweep.metrics["final_sum_d"] = sched->sum_d.get_d();
    sweep.metrics["sum_d_below_1"] = sum_ok ? 1.0 : 0.0;
    sweep.metrics["minimalC_at_most_16"] = c_ok ? 1.0 : 0.0;
    sweep.metrics["minimalC_monotone"] = monotone ? 1.0 : 0.0;
    sweep.status = sum_ok && c_ok && monotone ? Status::pass : Status::fail;
    if (sweep.failed()) {
        sweep.counterexample = "sumD, minimalC or monotonicity violated";
    }
    growth.metrics["max_rate"] = worst_rate;
    growth.metrics["max_rate_p"] = static_cast<double>(worst_p);
    growth.metrics["rate_bound"] = 32.0 * cfg.growth_c0;
    growth.status = rate_ok ? Status::pass : Status::fail;
    out.reports.push_back(std::move(sweep));
    out.reports.push_back(std::move(growth));

    for (long p : {1L, 2L, 3L, 4L, 7L, 8L, 1000L, 1L << 20}) {
        if (p > cfg.nesting_p_max) {
            continue;
        }
        const auto s = nesting_schedule(p);
        out.reports.push_back(to_report(s));
        out.reports.push_back(to_report(growth_audit(p, cfg.growth_c0, s)));
    }
    return out;
}

SuiteResult run_suite(const SuiteConfig &cfg, SuiteTarget target)
{
    cfg.validate();
    SuiteResult out;
    const bool all = target == SuiteTarget::all;
    if (all || target == SuiteTarget::algebra) append(out, run_algebra(cfg));
    if (all || target == SuiteTarget::localization) append(out, run_localization(cfg));
    if (all || target == SuiteTarget::constants) append(out, run_constants(cfg));
    if (all || target == SuiteTarget::cutoff) append(out, run_cutoff(cfg));
    if (all || target == SuiteTarget::nesting) append(out, run_nesting(cfg));
    return out;
}

} // namespace heis
