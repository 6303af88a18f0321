#ifndef HEIS_SUITE_HPP
#define HEIS_SUITE_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heis/algebra.hpp"
#include "heis/report.hpp"

namespace heis {

enum class SuiteTarget { algebra, localization, constants, cutoff, nesting, all };

SuiteTarget parse_target(const std::string &name);
std::string to_string(SuiteTarget t);

struct SuiteConfig {
    int p_max = 4;
    int n_minus_1 = 2;
    int cutoff_n_max = 6;
    Scalar d{1, 2};
    Scalar r = 1;
    double c_budget = 12.0;
    std::vector<std::complex<double>> c_list = default_c_list();
    std::uint64_t seed = 1;

    int property_instances = 1000;
    int alpha_max = 3;              // convention search
    int factor = 3;                 // K = factor * N boxcars
    long nesting_p_max = 1L << 20;
    double growth_c0 = 1.0;
    long coercivity_samples = 1000000;
    std::optional<std::string> csv_dir;

    static std::vector<std::complex<double>> default_c_list();

    // Throws std::invalid_argument on a bad configuration.
    void validate() const;
};

struct SuiteResult {
    ReportList reports;
    std::optional<ConventionMatrix> matrix;

    bool any_failed() const;
    // 0 iff no report failed, 1 otherwise.
    int exit_code() const { return any_failed() ? 1 : 0; }
};

// Sections run in the order algebra, localization, constants, cutoff, nesting.
SuiteResult run_suite(const SuiteConfig &config, SuiteTarget target = SuiteTarget::all);

SuiteResult run_algebra(const SuiteConfig &config);
SuiteResult run_localization(const SuiteConfig &config);
SuiteResult run_constants(const SuiteConfig &config);
SuiteResult run_cutoff(const SuiteConfig &config);
SuiteResult run_nesting(const SuiteConfig &config);

} // namespace heis

#endif
