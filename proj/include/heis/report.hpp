#ifndef HEIS_REPORT_HPP
#define HEIS_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heis/algebra.hpp"

namespace heis {

enum class Status { pass, fail, degenerate };

std::string to_string(Status s);

// Outcome of one check.  Degenerate results are informational and never fail
// a run.
struct VerificationReport {
    std::string check_id;
    std::map<std::string, std::string> params;
    std::optional<SignConvention> convention;
    Status status = Status::pass;
    std::map<std::string, double> metrics;
    std::optional<std::string> counterexample;

    bool failed() const { return status == Status::fail; }
};

using ReportList = std::vector<VerificationReport>;

// Pass/fail grid produced by the convention search: one row per convention,
// one column per named check.
struct ConventionMatrix {
    std::vector<std::string> checks;
    std::map<SignConvention, std::vector<bool>> rows;
    std::vector<SignConvention> passing;
};

enum class ReportFormat { json, markdown };

ReportFormat parse_format(const std::string &name);

std::string render_report(const ReportList &reports, ReportFormat format,
                          const std::optional<ConventionMatrix> &matrix = std::nullopt);

} // namespace heis

#endif
