#include "heis/report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace heis {

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::degenerate:
        return "degenerate";
    }
    return "?";
}

ReportFormat parse_format(const std::string &name)
{
    if (name == "json") {
        return ReportFormat::json;
    }
    if (name == "markdown") {
        return ReportFormat::markdown;
    }
    throw std::invalid_argument("heis: unknown report format '" + name + "' (expected json or markdown)");
}

namespace {

using ordered = nlohmann::ordered_json;

ordered to_json(const VerificationReport &r)
{
    ordered j;
    j["checkId"] = r.check_id;
    j["params"] = ordered::object();
    for (const auto &[k, v] : r.params) {
        j["params"][k] = v;
    }
    if (r.convention) {
        j["convention"] = {{"sigma", r.convention->sigma},
                           {"locSign", r.convention->loc_sign == LocSign::alpha ? "alpha" : "beta"}};
    }
    j["status"] = to_string(r.status);
    j["metrics"] = ordered::object();
    for (const auto &[k, v] : r.metrics) {
        if (std::isfinite(v)) {
            j["metrics"][k] = v;
        } else {
            j["metrics"][k] = nullptr;
        }
    }
    if (r.counterexample) {
        j["counterexample"] = *r.counterexample;
    }
    return j;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// Pipes and newlines would break a table cell.
std::string cell(const std::string &s)
{
    std::string out;
    for (char c : s) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += "<br>";
        } else {
            out += c;
        }
    }
    return out;
}

std::string render_markdown(const ReportList &reports, const std::optional<ConventionMatrix> &matrix)
{
    std::ostringstream os;
    std::size_t pass = 0, fail = 0, degenerate = 0;
    for (const auto &r : reports) {
        pass += r.status == Status::pass;
        fail += r.status == Status::fail;
        degenerate += r.status == Status::degenerate;
    }
    os << "# Verification report\n\n";
    os << "checks: " << reports.size() << ", pass: " << pass << ", fail: " << fail << ", degenerate: " << degenerate
       << "\n\n";
    os << "| # | check | params | convention | status | metrics |\n";
    os << "|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto &r = reports[i];
        std::string params, metrics;
        for (const auto &[k, v] : r.params) {
            params += (params.empty() ? "" : ", ") + k + "=" + v;
        }
        for (const auto &[k, v] : r.metrics) {
            metrics += (metrics.empty() ? "" : ", ") + k + "=" + fmt(v);
        }
        os << "| " << i + 1 << " | " << cell(r.check_id) << " | " << cell(params) << " | "
           << (r.convention ? r.convention->name() : "") << " | " << to_string(r.status) << " | " << cell(metrics)
           << " |\n";
    }
    std::vector<const VerificationReport *> failing;
    for (const auto &r : reports) {
        if (r.counterexample) {
            failing.push_back(&r);
        }
    }
    if (!failing.empty()) {
        os << "\n## Counterexamples\n\n";
        for (const auto *r : failing) {
            os << "- " << r->check_id << " (" << to_string(r->status) << "): `" << cell(*r->counterexample) << "`\n";
        }
    }
    if (matrix) {
        os << "\n## Convention matrix\n\n";
        os << "| convention | passed | failed | all pass | failing checks |\n";
        os << "|---|---|---|---|---|\n";
        for (const auto &conv : SignConvention::all()) {
            const auto it = matrix->rows.find(conv);
            std::size_t ok = 0, bad = 0;
            std::string which;
            if (it != matrix->rows.end()) {
                for (std::size_t c = 0; c < it->second.size(); ++c) {
                    if (it->second[c]) {
                        ++ok;
                    } else {
                        ++bad;
                        which += (which.empty() ? "" : ", ") + matrix->checks[c];
                    }
                }
            }
            os << "| " << conv.name() << " | " << ok << " | " << bad << " | "
               << (it != matrix->rows.end() && bad == 0 ? "yes" : "no") << " | " << cell(which) << " |\n";
        }
    }
    return os.str();
}

} // namespace

std::string render_report(const ReportList &reports, ReportFormat format, const std::optional<ConventionMatrix> &matrix)
{
    if (format == ReportFormat::markdown) {
        return render_markdown(reports, matrix);
    }
    ordered arr = ordered::array();
    for (const auto &r : reports) {
        arr.push_back(to_json(r));
    }
    return reports.empty() ? std::string("[]") : arr.dump(2);
}

} // namespace heis
