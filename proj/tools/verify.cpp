// heis-verify: command-line front end for the verification suites.

#include <cctype>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "heis/report.hpp"
#include "heis/suite.hpp"

namespace {

constexpr int kExitUsage = 2;

// "3", "-2", "1/2", "0.25"
heis::Scalar parse_rational(const std::string &text)
{
    std::string s = text;
    const auto dot = s.find('.');
    heis::Scalar out;
    try {
        if (dot == std::string::npos) {
            out = heis::Scalar(s);
        } else {
            const std::string frac = s.substr(dot + 1);
            std::string digits = s.substr(0, dot) + frac;
            if (digits.empty() || digits == "-" || digits == "+") {
                throw std::invalid_argument("empty");
            }
            if (digits.front() == '+') {
                digits.erase(0, 1);
            }
            mpz_class den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) {
                den *= 10;
            }
            out = heis::Scalar(mpz_class(digits), den);
        }
    } catch (const std::exception &) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
    out.canonicalize();
    return out;
}

// "(re,im)", "re,im" or "re"
std::complex<double> parse_complex(const std::string &text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        s = s.substr(1, s.size() - 2);
    }
    try {
        std::size_t used = 0;
        const auto comma = s.find(',');
        const std::string re_part = s.substr(0, comma);
        const double re = std::stod(re_part, &used);
        if (used != re_part.size()) {
            throw std::invalid_argument("trailing");
        }
        double im = 0.0;
        if (comma != std::string::npos) {
            const std::string im_part = s.substr(comma + 1);
            im = std::stod(im_part, &used);
            if (used != im_part.size()) {
                throw std::invalid_argument("trailing");
            }
        }
        return {re, im};
    } catch (const std::exception &) {
        throw std::invalid_argument("not a complex number: '" + text + "' (use (re,im))");
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact verification suites for localized powers of T on the Heisenberg group"};
    app.name("heis-verify");
    app.require_subcommand(1);
    app.fallthrough();

    heis::SuiteConfig cfg;
    std::string d_text = "1/2";
    std::string r_text = "1";
    std::vector<std::string> c_texts;
    std::string format_text = "json";
    std::string out_path;
    std::string csv_dir;
    std::string target_text;

    app.set_config("--config", "", "Key-value config file; flags override its values");
    app.add_option("--p-max", cfg.p_max, "Largest power p of T")->capture_default_str();
    app.add_option("--n", cfg.n_minus_1, "Number of complex directions (n-1)")->capture_default_str();
    app.add_option("--cutoff-n-max", cfg.cutoff_n_max, "Largest cutoff order N")->capture_default_str();
    app.add_option("--d", d_text, "Separation d (rational, e.g. 1/2)")->capture_default_str();
    app.add_option("--r", r_text, "Inner radius r (rational)")->capture_default_str();
    app.add_option("--c-budget", cfg.c_budget, "Budget for the empirical cutoff constant")->capture_default_str();
    app.add_option("--c", c_texts, "Coercivity parameter (re,im); repeat for a list");
    app.add_option("--format", format_text, "Report format")
        ->check(CLI::IsMember({"json", "markdown"}))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for randomized property checks")->capture_default_str();
    app.add_option("--instances", cfg.property_instances, "Random instances per property")->capture_default_str();
    app.add_option("--out", out_path, "Write the report here instead of stdout");
    app.add_option("--csv-dir", csv_dir, "Export cutoff and growth tables as CSV into this directory");

    auto *verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("target", target_text, "algebra | localization | constants | cutoff | nesting | all")
        ->required()
        ->check(CLI::IsMember({"algebra", "localization", "constants", "cutoff", "nesting", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    heis::SuiteTarget target;
    heis::ReportFormat format;
    try {
        cfg.d = parse_rational(d_text);
        cfg.r = parse_rational(r_text);
        if (!c_texts.empty()) {
            cfg.c_list.clear();
            for (const auto &t : c_texts) {
                cfg.c_list.push_back(parse_complex(t));
            }
        }
        if (!csv_dir.empty()) {
            cfg.csv_dir = csv_dir;
        }
        target = heis::parse_target(target_text);
        format = heis::parse_format(format_text);
        cfg.validate();
    } catch (const std::exception &e) {
        std::cerr << "heis-verify: " << e.what() << "\n";
        return kExitUsage;
    }

    std::cerr << "heis-verify: target=" << heis::to_string(target) << " seed=" << cfg.seed << "\n";

    heis::SuiteResult result;
    try {
        result = heis::run_suite(cfg, target);
    } catch (const std::invalid_argument &e) {
        std::cerr << "heis-verify: " << e.what() << "\n";
        return kExitUsage;
    }

    const auto text = heis::render_report(result.reports, format, result.matrix);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "heis-verify: cannot write " << out_path << "\n";
            return kExitUsage;
        }
        out << text << "\n";
    }
    return result.exit_code();
}
