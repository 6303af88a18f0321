#include "doctest.h"

#include "json.hpp"

#include "heis/localization.hpp"
#include "heis/properties.hpp"
#include "heis/report.hpp"
#include "heis/suite.hpp"

using namespace heis;

TEST_CASE("json rendering")
{
    CHECK(render_report({}, ReportFormat::json) == "[]");

    VerificationReport r;
    r.check_id = "x";
    r.params = {{"p", "1"}};
    r.metrics = {{"K_p", 1.5}};
    const auto j = nlohmann::json::parse(render_report({r}, ReportFormat::json));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["status"] == "pass");
    CHECK(j[0]["checkId"] == "x");
    CHECK_FALSE(j[0].contains("counterexample"));
    CHECK_FALSE(j[0].contains("convention"));
    CHECK(j[0]["metrics"]["K_p"] == 1.5);

    r.convention = SignConvention(-1, LocSign::beta);
    r.status = Status::fail;
    r.counterexample = "+1 1 1";
    const auto k = nlohmann::json::parse(render_report({r}, ReportFormat::json));
    CHECK(k[0]["convention"]["sigma"] == -1);
    CHECK(k[0]["convention"]["locSign"] == "beta");
    CHECK(k[0]["counterexample"] == "+1 1 1");
}

TEST_CASE("markdown rendering with the convention matrix")
{
    const auto search = convention_search({1, 1, 2});
    const auto md = render_report(search.reports, ReportFormat::markdown, search.matrix);
    CHECK(md.find("## Convention matrix") != std::string::npos);
    int rows = 0;
    for (const auto &conv : SignConvention::all()) {
        rows += md.find("| " + conv.name() + " |") != std::string::npos;
    }
    CHECK(rows == 4);
    CHECK(md == render_report(search.reports, ReportFormat::markdown, search.matrix));
}

TEST_CASE("format parsing")
{
    CHECK(parse_format("json") == ReportFormat::json);
    CHECK(parse_format("markdown") == ReportFormat::markdown);
    CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);
    CHECK(parse_target("all") == SuiteTarget::all);
    CHECK_THROWS_AS(parse_target("everything"), std::invalid_argument);
}

TEST_CASE("config validation")
{
    SuiteConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.p_max = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(run_suite(cfg, SuiteTarget::constants), std::invalid_argument);
    cfg = SuiteConfig{};
    cfg.d = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("constants suite marks real c <= 0 degenerate and still passes")
{
    SuiteConfig cfg;
    cfg.coercivity_samples = 10001;
    const auto res = run_suite(cfg, SuiteTarget::constants);
    int degenerate = 0;
    for (const auto &r : res.reports) {
        degenerate += r.status == Status::degenerate;
    }
    CHECK(degenerate == 1);
    CHECK(res.exit_code() == 0);
}

TEST_CASE("suite output is deterministic")
{
    SuiteConfig cfg;
    cfg.property_instances = 20;
    cfg.seed = 7;
    const auto a = render_report(run_suite(cfg, SuiteTarget::algebra).reports, ReportFormat::json);
    const auto b = render_report(run_suite(cfg, SuiteTarget::algebra).reports, ReportFormat::json);
    CHECK(a == b);
    cfg.seed = 8;
    CHECK(render_report(run_suite(cfg, SuiteTarget::algebra).reports, ReportFormat::json) != a);
}

TEST_CASE("nesting and cutoff sections at reduced scale")
{
    SuiteConfig cfg;
    cfg.nesting_p_max = 1 << 10;
    cfg.cutoff_n_max = 2;
    CHECK(run_suite(cfg, SuiteTarget::nesting).exit_code() == 0);
    CHECK(run_suite(cfg, SuiteTarget::cutoff).exit_code() == 0);
}

TEST_CASE("property sampler respects the weight budget")
{
    OperatorSampler s(3);
    for (int i = 0; i < 200; ++i) {
        const auto t = s.term(2, 6, true);
        CHECK(t.weight() <= 6);
        CHECK(t.coeff != 0);
    }
}
