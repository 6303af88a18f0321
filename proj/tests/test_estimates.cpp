#include "doctest.h"

#include <cmath>

#include "heis/estimates.hpp"

using namespace heis;

TEST_CASE("coercivity constant frozen values")
{
    CHECK(coercivity_constant({1, 0}).constant == 1.0);
    CHECK(coercivity_constant({0, 1}).constant == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(coercivity_constant({-1, 1}).constant == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(coercivity_constant({3, 0}).constant == 1.0);
    CHECK(coercivity_constant({0.25, 0}).constant == 0.25);
    const auto neg = coercivity_constant({-1, 0});
    CHECK(neg.status == CoercivityStatus::degenerate);
    CHECK(neg.constant == 0.0);
    CHECK(coercivity_constant({0, 0}).status == CoercivityStatus::degenerate);
    CHECK(coercivity_constant({-1, 1e-9}).status == CoercivityStatus::ok);
    CHECK_THROWS_AS(coercivity_constant({NAN, 0}), std::invalid_argument);
}

TEST_CASE("coercivity report")
{
    const auto rep = to_report(coercivity_constant({-1, 0}));
    CHECK(rep.status == Status::degenerate);
    CHECK_FALSE(rep.failed());
    CHECK(rep.params.at("c_re") == "-1");
}

TEST_CASE("closed form against sampling")
{
    for (double re = -2.0; re <= 2.0; re += 1.0) {
        for (double im : {0.5, -1.5}) {
            const std::complex<double> c(re, im);
            const double closed = coercivity_constant(c).constant;
            const double sampled = coercivity_sampled(c, 200001);
            CHECK(sampled >= closed - 1e-12);
            CHECK(sampled - closed < 1e-6);
        }
    }
    CHECK_THROWS_AS(coercivity_sampled({1, 1}, 1), std::invalid_argument);
}

TEST_CASE("nesting schedule frozen values")
{
    const auto s1 = nesting_schedule(1);
    REQUIRE(s1.levels.size() == 1);
    CHECK(s1.levels[0] == Scalar(1, 2));
    CHECK(s1.sum_d == Scalar(1, 2));
    CHECK(s1.minimal_c == doctest::Approx(2.0));

    const auto s4 = nesting_schedule(4);
    REQUIRE(s4.levels.size() == 3);
    CHECK(s4.levels[2] == Scalar(1, 8));
    CHECK(s4.sum_d == Scalar(7, 8));
    CHECK(s4.log2_minimal_c == Scalar(11, 4));
    CHECK(s4.minimal_c == doctest::Approx(std::exp2(2.75)));

    CHECK(floor_log2(1) == 0);
    CHECK(floor_log2(7) == 2);
    CHECK(floor_log2(8) == 3);
    CHECK_THROWS_AS(nesting_schedule(0), std::invalid_argument);
    CHECK(to_report(s4).status == Status::pass);
}

TEST_CASE("sumD closed form")
{
    for (long p : {1L, 2L, 5L, 100L, 1L << 20}) {
        const auto s = nesting_schedule(p);
        const int J = s.depth();
        mpz_class pow = 1;
        pow <<= static_cast<unsigned>(J + 1);
        CHECK(s.sum_d == 1 - Scalar(1) / Scalar(pow));
        CHECK(s.minimal_c <= 16.0);
    }
}

TEST_CASE("growth audit frozen values")
{
    const auto g1 = growth_audit(1, 1.0, nesting_schedule(1));
    CHECK(g1.rate == doctest::Approx(2.0));
    CHECK(std::exp(g1.log_amplification) == doctest::Approx(2.0));

    const auto g8 = growth_audit(8, 1.0, nesting_schedule(8));
    CHECK(g8.log_amplification == doctest::Approx(26 * std::log(2.0)));
    CHECK(g8.rate == doctest::Approx(std::exp2(26.0 / 8)));
    CHECK(g8.pass);

    for (int k = 0; k <= 16; ++k) {
        const long p = 1L << k;
        CHECK(growth_audit(p, 1.0, nesting_schedule(p)).rate <= 32.0);
    }
    CHECK_THROWS_AS(growth_audit(3, 1.0, nesting_schedule(4)), std::invalid_argument);
}
