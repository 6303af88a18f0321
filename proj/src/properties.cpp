#include "heis/properties.hpp"

namespace heis {

int OperatorSampler::below(int n)
{
    return static_cast<int>(rng_() % static_cast<std::uint64_t>(n));
}

namespace {

// Random multi-index of total <= budget; returns the total used.
MultiIndex draw_index(OperatorSampler &s, int dim, int budget)
{
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    for (int j = 0; j < dim && budget > 0; ++j) {
        e[static_cast<std::size_t>(j)] = s.below(budget + 1);
        budget -= e[static_cast<std::size_t>(j)];
    }
    return MultiIndex(std::move(e));
}

} // namespace

Term OperatorSampler::term(int dim, int max_weight, bool with_jets)
{
    int budget = below(max_weight + 1);
    Term t;
    // small nonzero rational
    const int num = below(7) - 3;
    t.coeff = Scalar(num == 0 ? 1 : num, below(3) + 1);
    t.coeff.canonicalize();

    std::vector<JetIndex> jets;
    if (with_jets) {
        const int count = below(3);
        for (int i = 0; i < count && budget > 0; ++i) {
            const int share = below(budget + 1);
            JetIndex j;
            j.base = below(4) == 0 ? Cutoff::psi2 : Cutoff::psi;
            j.m = below(share / 2 + 1);
            int rest = share - 2 * j.m;
            j.a = draw_index(*this, dim, rest);
            rest -= j.a.total();
            j.b = draw_index(*this, dim, rest);
            budget -= j.weight();
            jets.push_back(std::move(j));
        }
    }
    t.jets = JetMonomial(std::move(jets));
    t.word.t = below(budget / 2 + 1);
    budget -= 2 * t.word.t;
    t.word.l = draw_index(*this, dim, budget);
    budget -= t.word.l.total();
    t.word.lbar = draw_index(*this, dim, budget);
    return t;
}

OperatorExpr OperatorSampler::op(int dim, int max_terms, int max_weight, bool with_jets)
{
    OperatorExpr e;
    const int count = 1 + below(max_terms);
    for (int i = 0; i < count; ++i) {
        e.add(term(dim, max_weight, with_jets));
    }
    return e;
}

OperatorExpr OperatorSampler::generator_combination(int dim, int max_terms)
{
    OperatorExpr e;
    const int count = 1 + below(max_terms);
    for (int i = 0; i < count; ++i) {
        const int kind = below(3);
        const Generator g = kind == 0 ? Generator::L(below(dim)) : kind == 1 ? Generator::Lbar(below(dim)) : Generator::T();
        e += Scalar(below(5) - 2 == 0 ? 1 : below(5) - 2) * generator_op(g, dim);
    }
    return e;
}

bool grading_holds(const Term &a, const Term &b, const OperatorExpr &product)
{
    const int expected = a.weight() + b.weight();
    for (const auto &[key, c] : product) {
        if (key.jets.weight() + key.word.weight() != expected) {
            return false;
        }
    }
    return true;
}

namespace {

struct GradedProduct {
    bool grading_ok = true;
    long products = 0;

    OperatorExpr operator()(const OperatorExpr &a, const OperatorExpr &b, const SignConvention &conv)
    {
        OperatorExpr out;
        for (const auto &ta : a.terms()) {
            for (const auto &tb : b.terms()) {
                auto p = normal_order_product(ta, tb, conv);
                grading_ok = grading_ok && grading_holds(ta, tb, p);
                ++products;
                out += p;
            }
        }
        return out;
    }
};

SignConvention conv_for(int i)
{
    return SignConvention(i % 2 == 0 ? 1 : -1, LocSign::alpha);
}

VerificationReport base_report(const std::string &id, const PropertyConfig &cfg)
{
    VerificationReport r;
    r.check_id = id;
    r.params = {{"seed", std::to_string(cfg.seed)},
                {"instances", std::to_string(cfg.instances)},
                {"n_minus_1_max", std::to_string(cfg.dim_max)},
                {"max_terms", std::to_string(cfg.max_terms)},
                {"max_weight", std::to_string(cfg.max_weight)}};
    return r;
}

void finish(VerificationReport &r, int failures, const GradedProduct &mul)
{
    r.metrics["failures"] = failures;
    r.metrics["products"] = static_cast<double>(mul.products);
    r.metrics["grading_ok"] = mul.grading_ok ? 1.0 : 0.0;
    if (!mul.grading_ok && !r.counterexample) {
        r.counterexample = "a product broke weight conservation";
    }
    r.status = failures == 0 && mul.grading_ok ? Status::pass : Status::fail;
}

} // namespace

VerificationReport associativity_property(const PropertyConfig &cfg)
{
    auto rep = base_report("algebra_associativity", cfg);
    OperatorSampler s(cfg.seed);
    GradedProduct mul;
    int failures = 0;
    for (int i = 0; i < cfg.instances; ++i) {
        const int dim = 1 + s.below(cfg.dim_max);
        const auto conv = conv_for(i);
        const auto a = s.op(dim, cfg.max_terms, cfg.max_weight, true);
        const auto b = s.op(dim, cfg.max_terms, cfg.max_weight, true);
        const auto c = s.op(dim, cfg.max_terms, cfg.max_weight, true);
        if (!(mul(mul(a, b, conv), c, conv) == mul(a, mul(b, c, conv), conv))) {
            if (failures++ == 0) {
                rep.counterexample = "instance " + std::to_string(i) + ": A = " + to_string(a);
            }
        }
    }
    finish(rep, failures, mul);
    return rep;
}

VerificationReport jacobi_property(const PropertyConfig &cfg)
{
    auto rep = base_report("algebra_jacobi", cfg);
    OperatorSampler s(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    GradedProduct mul;
    auto br = [&](const OperatorExpr &x, const OperatorExpr &y, const SignConvention &conv) {
        return mul(x, y, conv) - mul(y, x, conv);
    };
    int failures = 0;
    for (int i = 0; i < cfg.instances; ++i) {
        const int dim = 1 + s.below(cfg.dim_max);
        const auto conv = conv_for(i);
        // Half generator-only triples, half general operators with jets.
        const bool general = i % 2 == 1;
        auto draw = [&] {
            return general ? s.op(dim, cfg.max_terms, cfg.max_weight / 2, true)
                           : s.generator_combination(dim, cfg.max_terms);
        };
        const auto a = draw();
        const auto b = draw();
        const auto c = draw();
        const auto sum = br(a, br(b, c, conv), conv) + br(b, br(c, a, conv), conv) + br(c, br(a, b, conv), conv);
        if (!sum.is_zero()) {
            if (failures++ == 0) {
                rep.counterexample = "instance " + std::to_string(i) + ": " + to_string(sum);
            }
        }
    }
    finish(rep, failures, mul);
    return rep;
}

VerificationReport grading_property(const PropertyConfig &cfg)
{
    auto rep = base_report("algebra_grading", cfg);
    OperatorSampler s(cfg.seed + 17);
    GradedProduct mul;
    for (int i = 0; i < cfg.instances; ++i) {
        const int dim = 1 + s.below(cfg.dim_max);
        // chains of up to 6 factors
        const int factors = 2 + s.below(5);
        OperatorExpr acc(s.term(dim, cfg.max_weight / 2, true));
        for (int f = 1; f < factors; ++f) {
            acc = mul(acc, OperatorExpr(s.term(dim, 2, true)), conv_for(i));
        }
    }
    finish(rep, 0, mul);
    return rep;
}

VerificationReport adjoint_property(const PropertyConfig &cfg)
{
    auto rep = base_report("algebra_adjoint", cfg);
    OperatorSampler s(cfg.seed + 31);
    GradedProduct mul;
    int failures = 0;
    for (int i = 0; i < cfg.instances; ++i) {
        const int dim = 1 + s.below(cfg.dim_max);
        const auto conv = conv_for(i);
        const auto a = s.op(dim, cfg.max_terms, cfg.max_weight / 2, true);
        const auto b = s.op(dim, cfg.max_terms, cfg.max_weight / 2, true);
        const bool involution = formal_adjoint(formal_adjoint(a, conv), conv) == a;
        const bool anti = formal_adjoint(mul(a, b, conv), conv)
                          == mul(formal_adjoint(b, conv), formal_adjoint(a, conv), conv);
        if (!(involution && anti)) {
            if (failures++ == 0) {
                rep.counterexample = std::string(involution ? "anti-multiplicativity" : "involution")
                                     + " fails for A = " + to_string(a);
            }
        }
    }
    finish(rep, failures, mul);
    return rep;
}

VerificationReport bilinearity_property(const PropertyConfig &cfg)
{
    auto rep = base_report("algebra_bilinearity", cfg);
    OperatorSampler s(cfg.seed + 47);
    GradedProduct mul;
    int failures = 0;
    for (int i = 0; i < cfg.instances; ++i) {
        const int dim = 1 + s.below(cfg.dim_max);
        const auto conv = conv_for(i);
        const auto a = s.op(dim, cfg.max_terms, cfg.max_weight, true);
        const auto b = s.op(dim, cfg.max_terms, cfg.max_weight, true);
        const auto c = s.op(dim, cfg.max_terms, cfg.max_weight, true);
        const auto one = identity_op(dim);
        const bool idem = mul(one, a, conv) == a && mul(a, one, conv) == a;
        const bool left = mul(a + b, c, conv) == mul(a, c, conv) + mul(b, c, conv);
        const bool right = mul(a, b + c, conv) == mul(a, b, conv) + mul(a, c, conv);
        const bool scal = mul(Scalar(3, 2) * a, b, conv) == Scalar(3, 2) * mul(a, b, conv);
        if (!(idem && left && right && scal)) {
            if (failures++ == 0) {
                rep.counterexample = "instance " + std::to_string(i) + ": A = " + to_string(a);
            }
        }
    }
    finish(rep, failures, mul);
    return rep;
}

} // namespace heis
