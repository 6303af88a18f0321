#include "heis/localization.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

namespace heis {

namespace {

std::string dim_str(int dim) { return std::to_string(dim); }

double to_double(const Scalar &s) { return s.get_d(); }

mpz_class binomial(int n, int k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::string first_term(const OperatorExpr &e)
{
    return e.is_zero() ? std::string("0") : to_string(e.terms().front());
}

} // namespace

LocalizedPower build_localized_T_power(int p, Cutoff base, const SignConvention &conv, int dim, int t_shift)
{
    check_dimension(dim);
    if (p < 0) {
        throw std::invalid_argument("heis: localized power needs p >= 0, got " + std::to_string(p));
    }
    if (t_shift < 0) {
        throw std::invalid_argument("heis: negative T shift on the cutoff");
    }
    LocalizedPower out{p, base, t_shift, dim, conv, {}};
    for (const auto &a : multi_indices_up_to(dim, p)) {
        for (const auto &b : multi_indices_up_to(dim, p - a.total())) {
            const int signed_total = conv.loc_sign == LocSign::alpha ? a.total() : b.total();
            Scalar c = (signed_total % 2 == 0 ? 1 : -1);
            c /= a.factorial() * b.factorial();
            out.expr.add(c, JetMonomial::single({base, a, b, t_shift}), {b, a, p - a.total() - b.total()});
        }
    }
    return out;
}

std::size_t localized_term_count(int p, int dim)
{
    check_dimension(dim);
    if (p < 0) {
        return 0;
    }
    return binomial(p + 2 * dim, 2 * dim).get_ui();
}

ResidualProfile profile_of(const OperatorExpr &residual)
{
    ResidualProfile pr;
    for (const auto &[key, c] : residual) {
        const int jw = key.jets.weight();
        const int ww = key.word.weight();
        if (pr.empty) {
            pr.min_jet_weight = pr.max_jet_weight = jw;
            pr.min_word_weight = pr.max_word_weight = ww;
            pr.empty = false;
        } else {
            pr.min_jet_weight = std::min(pr.min_jet_weight, jw);
            pr.max_jet_weight = std::max(pr.max_jet_weight, jw);
            pr.min_word_weight = std::min(pr.min_word_weight, ww);
            pr.max_word_weight = std::max(pr.max_word_weight, ww);
        }
        pr.t_in_word = pr.t_in_word || key.word.t > 0;
        pr.l1_weighted += abs(c) * key.jets.factorial_weight();
        ++pr.terms;
    }
    return pr;
}

BracketSplit principal_residual_split(const Generator &g, const LocalizedPower &P)
{
    g.validate(P.dim);
    if (g.kind == GenKind::T) {
        throw std::invalid_argument("heis: the principal/residual split is defined for L_k and Lbar_k only");
    }
    BracketSplit s;
    s.bracket = commutator(generator_op(g, P.dim), P.expr, P.conv);
    if (g.kind == GenKind::Lbar && P.p >= 1) {
        const auto lower = build_localized_T_power(P.p - 1, P.base, P.conv, P.dim, P.t_shift + 1);
        s.principal = multiply(lower.expr, generator_op(g, P.dim), P.conv);
    }
    s.residual = s.bracket - s.principal;
    s.profile = profile_of(s.residual);
    return s;
}

StructureCheck residual_structure_check(const ResidualProfile &profile, int p, int word_weight)
{
    StructureCheck r;
    if (profile.empty) {
        r.pass = true;
        r.diagnostic = "empty residual";
        return r;
    }
    r.k_p = std::pow(to_double(profile.l1_weighted), 1.0 / (p + 1));
    std::ostringstream os;
    bool ok = true;
    if (profile.min_jet_weight != p + 1 || profile.max_jet_weight != p + 1) {
        ok = false;
        os << "jet weight in [" << profile.min_jet_weight << "," << profile.max_jet_weight << "], expected " << p + 1
           << "; ";
    }
    if (profile.min_word_weight != word_weight || profile.max_word_weight != word_weight) {
        ok = false;
        os << "word weight in [" << profile.min_word_weight << "," << profile.max_word_weight << "], expected "
           << word_weight << "; ";
    }
    if (profile.t_in_word) {
        ok = false;
        os << "T occurs in a residual word; ";
    }
    r.pass = ok;
    r.diagnostic = ok ? "ok" : os.str();
    return r;
}

StructureCheck residual_structure_check(const ResidualProfile &profile, int p)
{
    return residual_structure_check(profile, p, p);
}

StructureCheck residual_structure_check(const OperatorExpr &residual, int p, int word_weight)
{
    auto r = residual_structure_check(profile_of(residual), p, word_weight);
    if (!r.pass) {
        for (const auto &t : residual.terms()) {
            if (t.jets.weight() != p + 1 || t.word.weight() != word_weight || t.word.t > 0) {
                r.diagnostic += "offending term: " + to_string(t);
                break;
            }
        }
    }
    return r;
}

VerificationReport bracket_residual_check(const Generator &g, int p, const SignConvention &conv, int dim)
{
    const auto P = build_localized_T_power(p, Cutoff::psi, conv, dim);
    const auto split = principal_residual_split(g, P);
    const auto sc = residual_structure_check(split.residual, p, p);
    VerificationReport rep;
    rep.check_id = "bracket_residual";
    rep.params = {{"p", std::to_string(p)}, {"generator", g.name()}, {"n_minus_1", dim_str(dim)}};
    rep.convention = conv;
    rep.metrics["K_p"] = sc.k_p;
    rep.metrics["residual_terms"] = static_cast<double>(split.profile.terms);
    rep.metrics["min_jet_weight"] = split.profile.min_jet_weight;
    rep.metrics["max_jet_weight"] = split.profile.max_jet_weight;
    rep.metrics["min_word_weight"] = split.profile.min_word_weight;
    rep.metrics["max_word_weight"] = split.profile.max_word_weight;
    rep.status = sc.pass ? Status::pass : Status::fail;
    if (!sc.pass) {
        rep.counterexample = sc.diagnostic;
    }
    return rep;
}

VerificationReport box_bracket_check(int p, const SignConvention &conv, int dim)
{
    if (p < 1) {
        throw std::invalid_argument("heis: box bracket check needs p >= 1");
    }
    VerificationReport rep;
    rep.check_id = "box_bracket";
    rep.params = {{"p", std::to_string(p)}, {"n_minus_1", dim_str(dim)}};
    rep.convention = conv;

    const auto P = build_localized_T_power(p, Cutoff::psi, conv, dim);
    const auto lower = build_localized_T_power(p - 1, Cutoff::psi, conv, dim, 1);
    OperatorExpr summed;
    bool ok = true;
    bool refined_ok = true;
    double k_max = 0.0;
    for (int k = 0; k < dim; ++k) {
        const auto Lk = generator_op(Generator::L(k), dim);
        const auto Lbk = generator_op(Generator::Lbar(k), dim);
        const auto LLb = multiply(Lk, Lbk, conv);
        const auto bracket = commutator(LLb, P.expr, conv);
        summed += bracket;

        const auto leibniz =
            multiply(Lk, commutator(Lbk, P.expr, conv), conv) + multiply(commutator(Lk, P.expr, conv), Lbk, conv);
        const bool split_ok = leibniz == bracket;
        rep.metrics["leibniz_k" + std::to_string(k + 1)] = split_ok ? 1.0 : 0.0;
        if (!split_ok && !rep.counterexample) {
            rep.counterexample = "Leibniz split, k=" + std::to_string(k + 1) + ": " + first_term(bracket - leibniz);
        }

        const auto residual = bracket - multiply(lower.expr, LLb, conv);
        const auto sc = residual_structure_check(residual, p, p + 1);
        const auto pr = profile_of(residual);
        const std::string suffix = "_k" + std::to_string(k + 1);
        rep.metrics["residual_terms" + suffix] = static_cast<double>(pr.terms);
        rep.metrics["residual_min_jet_weight" + suffix] = pr.min_jet_weight;
        rep.metrics["residual_max_jet_weight" + suffix] = pr.max_jet_weight;
        rep.metrics["residual_min_word_weight" + suffix] = pr.min_word_weight;
        rep.metrics["residual_max_word_weight" + suffix] = pr.max_word_weight;
        // Term classes: (jet p+1, word p+1) and (jet p+2, word p).
        int principal_class = 0, shifted_class = 0, other_class = 0;
        for (const auto &[key, c] : residual) {
            const int jw = key.jets.weight();
            const int ww = key.word.weight();
            if (key.word.t == 0 && jw == p + 1 && ww == p + 1) {
                ++principal_class;
            } else if (key.word.t == 0 && jw == p + 2 && ww == p) {
                ++shifted_class;
            } else {
                ++other_class;
            }
        }
        rep.metrics["class_jet_p1_word_p1" + suffix] = principal_class;
        rep.metrics["class_jet_p2_word_p" + suffix] = shifted_class;
        rep.metrics["class_other" + suffix] = other_class;
        refined_ok = refined_ok && other_class == 0;
        k_max = std::max(k_max, sc.k_p);
        if (!sc.pass && !rep.counterexample) {
            rep.counterexample = "k=" + std::to_string(k + 1) + ": " + sc.diagnostic;
        }
        ok = ok && split_ok && sc.pass;
    }
    rep.metrics["K_p"] = k_max;
    rep.metrics["refined_shape_ok"] = refined_ok ? 1.0 : 0.0;

    // sum_k L_k Lbar_k = -box_b
    const auto minus_box = -kohn_laplacian(dim, conv);
    const bool sum_ok = summed == commutator(minus_box, P.expr, conv);
    rep.metrics["sum_matches_box"] = sum_ok ? 1.0 : 0.0;
    if (!sum_ok && !rep.counterexample) {
        rep.counterexample = "sum over k differs from [-box_b, P]";
    }
    rep.status = ok && sum_ok ? Status::pass : Status::fail;
    return rep;
}

OperatorExpr alpha_commutator_lhs(const MultiIndex &alpha, const SignConvention &conv)
{
    const int dim = alpha.dim();
    const auto zero = MultiIndex::zero(dim);
    const auto lbar = word_op({zero, alpha, 0});
    const auto l = word_op({alpha, zero, 0});
    return commutator(lbar, l, conv);
}

OperatorExpr alpha_commutator_rhs(const MultiIndex &alpha)
{
    OperatorExpr out;
    for (const auto &sub : sub_indices(alpha)) {
        if (sub.is_zero()) {
            continue;
        }
        Scalar c = sub.factorial();
        for (int j = 0; j < alpha.dim(); ++j) {
            const mpz_class b = binomial(alpha[j], sub[j]);
            c *= b * b;
        }
        const auto rest = alpha - sub;
        out.add(c, JetMonomial{}, {rest, rest, sub.total()});
    }
    return out;
}

VerificationReport alpha_commutator_check(const MultiIndex &alpha, const SignConvention &conv)
{
    if (alpha.total() < 1) {
        throw std::invalid_argument("heis: alpha commutator check needs |alpha| >= 1");
    }
    VerificationReport rep;
    rep.check_id = "alpha_commutator";
    rep.params = {{"alpha", to_string(alpha)}, {"n_minus_1", dim_str(alpha.dim())}};
    rep.convention = conv;
    const auto diff = alpha_commutator_lhs(alpha, conv) - alpha_commutator_rhs(alpha);
    rep.metrics["differing_terms"] = static_cast<double>(diff.size());
    rep.metrics["sigma"] = conv.sigma;
    if (diff.is_zero()) {
        rep.status = Status::pass;
    } else {
        rep.status = Status::fail;
        rep.counterexample = "lhs - rhs first term: " + first_term(diff);
    }
    return rep;
}

VerificationReport lbar_power_coefficient_check(int s, const SignConvention &conv)
{
    if (s < 1) {
        throw std::invalid_argument("heis: Lbar power coefficient check needs s >= 1");
    }
    constexpr int dim = 1;
    VerificationReport rep;
    rep.check_id = "lbar_power_coefficient";
    rep.params = {{"s", std::to_string(s)}, {"n_minus_1", "1"}};
    rep.convention = conv;

    const auto zero = MultiIndex::zero(dim);
    const auto LLb = multiply(generator_op(Generator::L(0), dim), generator_op(Generator::Lbar(0), dim), conv);
    const auto psi = JetIndex::of(Cutoff::psi, dim);
    const auto rhs = jet_word_op(psi, {zero, MultiIndex({s}), 0});
    const auto bracket = commutator(LLb, rhs, conv);

    const NormalWord target{zero, MultiIndex({s}), 1};
    const auto plain = JetMonomial::single(psi);
    const Scalar coeff = bracket.coefficient(plain, target);
    rep.metrics["coefficient"] = coeff.get_d();
    rep.metrics["sign"] = sgn(coeff);

    bool side_ok = true;
    for (const auto &t : bracket.terms()) {
        if (t.jets == plain && t.word == target) {
            continue;
        }
        if (t.jets.weight() < 1) {
            side_ok = false;
            rep.counterexample = "term without a derivative on psi: " + to_string(t);
            break;
        }
    }
    const bool coeff_ok = abs(coeff) == s;
    if (!coeff_ok && !rep.counterexample) {
        rep.counterexample = "coefficient " + coeff.get_str() + " on psi Lbar^s T";
    }
    rep.status = coeff_ok && side_ok ? Status::pass : Status::fail;
    return rep;
}

OperatorExpr flip_L(const OperatorExpr &e)
{
    OperatorExpr out;
    for (const auto &[key, c] : e) {
        int count = key.word.l.total();
        for (const auto &f : key.jets.factors()) {
            count += f.a.total();
        }
        out.add(count % 2 == 0 ? c : Scalar(-c), key.jets, key.word);
    }
    return out;
}

OperatorExpr expected_T_psi(int dim)
{
    check_dimension(dim);
    const auto psi = JetIndex::of(Cutoff::psi, dim);
    auto out = jet_word_op(psi, NormalWord{MultiIndex::zero(dim), MultiIndex::zero(dim), 1});
    for (int j = 0; j < dim; ++j) {
        out += jet_word_op({psi.base, psi.a, psi.b.plus_unit(j), 0}, NormalWord::of(Generator::L(j), dim));
        out -= jet_word_op({psi.base, psi.a.plus_unit(j), psi.b, 0}, NormalWord::of(Generator::Lbar(j), dim));
    }
    return out;
}

VerificationReport expected_T_psi_check(const SignConvention &conv, int dim)
{
    VerificationReport rep;
    rep.check_id = "localized_power_p1";
    rep.params = {{"n_minus_1", dim_str(dim)}};
    rep.convention = conv;
    const auto built = build_localized_T_power(1, Cutoff::psi, conv, dim);
    const auto diff = built.expr - expected_T_psi(dim);
    rep.metrics["terms"] = static_cast<double>(built.expr.size());
    rep.metrics["differing_terms"] = static_cast<double>(diff.size());
    rep.status = diff.is_zero() ? Status::pass : Status::fail;
    if (!diff.is_zero()) {
        rep.counterexample = first_term(diff);
    }
    return rep;
}

VerificationReport term_count_check(int p, int dim)
{
    VerificationReport rep;
    rep.check_id = "localized_term_count";
    rep.params = {{"p", std::to_string(p)}, {"n_minus_1", dim_str(dim)}};
    const auto built = build_localized_T_power(p, Cutoff::psi, SignConvention(1, LocSign::alpha), dim);
    std::size_t direct = 0;
    for (const auto &a : multi_indices_up_to(dim, p)) {
        direct += multi_indices_up_to(dim, p - a.total()).size();
    }
    const auto formula = localized_term_count(p, dim);
    rep.metrics["terms"] = static_cast<double>(built.expr.size());
    rep.metrics["direct_count"] = static_cast<double>(direct);
    rep.metrics["binomial"] = static_cast<double>(formula);
    const bool ok = built.expr.size() == direct && direct == formula;
    rep.status = ok ? Status::pass : Status::fail;
    return rep;
}

OperatorExpr expected_first_bracket(const Generator &g, const SignConvention &conv, int dim, bool literal)
{
    g.validate(dim);
    if (g.kind == GenKind::T) {
        throw std::invalid_argument("heis: no first-order bracket identity for T");
    }
    if (conv.loc_sign == LocSign::beta && !literal) {
        const SignConvention mirror(-conv.sigma, LocSign::alpha);
        auto img = flip_L(expected_first_bracket(g, mirror, dim, false));
        return g.kind == GenKind::L ? -img : img;
    }
    OperatorExpr out;
    const auto psi = JetIndex::of(Cutoff::psi, dim);
    for (int j = 0; j < dim; ++j) {
        const JetIndex lbar_j_psi{psi.base, psi.a, psi.b.plus_unit(j), 0};
        const JetIndex l_j_psi{psi.base, psi.a.plus_unit(j), psi.b, 0};
        for (const auto &[c, jet] : jet_apply(g, lbar_j_psi, conv)) {
            out += jet_word_op(jet, NormalWord::of(Generator::L(j), dim), c);
        }
        for (const auto &[c, jet] : jet_apply(g, l_j_psi, conv)) {
            out += jet_word_op(jet, NormalWord::of(Generator::Lbar(j), dim), -c);
        }
    }
    return out;
}

VerificationReport expected_bracket_check(const Generator &g, const SignConvention &conv, int dim, bool literal)
{
    const bool mirrored = conv.loc_sign == LocSign::beta && !literal;
    VerificationReport rep;
    rep.check_id = "first_bracket_identity";
    rep.params = {{"generator", g.name()},
                  {"n_minus_1", dim_str(dim)},
                  {"reading", mirrored ? "mirrored L->-L" : "literal"}};
    rep.convention = conv;
    const auto P = build_localized_T_power(1, Cutoff::psi, conv, dim);
    const auto diff = commutator(generator_op(g, dim), P.expr, conv) - expected_first_bracket(g, conv, dim, literal);
    rep.metrics["differing_terms"] = static_cast<double>(diff.size());
    if (diff.is_zero()) {
        rep.status = Status::pass;
    } else {
        rep.status = Status::fail;
        rep.counterexample = first_term(diff);
    }
    return rep;
}

namespace {

struct ConventionRow {
    std::vector<std::string> checks;
    std::vector<bool> results;
    std::string first_failure;
};

ConventionRow run_convention(const SignConvention &conv, const ConventionSearchOptions &opts)
{
    ConventionRow row;
    auto record = [&](std::string name, bool ok, const std::string &why) {
        if (!ok && row.first_failure.empty()) {
            row.first_failure = name + ": " + why;
        }
        row.checks.push_back(std::move(name));
        row.results.push_back(ok);
    };
    for (int p = 1; p <= opts.p_max; ++p) {
        const auto P = build_localized_T_power(p, Cutoff::psi, conv, opts.dim);
        for (int k = 0; k < opts.dim; ++k) {
            for (const auto &g : {Generator::L(k), Generator::Lbar(k)}) {
                const auto split = principal_residual_split(g, P);
                const auto sc = residual_structure_check(split.residual, p, p);
                record("p=" + std::to_string(p) + "," + g.name(), sc.pass, sc.diagnostic);
            }
        }
    }
    for (int total = 1; total <= opts.alpha_max; ++total) {
        for (const auto &alpha : multi_indices_of_total(opts.dim, total)) {
            const auto rep = alpha_commutator_check(alpha, conv);
            record("alpha=" + to_string(alpha), !rep.failed(), rep.counterexample.value_or(""));
        }
    }
    return row;
}

} // namespace

ConventionSearchResult convention_search(const ConventionSearchOptions &opts)
{
    if (opts.p_max < 1) {
        throw std::invalid_argument("heis: convention search needs pMax >= 1");
    }
    check_dimension(opts.dim);
    const auto convs = SignConvention::all();
    std::vector<std::future<ConventionRow>> jobs;
    for (const auto &conv : convs) {
        jobs.push_back(std::async(std::launch::async, run_convention, conv, opts));
    }

    ConventionSearchResult out;
    VerificationReport rep;
    rep.check_id = "convention_search";
    rep.params = {{"p_max", std::to_string(opts.p_max)},
                  {"n_minus_1", dim_str(opts.dim)},
                  {"alpha_max", std::to_string(opts.alpha_max)}};
    std::string failures;
    for (std::size_t i = 0; i < convs.size(); ++i) {
        auto row = jobs[i].get();
        if (out.matrix.checks.empty()) {
            out.matrix.checks = row.checks;
        }
        bool all = true;
        for (bool b : row.results) {
            all = all && b;
        }
        out.matrix.rows[convs[i]] = row.results;
        rep.metrics["passes[" + convs[i].name() + "]"] = all ? 1.0 : 0.0;
        if (all) {
            out.matrix.passing.push_back(convs[i]);
        } else {
            failures += convs[i].name() + " -> " + row.first_failure + "\n";
        }
    }
    rep.metrics["passing_conventions"] = static_cast<double>(out.matrix.passing.size());
    rep.status = out.matrix.passing.empty() ? Status::fail : Status::pass;
    if (!failures.empty()) {
        rep.counterexample = failures;
    }
    out.reports.push_back(std::move(rep));
    return out;
}

} // namespace heis
