#ifndef HEIS_LOCALIZATION_HPP
#define HEIS_LOCALIZATION_HPP

// Localized powers of T and the bracket bookkeeping around them.
//
//   (T^p)_psi = sum_{|a+b| <= p} s(a,b) (L^a Lbar^b psi) / (a! b!) * L^b Lbar^a T^{p-|a+b|}
//
// with s(a,b) = (-1)^{|a|} (loc = alpha) or (-1)^{|b|} (loc = beta).  The
// cutoff may already carry T^q, giving (T^p)_{T^q psi}.

#include <cstddef>
#include <string>
#include <vector>

#include "heis/algebra.hpp"
#include "heis/report.hpp"

namespace heis {

struct LocalizedPower {
    int p = 0;
    Cutoff base = Cutoff::psi;
    int t_shift = 0; // q in (T^p)_{T^q psi}
    int dim = 1;
    SignConvention conv;
    OperatorExpr expr;
};

LocalizedPower build_localized_T_power(int p, Cutoff base, const SignConvention &conv, int dim, int t_shift = 0);

// #{(a, b) : |a| + |b| <= p} with a, b in N^dim, i.e. C(p + 2 dim, 2 dim).
std::size_t localized_term_count(int p, int dim);

struct ResidualProfile {
    bool empty = true;
    int min_jet_weight = 0;
    int max_jet_weight = 0;
    int min_word_weight = 0;
    int max_word_weight = 0;
    bool t_in_word = false;
    Scalar l1_weighted = 0; // sum |coeff| * prod a! b!
    std::size_t terms = 0;
};

ResidualProfile profile_of(const OperatorExpr &residual);

struct BracketSplit {
    OperatorExpr bracket;
    OperatorExpr principal;
    OperatorExpr residual;
    ResidualProfile profile;
};

// [g, P] = principal + residual, where the principal part is 0 for g = L_k and
// (T^{p-1})_{T psi} o Lbar_k for g = Lbar_k.
BracketSplit principal_residual_split(const Generator &g, const LocalizedPower &P);

struct StructureCheck {
    bool pass = false;
    double k_p = 0.0; // l1_weighted^{1/(p+1)}
    std::string diagnostic;
};

// Residual terms must carry exactly p+1 derivatives on the cutoff, a word of
// the expected weight (p by default) and no T in the word.
StructureCheck residual_structure_check(const ResidualProfile &profile, int p, int word_weight);
StructureCheck residual_structure_check(const ResidualProfile &profile, int p);
// Same, naming the first offending term of the residual when it fails.
StructureCheck residual_structure_check(const OperatorExpr &residual, int p, int word_weight);

// principal_residual_split + residual_structure_check for one (p, g) as a report.
VerificationReport bracket_residual_check(const Generator &g, int p, const SignConvention &conv, int dim);
VerificationReport box_bracket_check(int p, const SignConvention &conv, int dim);

// [Lbar^alpha, L^alpha] against sum_{0 != a' <= alpha} C(alpha,a')^2 a'! T^{|a'|} L^{alpha-a'} Lbar^{alpha-a'}.
OperatorExpr alpha_commutator_lhs(const MultiIndex &alpha, const SignConvention &conv);
OperatorExpr alpha_commutator_rhs(const MultiIndex &alpha);
VerificationReport alpha_commutator_check(const MultiIndex &alpha, const SignConvention &conv);

// [L Lbar, psi Lbar^s] in one variable; the psi * Lbar^s T coefficient is +-s.
VerificationReport lbar_power_coefficient_check(int s, const SignConvention &conv);

// The first-order bracket identities for p = 1:
//   [L_k, T_psi]    = sum_j (L_k Lbar_j psi) L_j - sum_j (L_k L_j psi) Lbar_j
//   [Lbar_k, T_psi] = sum_j (Lbar_k Lbar_j psi) L_j - sum_j (Lbar_k L_j psi) Lbar_j
// with the derivative words on psi reduced under conv.  For loc = beta the
// identities are transported by the automorphism L -> -L (with an extra sign
// for g = L_k); `literal` skips that translation.
OperatorExpr expected_first_bracket(const Generator &g, const SignConvention &conv, int dim, bool literal = false);
VerificationReport expected_bracket_check(const Generator &g, const SignConvention &conv, int dim,
                                         bool literal = false);

// T_psi = psi T + sum (Lbar_j psi) L_j - sum (L_j psi) Lbar_j
OperatorExpr expected_T_psi(int dim);
VerificationReport expected_T_psi_check(const SignConvention &conv, int dim);
// Term count of (T^p)_psi against direct enumeration and the binomial formula.
VerificationReport term_count_check(int p, int dim);

// Image under L_j -> -L_j (Lbar, T fixed), applied to words and jets.
OperatorExpr flip_L(const OperatorExpr &e);

struct ConventionSearchOptions {
    int p_max = 1;
    int dim = 1;
    int alpha_max = 3;
};

struct ConventionSearchResult {
    ConventionMatrix matrix;
    ReportList reports;
};

ConventionSearchResult convention_search(const ConventionSearchOptions &opts);

} // namespace heis

#endif
