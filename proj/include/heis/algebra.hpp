#ifndef HEIS_ALGEBRA_HPP
#define HEIS_ALGEBRA_HPP

// Exact arithmetic in the algebra generated by L_1..L_n, Lbar_1..Lbar_n and
// the central field T, with coefficients that are polynomials in jets of
// cutoff functions.  Everything is kept in normal order:
//
//     coeff * (jet monomial) * L^beta Lbar^alpha T^m
//
// The only non-trivial relation is [Lbar_k, L_j] = sigma * delta_jk * T,
// where sigma is carried by a SignConvention.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace heis {

using Scalar = mpq_class;

// Number of L (and Lbar) generators, i.e. n-1 for the Heisenberg group on
// C^{n-1} x R.  Must be at least 1.
void check_dimension(int dim);

class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    static MultiIndex zero(int dim);
    static MultiIndex unit(int dim, int j); // e_j, 0-based

    int dim() const { return static_cast<int>(e_.size()); }
    int operator[](int j) const { return e_[static_cast<std::size_t>(j)]; }
    int total() const;
    Scalar factorial() const; // product of entry factorials
    bool is_zero() const { return total() == 0; }
    bool leq(const MultiIndex &other) const; // componentwise

    MultiIndex plus_unit(int j) const;
    MultiIndex minus_unit(int j) const;
    MultiIndex operator+(const MultiIndex &o) const;
    MultiIndex operator-(const MultiIndex &o) const;

    const std::vector<int> &entries() const { return e_; }

    auto operator<=>(const MultiIndex &) const = default;
    bool operator==(const MultiIndex &) const = default;

private:
    std::vector<int> e_;
};

// All multi-indices of the given dimension with total exactly / at most n,
// in lexicographic order.
std::vector<MultiIndex> multi_indices_of_total(int dim, int total);
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_total);
// All alpha' with alpha' <= alpha componentwise.
std::vector<MultiIndex> sub_indices(const MultiIndex &alpha);

enum class GenKind : std::uint8_t { L, Lbar, T };

struct Generator {
    GenKind kind = GenKind::T;
    int index = -1; // 0-based; -1 for T

    static Generator L(int j) { return {GenKind::L, j}; }
    static Generator Lbar(int j) { return {GenKind::Lbar, j}; }
    static Generator T() { return {GenKind::T, -1}; }

    void validate(int dim) const;
    std::string name() const;

    auto operator<=>(const Generator &) const = default;
};

// Which multi-index carries the (-1)^{|.|} in the localized power.
enum class LocSign : std::uint8_t { alpha, beta };

struct SignConvention {
    int sigma = 1; // [Lbar_k, L_j] = sigma * delta_jk * T
    LocSign loc_sign = LocSign::alpha;

    SignConvention() = default;
    SignConvention(int sigma_, LocSign loc);

    std::string name() const; // e.g. "sigma=+1,loc=alpha"

    static std::array<SignConvention, 4> all();

    auto operator<=>(const SignConvention &) const = default;
};

enum class Cutoff : std::uint8_t { psi, psi_tilde, psi2 };

std::string cutoff_name(Cutoff c);

// L^a Lbar^b T^m applied to a cutoff function, in that fixed order.
struct JetIndex {
    Cutoff base = Cutoff::psi;
    MultiIndex a;
    MultiIndex b;
    int m = 0;

    static JetIndex of(Cutoff base, int dim);

    int weight() const { return a.total() + b.total() + 2 * m; }
    int order() const { return a.total() + b.total() + m; }

    auto operator<=>(const JetIndex &) const = default;
    bool operator==(const JetIndex &) const = default;
};

// Commutative product of jets, stored sorted.  Empty means the constant 1.
class JetMonomial {
public:
    JetMonomial() = default;
    explicit JetMonomial(std::vector<JetIndex> factors);
    static JetMonomial single(JetIndex j) { return JetMonomial({std::move(j)}); }

    const std::vector<JetIndex> &factors() const { return f_; }
    bool empty() const { return f_.empty(); }
    std::size_t size() const { return f_.size(); }
    int weight() const;
    // Product of a! b! over the factors.
    Scalar factorial_weight() const;

    JetMonomial operator*(const JetMonomial &o) const;
    JetMonomial replaced(std::size_t i, const JetIndex &j) const;

    auto operator<=>(const JetMonomial &) const = default;
    bool operator==(const JetMonomial &) const = default;

private:
    std::vector<JetIndex> f_;
};

// L^l Lbar^lbar T^t
struct NormalWord {
    MultiIndex l;
    MultiIndex lbar;
    int t = 0;

    static NormalWord empty(int dim);
    static NormalWord of(const Generator &g, int dim);

    int weight() const { return l.total() + lbar.total() + 2 * t; }
    bool is_empty() const { return weight() == 0; }

    auto operator<=>(const NormalWord &) const = default;
    bool operator==(const NormalWord &) const = default;
};

struct TermKey {
    NormalWord word;
    JetMonomial jets;

    auto operator<=>(const TermKey &) const = default;
    bool operator==(const TermKey &) const = default;
};

struct Term {
    Scalar coeff;
    JetMonomial jets;
    NormalWord word;

    int weight() const { return jets.weight() + word.weight(); }
};

using JetCombination = std::vector<std::pair<Scalar, JetIndex>>;

// A finite sum of normal-ordered terms.  No zero coefficients are stored and
// iteration runs by word, then jets.
class OperatorExpr {
public:
    using map_type = std::map<TermKey, Scalar>;

    OperatorExpr() = default;
    explicit OperatorExpr(const Term &t) { add(t); }

    void add(const Scalar &c, const JetMonomial &jets, const NormalWord &word);
    void add(const Term &t) { add(t.coeff, t.jets, t.word); }

    OperatorExpr &operator+=(const OperatorExpr &o);
    OperatorExpr &operator-=(const OperatorExpr &o);
    OperatorExpr &operator*=(const Scalar &s);
    friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr &b) { return a += b; }
    friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr &b) { return a -= b; }
    friend OperatorExpr operator*(const Scalar &s, OperatorExpr a) { return a *= s; }
    OperatorExpr operator-() const;

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Scalar coefficient(const JetMonomial &jets, const NormalWord &word) const;
    std::vector<Term> terms() const;

    map_type::const_iterator begin() const { return terms_.begin(); }
    map_type::const_iterator end() const { return terms_.end(); }

    bool operator==(const OperatorExpr &) const = default;

private:
    map_type terms_;
};

// Builders.
OperatorExpr identity_op(int dim);
OperatorExpr generator_op(const Generator &g, int dim);
OperatorExpr word_op(const NormalWord &w, const Scalar &c = 1);
OperatorExpr multiplication_op(const JetIndex &j, const Scalar &c = 1);
OperatorExpr jet_word_op(const JetIndex &j, const NormalWord &w, const Scalar &c = 1);

// g applied to the function L^a Lbar^b T^m psi, rewritten in canonical order.
JetCombination jet_apply(const Generator &g, const JetIndex &j, const SignConvention &conv);

// g composed on the left of an operator, renormalized.
OperatorExpr left_multiply(const Generator &g, const OperatorExpr &a, const SignConvention &conv);

OperatorExpr normal_order_product(const Term &t1, const Term &t2, const SignConvention &conv);
OperatorExpr multiply(const OperatorExpr &a, const OperatorExpr &b, const SignConvention &conv);
OperatorExpr commutator(const OperatorExpr &a, const OperatorExpr &b, const SignConvention &conv);

// Complex conjugate of the function L^a Lbar^b T^m psi (psi real):
// Lbar^a L^b (-T)^m psi, renormalized.
JetCombination conjugate_jet(const JetIndex &j, const SignConvention &conv);

// Formal L^2 adjoint: L_j* = -Lbar_j, Lbar_j* = -L_j, T* = T, f* = conj(f).
OperatorExpr formal_adjoint(const OperatorExpr &a, const SignConvention &conv);

// Kohn Laplacian on functions, built as sum_j (Lbar_j)* Lbar_j.
OperatorExpr kohn_laplacian(int dim, const SignConvention &conv);

// Canonical text rendering.
std::string to_string(const MultiIndex &m);
std::string to_string(const JetIndex &j);
std::string to_string(const JetMonomial &j);
std::string to_string(const NormalWord &w);
std::string to_string(const Term &t);
std::string to_string(const OperatorExpr &e);

} // namespace heis

#endif
