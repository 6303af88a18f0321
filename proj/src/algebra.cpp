#include "heis/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace heis {

void check_dimension(int dim)
{
    if (dim < 1) {
        throw std::invalid_argument("heis: the number of L generators must be at least 1, got "
                                    + std::to_string(dim));
    }
}

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries))
{
    for (int x : e_) {
        if (x < 0) {
            throw std::invalid_argument("heis: negative multi-index entry");
        }
    }
}

MultiIndex MultiIndex::zero(int dim)
{
    check_dimension(dim);
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int j)
{
    auto m = zero(dim);
    if (j < 0 || j >= dim) {
        throw std::invalid_argument("heis: unit multi-index out of range");
    }
    m.e_[static_cast<std::size_t>(j)] = 1;
    return m;
}

int MultiIndex::total() const
{
    return std::accumulate(e_.begin(), e_.end(), 0);
}

Scalar MultiIndex::factorial() const
{
    mpz_class r = 1;
    for (int x : e_) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(x));
        r *= f;
    }
    return Scalar(r);
}

bool MultiIndex::leq(const MultiIndex &o) const
{
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] > o.e_[i]) {
            return false;
        }
    }
    return true;
}

MultiIndex MultiIndex::plus_unit(int j) const
{
    auto r = *this;
    ++r.e_[static_cast<std::size_t>(j)];
    return r;
}

MultiIndex MultiIndex::minus_unit(int j) const
{
    auto r = *this;
    if (--r.e_[static_cast<std::size_t>(j)] < 0) {
        throw std::logic_error("heis: multi-index underflow");
    }
    return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex &o) const
{
    auto r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        r.e_[i] += o.e_[i];
    }
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex &o) const
{
    auto r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        r.e_[i] -= o.e_[i];
        if (r.e_[i] < 0) {
            throw std::logic_error("heis: multi-index underflow");
        }
    }
    return r;
}

namespace {

void enumerate_total(int dim, int pos, int remaining, std::vector<int> &cur, std::vector<MultiIndex> &out)
{
    if (pos == dim - 1) {
        cur[static_cast<std::size_t>(pos)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int x = remaining; x >= 0; --x) {
        cur[static_cast<std::size_t>(pos)] = x;
        enumerate_total(dim, pos + 1, remaining - x, cur, out);
    }
}

} // namespace

std::vector<MultiIndex> multi_indices_of_total(int dim, int total)
{
    check_dimension(dim);
    std::vector<MultiIndex> out;
    if (total < 0) {
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(dim), 0);
    enumerate_total(dim, 0, total, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_total)
{
    std::vector<MultiIndex> out;
    for (int t = 0; t <= max_total; ++t) {
        auto level = multi_indices_of_total(dim, t);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<MultiIndex> sub_indices(const MultiIndex &alpha)
{
    std::vector<MultiIndex> out{MultiIndex::zero(alpha.dim())};
    for (int j = 0; j < alpha.dim(); ++j) {
        std::vector<MultiIndex> next;
        for (const auto &m : out) {
            auto cur = m;
            for (int x = 0; x <= alpha[j]; ++x) {
                next.push_back(cur);
                cur = cur.plus_unit(j);
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Generators, conventions, cutoffs

void Generator::validate(int dim) const
{
    check_dimension(dim);
    if (kind == GenKind::T) {
        if (index != -1) {
            throw std::invalid_argument("heis: T carries no index");
        }
    } else if (index < 0 || index >= dim) {
        throw std::invalid_argument("heis: generator index out of range");
    }
}

std::string Generator::name() const
{
    switch (kind) {
    case GenKind::L:
        return "L" + std::to_string(index + 1);
    case GenKind::Lbar:
        return "Lb" + std::to_string(index + 1);
    case GenKind::T:
        return "T";
    }
    return "?";
}

SignConvention::SignConvention(int sigma_, LocSign loc) : sigma(sigma_), loc_sign(loc)
{
    if (sigma != 1 && sigma != -1) {
        throw std::invalid_argument("heis: sigma must be +1 or -1");
    }
}

std::string SignConvention::name() const
{
    return std::string("sigma=") + (sigma > 0 ? "+1" : "-1") + ",loc="
           + (loc_sign == LocSign::alpha ? "alpha" : "beta");
}

std::array<SignConvention, 4> SignConvention::all()
{
    return {SignConvention(1, LocSign::alpha), SignConvention(1, LocSign::beta),
            SignConvention(-1, LocSign::alpha), SignConvention(-1, LocSign::beta)};
}

std::string cutoff_name(Cutoff c)
{
    switch (c) {
    case Cutoff::psi:
        return "psi";
    case Cutoff::psi_tilde:
        return "psit";
    case Cutoff::psi2:
        return "psi2";
    }
    return "?";
}

JetIndex JetIndex::of(Cutoff base, int dim)
{
    return {base, MultiIndex::zero(dim), MultiIndex::zero(dim), 0};
}

// ---------------------------------------------------------------------------
// JetMonomial / NormalWord

JetMonomial::JetMonomial(std::vector<JetIndex> factors) : f_(std::move(factors))
{
    std::sort(f_.begin(), f_.end());
}

int JetMonomial::weight() const
{
    int w = 0;
    for (const auto &j : f_) {
        w += j.weight();
    }
    return w;
}

Scalar JetMonomial::factorial_weight() const
{
    Scalar r = 1;
    for (const auto &j : f_) {
        r *= j.a.factorial() * j.b.factorial();
    }
    return r;
}

JetMonomial JetMonomial::operator*(const JetMonomial &o) const
{
    std::vector<JetIndex> all;
    all.reserve(f_.size() + o.f_.size());
    std::merge(f_.begin(), f_.end(), o.f_.begin(), o.f_.end(), std::back_inserter(all));
    JetMonomial r;
    r.f_ = std::move(all);
    return r;
}

JetMonomial JetMonomial::replaced(std::size_t i, const JetIndex &j) const
{
    auto v = f_;
    v[i] = j;
    return JetMonomial(std::move(v));
}

NormalWord NormalWord::empty(int dim)
{
    return {MultiIndex::zero(dim), MultiIndex::zero(dim), 0};
}

NormalWord NormalWord::of(const Generator &g, int dim)
{
    g.validate(dim);
    auto w = empty(dim);
    switch (g.kind) {
    case GenKind::L:
        w.l = w.l.plus_unit(g.index);
        break;
    case GenKind::Lbar:
        w.lbar = w.lbar.plus_unit(g.index);
        break;
    case GenKind::T:
        w.t = 1;
        break;
    }
    return w;
}

// ---------------------------------------------------------------------------
// OperatorExpr

void OperatorExpr::add(const Scalar &c, const JetMonomial &jets, const NormalWord &word)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(TermKey{word, jets}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

OperatorExpr &OperatorExpr::operator+=(const OperatorExpr &o)
{
    for (const auto &[k, c] : o.terms_) {
        add(c, k.jets, k.word);
    }
    return *this;
}

OperatorExpr &OperatorExpr::operator-=(const OperatorExpr &o)
{
    for (const auto &[k, c] : o.terms_) {
        add(-c, k.jets, k.word);
    }
    return *this;
}

OperatorExpr &OperatorExpr::operator*=(const Scalar &s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[k, c] : terms_) {
        c *= s;
    }
    return *this;
}

OperatorExpr OperatorExpr::operator-() const
{
    auto r = *this;
    r *= -1;
    return r;
}

Scalar OperatorExpr::coefficient(const JetMonomial &jets, const NormalWord &word) const
{
    auto it = terms_.find(TermKey{word, jets});
    return it == terms_.end() ? Scalar(0) : it->second;
}

std::vector<Term> OperatorExpr::terms() const
{
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &[k, c] : terms_) {
        out.push_back({c, k.jets, k.word});
    }
    return out;
}

OperatorExpr identity_op(int dim)
{
    return word_op(NormalWord::empty(dim));
}

OperatorExpr generator_op(const Generator &g, int dim)
{
    return word_op(NormalWord::of(g, dim));
}

OperatorExpr word_op(const NormalWord &w, const Scalar &c)
{
    OperatorExpr e;
    e.add(c, JetMonomial{}, w);
    return e;
}

OperatorExpr multiplication_op(const JetIndex &j, const Scalar &c)
{
    return jet_word_op(j, NormalWord::empty(j.a.dim()), c);
}

OperatorExpr jet_word_op(const JetIndex &j, const NormalWord &w, const Scalar &c)
{
    OperatorExpr e;
    e.add(c, JetMonomial::single(j), w);
    return e;
}

// ---------------------------------------------------------------------------
// Rewriting

JetCombination jet_apply(const Generator &g, const JetIndex &j, const SignConvention &conv)
{
    g.validate(j.a.dim());
    JetCombination out;
    switch (g.kind) {
    case GenKind::L:
        out.emplace_back(1, JetIndex{j.base, j.a.plus_unit(g.index), j.b, j.m});
        break;
    case GenKind::T:
        out.emplace_back(1, JetIndex{j.base, j.a, j.b, j.m + 1});
        break;
    case GenKind::Lbar: {
        // Lbar_k L^a = L^a Lbar_k + sigma a_k L^{a-e_k} T
        out.emplace_back(1, JetIndex{j.base, j.a, j.b.plus_unit(g.index), j.m});
        const int ak = j.a[g.index];
        if (ak > 0) {
            out.emplace_back(conv.sigma * ak, JetIndex{j.base, j.a.minus_unit(g.index), j.b, j.m + 1});
        }
        break;
    }
    }
    return out;
}

namespace {

void add_generator_word(OperatorExpr &out, const Generator &g, const Scalar &c, const JetMonomial &jets,
                        const NormalWord &w, const SignConvention &conv)
{
    switch (g.kind) {
    case GenKind::L:
        out.add(c, jets, {w.l.plus_unit(g.index), w.lbar, w.t});
        break;
    case GenKind::T:
        out.add(c, jets, {w.l, w.lbar, w.t + 1});
        break;
    case GenKind::Lbar: {
        out.add(c, jets, {w.l, w.lbar.plus_unit(g.index), w.t});
        const int lk = w.l[g.index];
        if (lk > 0) {
            out.add(c * (conv.sigma * lk), jets, {w.l.minus_unit(g.index), w.lbar, w.t + 1});
        }
        break;
    }
    }
}

} // namespace

OperatorExpr left_multiply(const Generator &g, const OperatorExpr &a, const SignConvention &conv)
{
    OperatorExpr out;
    for (const auto &[key, c] : a) {
        g.validate(key.word.l.dim());
        // Leibniz: g acting on the coefficient functions.
        const auto &factors = key.jets.factors();
        for (std::size_t i = 0; i < factors.size(); ++i) {
            for (const auto &[k, jet] : jet_apply(g, factors[i], conv)) {
                out.add(c * k, key.jets.replaced(i, jet), key.word);
            }
        }
        add_generator_word(out, g, c, key.jets, key.word, conv);
    }
    return out;
}

namespace {

// Letters of a normal word, leftmost first.
std::vector<Generator> letters(const NormalWord &w)
{
    std::vector<Generator> out;
    for (int j = 0; j < w.l.dim(); ++j) {
        for (int x = 0; x < w.l[j]; ++x) {
            out.push_back(Generator::L(j));
        }
    }
    for (int j = 0; j < w.lbar.dim(); ++j) {
        for (int x = 0; x < w.lbar[j]; ++x) {
            out.push_back(Generator::Lbar(j));
        }
    }
    for (int x = 0; x < w.t; ++x) {
        out.push_back(Generator::T());
    }
    return out;
}

void check_same_dim(const NormalWord &a, const NormalWord &b)
{
    if (a.l.dim() != b.l.dim()) {
        throw std::invalid_argument("heis: operands live in algebras of different dimension");
    }
}

} // namespace

OperatorExpr normal_order_product(const Term &t1, const Term &t2, const SignConvention &conv)
{
    check_same_dim(t1.word, t2.word);
    OperatorExpr acc(Term{t2.coeff, t2.jets, t2.word});
    const auto ls = letters(t1.word);
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        acc = left_multiply(*it, acc, conv);
    }
    OperatorExpr out;
    for (const auto &[key, c] : acc) {
        out.add(c * t1.coeff, t1.jets * key.jets, key.word);
    }
    return out;
}

OperatorExpr multiply(const OperatorExpr &a, const OperatorExpr &b, const SignConvention &conv)
{
    OperatorExpr out;
    for (const auto &[ka, ca] : a) {
        for (const auto &[kb, cb] : b) {
            out += normal_order_product({ca, ka.jets, ka.word}, {cb, kb.jets, kb.word}, conv);
        }
    }
    return out;
}

OperatorExpr commutator(const OperatorExpr &a, const OperatorExpr &b, const SignConvention &conv)
{
    return multiply(a, b, conv) - multiply(b, a, conv);
}

namespace {

JetCombination apply_all(const Generator &g, const JetCombination &in, const SignConvention &conv)
{
    std::map<JetIndex, Scalar> acc;
    for (const auto &[c, j] : in) {
        for (const auto &[k, jj] : jet_apply(g, j, conv)) {
            acc[jj] += c * k;
        }
    }
    JetCombination out;
    for (auto &[j, c] : acc) {
        if (c != 0) {
            out.emplace_back(c, j);
        }
    }
    return out;
}

} // namespace

JetCombination conjugate_jet(const JetIndex &j, const SignConvention &conv)
{
    const int dim = j.a.dim();
    // conj(L^a Lbar^b T^m psi) = Lbar^a L^b (-T)^m psi; apply right to left.
    JetCombination cur{{Scalar(j.m % 2 == 0 ? 1 : -1), JetIndex{j.base, MultiIndex::zero(dim), MultiIndex::zero(dim), j.m}}};
    for (int k = 0; k < dim; ++k) {
        for (int x = 0; x < j.b[k]; ++x) {
            cur = apply_all(Generator::L(k), cur, conv);
        }
    }
    for (int k = 0; k < dim; ++k) {
        for (int x = 0; x < j.a[k]; ++x) {
            cur = apply_all(Generator::Lbar(k), cur, conv);
        }
    }
    return cur;
}

OperatorExpr formal_adjoint(const OperatorExpr &a, const SignConvention &conv)
{
    OperatorExpr out;
    for (const auto &[key, c] : a) {
        const auto &w = key.word;
        const int dim = w.l.dim();
        // (L^l Lbar^lb T^t)* = (-1)^{|l|+|lb|} L^lb Lbar^l T^t
        const int sign = (w.l.total() + w.lbar.total()) % 2 == 0 ? 1 : -1;
        OperatorExpr word_adj = word_op({w.lbar, w.l, w.t}, c * sign);
        OperatorExpr conj = identity_op(dim);
        for (const auto &f : key.jets.factors()) {
            OperatorExpr cf;
            for (const auto &[k, jj] : conjugate_jet(f, conv)) {
                cf += multiplication_op(jj, k);
            }
            conj = multiply(conj, cf, conv);
        }
        out += multiply(word_adj, conj, conv);
    }
    return out;
}

OperatorExpr kohn_laplacian(int dim, const SignConvention &conv)
{
    check_dimension(dim);
    OperatorExpr box;
    for (int j = 0; j < dim; ++j) {
        const auto lbar = generator_op(Generator::Lbar(j), dim);
        box += multiply(formal_adjoint(lbar, conv), lbar, conv);
    }
    return box;
}

// ---------------------------------------------------------------------------
// Rendering

std::string to_string(const MultiIndex &m)
{
    std::ostringstream os;
    os << '(';
    for (int j = 0; j < m.dim(); ++j) {
        if (j) {
            os << ',';
        }
        os << m[j];
    }
    os << ')';
    return os.str();
}

std::string to_string(const JetIndex &j)
{
    return cutoff_name(j.base) + "{L" + to_string(j.a) + "Lb" + to_string(j.b) + "T" + std::to_string(j.m) + "}";
}

std::string to_string(const JetMonomial &j)
{
    if (j.empty()) {
        return "1";
    }
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
            s += "*";
        }
        s += to_string(j.factors()[i]);
    }
    return s;
}

std::string to_string(const NormalWord &w)
{
    if (w.is_empty()) {
        return "1";
    }
    return "L" + to_string(w.l) + "Lb" + to_string(w.lbar) + "T" + std::to_string(w.t);
}

std::string to_string(const Term &t)
{
    std::string c = t.coeff.get_str();
    if (t.coeff > 0) {
        c = "+" + c;
    }
    return c + " " + to_string(t.jets) + " " + to_string(t.word);
}

std::string to_string(const OperatorExpr &e)
{
    if (e.is_zero()) {
        return "0";
    }
    std::string s;
    for (const auto &t : e.terms()) {
        if (!s.empty()) {
            s += "; ";
        }
        s += to_string(t);
    }
    return s;
}

} // namespace heis
