#include "heis/polynomial.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace heis {

Polynomial::Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs))
{
    trim();
}

Polynomial Polynomial::constant(const Scalar &c)
{
    return Polynomial({c});
}

Polynomial Polynomial::monomial(int degree, const Scalar &c)
{
    std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar(0));
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim()
{
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

Scalar Polynomial::operator()(const Scalar &x) const
{
    Scalar r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * x + *it;
    }
    return r;
}

double Polynomial::eval(double x) const
{
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * x + it->get_d();
    }
    return r;
}

Polynomial Polynomial::derivative() const
{
    if (c_.size() <= 1) {
        return {};
    }
    std::vector<Scalar> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        v[i - 1] = c_[i] * static_cast<long>(i);
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::antiderivative() const
{
    if (c_.empty()) {
        return {};
    }
    std::vector<Scalar> v(c_.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        v[i + 1] = c_[i] / static_cast<long>(i + 1);
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::shifted(const Scalar &h) const
{
    return affine(h, 1);
}

Polynomial Polynomial::affine(const Scalar &u, const Scalar &s) const
{
    // Horner in the polynomial ring: r = r * (u + s t) + c_i
    const Polynomial lin({u, s});
    Polynomial r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * lin + constant(*it);
    }
    return r;
}

Polynomial Polynomial::operator+(const Polynomial &o) const
{
    std::vector<Scalar> v(std::max(c_.size(), o.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        v[i] += c_[i];
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        v[i] += o.c_[i];
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial &o) const
{
    return *this + (-o);
}

Polynomial Polynomial::operator*(const Polynomial &o) const
{
    if (is_zero() || o.is_zero()) {
        return {};
    }
    std::vector<Scalar> v(c_.size() + o.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            v[i + j] += c_[i] * o.c_[j];
        }
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Scalar &s) const
{
    auto v = c_;
    for (auto &x : v) {
        x *= s;
    }
    return Polynomial(std::move(v));
}

DivMod divmod(const Polynomial &a, const Polynomial &b)
{
    if (b.is_zero()) {
        throw std::domain_error("heis: polynomial division by zero");
    }
    std::vector<Scalar> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) {
        return {{}, a};
    }
    std::vector<Scalar> quo(static_cast<std::size_t>(a.degree() - db) + 1, Scalar(0));
    for (int i = a.degree(); i >= db; --i) {
        const Scalar q = rem[static_cast<std::size_t>(i)] / b.leading();
        quo[static_cast<std::size_t>(i - db)] = q;
        if (q == 0) {
            continue;
        }
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(i - db + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) {
        return a;
    }
    return a * (Scalar(1) / a.leading());
}

std::vector<Polynomial> sturm_chain(const Polynomial &p)
{
    std::vector<Polynomial> chain;
    if (p.is_zero()) {
        return chain;
    }
    chain.push_back(p);
    auto d = p.derivative();
    while (!d.is_zero()) {
        // Positive rescaling keeps the signs and the coefficients small.
        d = d * (Scalar(1) / abs(d.leading()));
        chain.push_back(d);
        const auto &prev = chain[chain.size() - 2];
        d = -divmod(prev, chain.back()).remainder;
    }
    return chain;
}

int sign_variations(const std::vector<Polynomial> &chain, const Scalar &x)
{
    int count = 0;
    int last = 0;
    for (const auto &q : chain) {
        const int s = sgn(q(x));
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++count;
        }
        last = s;
    }
    return count;
}

std::vector<RootInterval> isolate_roots(const Polynomial &p, const Scalar &lo, const Scalar &hi, const Scalar &width)
{
    std::vector<RootInterval> out;
    if (p.degree() < 1) {
        return out;
    }
    if (p(lo) == 0 || p(hi) == 0) {
        throw std::invalid_argument("heis: root isolation endpoints must not be roots");
    }
    const auto chain = sturm_chain(p);
    struct Cell {
        Scalar a, b;
        int va, vb;
    };
    std::vector<Cell> stack{{lo, hi, sign_variations(chain, lo), sign_variations(chain, hi)}};
    // Split points tried in order; p has finitely many roots so one of them
    // is never a root.
    static const std::array<Scalar, 5> fractions{Scalar(1, 2), Scalar(7, 16), Scalar(9, 16), Scalar(3, 8),
                                                 Scalar(5, 8)};
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        const int n = c.va - c.vb;
        if (n <= 0) {
            continue;
        }
        if (n == 1 && c.b - c.a <= width) {
            out.push_back({c.a, c.b});
            continue;
        }
        Scalar m;
        bool found = false;
        for (const auto &f : fractions) {
            m = c.a + (c.b - c.a) * f;
            if (p(m) != 0) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::logic_error("heis: no admissible split point");
        }
        const int vm = sign_variations(chain, m);
        stack.push_back({m, c.b, vm, c.vb});
        stack.push_back({c.a, m, c.va, vm});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval &x, const RootInterval &y) { return x.lo < y.lo; });
    return out;
}

Enclosure taylor_range(const Polynomial &p, const Scalar &lo, const Scalar &hi)
{
    const Scalar mid = (lo + hi) / 2;
    const Scalar rad = (hi - lo) / 2;
    const auto q = p.shifted(mid);
    if (q.is_zero()) {
        return {0, 0};
    }
    Scalar spread = 0;
    Scalar power = 1;
    for (std::size_t i = 1; i < q.coeffs().size(); ++i) {
        power *= rad;
        spread += abs(q.coeffs()[i]) * power;
    }
    return {q.coeffs()[0] - spread, q.coeffs()[0] + spread};
}

namespace {

Scalar pow2_neg(int bits)
{
    mpz_class den = 1;
    den <<= bits;
    return Scalar(mpz_class(1), den);
}

// Critical points of q on (0, 1), with roots at the endpoints divided out.
std::vector<RootInterval> critical_cells(const Polynomial &q, int bits)
{
    auto d = q.derivative();
    if (d.degree() < 1) {
        return {};
    }
    auto g = gcd(d, d.derivative());
    auto r = g.degree() > 0 ? divmod(d, g).quotient : d;
    const Polynomial t({0, 1});
    const Polynomial t_minus_1({-1, 1});
    while (r.degree() >= 1 && r(0) == 0) {
        r = divmod(r, t).quotient;
    }
    while (r.degree() >= 1 && r(1) == 0) {
        r = divmod(r, t_minus_1).quotient;
    }
    return isolate_roots(r, 0, 1, pow2_neg(bits));
}

} // namespace

Enclosure sup_abs(const Polynomial &p, const Scalar &lo, const Scalar &hi, SupMethod method, int bits)
{
    if (hi < lo) {
        throw std::invalid_argument("heis: empty interval");
    }
    if (p.is_zero()) {
        return {0, 0};
    }
    if (hi == lo) {
        const Scalar v = abs(p(lo));
        return {v, v};
    }
    // Work on t in [0, 1].
    const auto q = p.affine(lo, hi - lo);
    Scalar lower = std::max(Scalar(abs(q(0))), Scalar(abs(q(1))));
    Scalar upper = lower;
    auto absorb = [&](const Scalar &a, const Scalar &b) {
        const auto range = taylor_range(q, a, b);
        upper = std::max({upper, Scalar(abs(range.lower)), Scalar(abs(range.upper))});
        lower = std::max(lower, Scalar(abs(q((a + b) / 2))));
    };
    if (method == SupMethod::exact_roots) {
        for (const auto &cell : critical_cells(q, bits)) {
            absorb(cell.lo, cell.hi);
        }
    } else {
        mpz_class cells = 1;
        cells <<= bits;
        const Scalar step(mpz_class(1), cells);
        for (mpz_class i = 0; i < cells; ++i) {
            const Scalar a = step * i;
            absorb(a, a + step);
        }
    }
    return {lower, upper};
}

Enclosure min_value(const Polynomial &p, const Scalar &lo, const Scalar &hi, int bits)
{
    if (hi < lo) {
        throw std::invalid_argument("heis: empty interval");
    }
    if (p.degree() < 1 || hi == lo) {
        const Scalar v = p(lo);
        return {v, v};
    }
    const auto q = p.affine(lo, hi - lo);
    Scalar attained = std::min(q(0), q(1));
    Scalar lower = attained;
    for (const auto &cell : critical_cells(q, bits)) {
        const auto range = taylor_range(q, cell.lo, cell.hi);
        lower = std::min(lower, range.lower);
        attained = std::min(attained, q((cell.lo + cell.hi) / 2));
    }
    return {lower, attained};
}

} // namespace heis
