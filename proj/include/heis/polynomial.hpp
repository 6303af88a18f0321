#ifndef HEIS_POLYNOMIAL_HPP
#define HEIS_POLYNOMIAL_HPP

#include <vector>

#include "heis/algebra.hpp"

namespace heis {

// Dense univariate polynomial with exact rational coefficients, lowest degree
// first.  The zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs);
    static Polynomial constant(const Scalar &c);
    static Polynomial monomial(int degree, const Scalar &c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Scalar> &coeffs() const { return c_; }
    const Scalar &leading() const { return c_.back(); }

    Scalar operator()(const Scalar &x) const;
    double eval(double x) const;

    Polynomial derivative() const;
    Polynomial antiderivative() const; // zero constant term
    // q(x) = p(x + h)
    Polynomial shifted(const Scalar &h) const;
    // q(t) = p(u + s t)
    Polynomial affine(const Scalar &u, const Scalar &s) const;

    Polynomial operator+(const Polynomial &o) const;
    Polynomial operator-(const Polynomial &o) const;
    Polynomial operator*(const Polynomial &o) const;
    Polynomial operator*(const Scalar &s) const;
    Polynomial operator-() const { return *this * Scalar(-1); }

    bool operator==(const Polynomial &) const = default;

private:
    void trim();
    std::vector<Scalar> c_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

DivMod divmod(const Polynomial &a, const Polynomial &b);
Polynomial gcd(Polynomial a, Polynomial b); // monic

// Sturm chain of a square-free polynomial.
std::vector<Polynomial> sturm_chain(const Polynomial &p);
int sign_variations(const std::vector<Polynomial> &chain, const Scalar &x);

// Disjoint intervals, each holding exactly one root of the square-free p in
// (lo, hi), narrowed below the given width.  p must not vanish at lo or hi.
struct RootInterval {
    Scalar lo;
    Scalar hi;
};
std::vector<RootInterval> isolate_roots(const Polynomial &p, const Scalar &lo, const Scalar &hi, const Scalar &width);

// A quantity known to lie in [lower, upper].
struct Enclosure {
    Scalar lower;
    Scalar upper;
};

// Range of p over [lo, hi] from the Taylor form at the midpoint:
// p(m) -+ sum_{i>=1} |p^{(i)}(m)| / i! * rad^i.
Enclosure taylor_range(const Polynomial &p, const Scalar &lo, const Scalar &hi);

enum class SupMethod { exact_roots, dyadic };

// Enclosure of sup |p| over [lo, hi].  exact_roots isolates the critical
// points to relative width 2^-bits; dyadic splits [lo, hi] into 2^bits cells.
Enclosure sup_abs(const Polynomial &p, const Scalar &lo, const Scalar &hi, SupMethod method = SupMethod::exact_roots,
                  int bits = 24);

// Enclosure of min p over [lo, hi].
Enclosure min_value(const Polynomial &p, const Scalar &lo, const Scalar &hi, int bits = 24);

} // namespace heis

#endif
