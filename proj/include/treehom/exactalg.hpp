#pragma once

#include "treehom/matrix.hpp"
#include "treehom/rational.hpp"

#include <vector>

namespace treehom {

// Coefficients low degree first. The zero polynomial has no coefficients;
// otherwise the leading coefficient is nonzero.
struct RationalPolynomial {
    std::vector<Rational> coeffs;
};

RationalPolynomial make_poly(std::vector<Rational> coeffs);
int degree(const RationalPolynomial& p); // -1 for the zero polynomial
Rational poly_eval(const RationalPolynomial& p, const Rational& t);
RationalPolynomial derivative(const RationalPolynomial& p);
RationalPolynomial poly_gcd(RationalPolynomial a, RationalPolynomial b); // monic
RationalPolynomial squarefree_part(const RationalPolynomial& p);
RationalPolynomial negate_variable(const RationalPolynomial& p); // p(-t)

// Closed interval [lo, hi] with exact rational endpoints.
struct RationalInterval {
    Rational lo;
    Rational hi;
};

RationalInterval make_interval(const Rational& lo, const Rational& hi);
RationalInterval point_interval(const Rational& v);
bool iv_contains(const RationalInterval& a, const Rational& q);
bool iv_disjoint(const RationalInterval& a, const RationalInterval& b); // strictly
Rational iv_width(const RationalInterval& a);

// Exact endpoint arithmetic: the result contains every attainable value and
// nothing wider than the endpoint extrema require.
RationalInterval iv_add(const RationalInterval& a, const RationalInterval& b);
RationalInterval iv_sub(const RationalInterval& a, const RationalInterval& b);
RationalInterval iv_mul(const RationalInterval& a, const RationalInterval& b);
RationalInterval iv_div(const RationalInterval& a, const RationalInterval& b);
RationalInterval iv_neg(const RationalInterval& a);
RationalInterval iv_scale(const Rational& c, const RationalInterval& a);
RationalInterval poly_eval_interval(const RationalPolynomial& p, const RationalInterval& x);

// Monic characteristic polynomial det(tI - M) over exact rationals.
RationalPolynomial char_poly(const IntMatrix& m);

// Number of distinct real roots of p in (lo, hi]. The square part of p is
// removed internally before the sign variation count.
long sturm_root_count(const RationalPolynomial& p, const RationalInterval& iv);

// Pairwise disjoint intervals, sorted ascending, one simple root of the
// squarefree part strictly inside each, every real root covered, each
// interval of width at most `width` and with a sign change across it.
std::vector<RationalInterval> isolate_real_roots(const RationalPolynomial& p,
                                                 const Rational& width);

// Enclosures of the coefficients c solving sum_i c_i lambda_i^n = values[n]
// for n = 0..k-1, by the explicit inverse Vandermonde row formulas evaluated
// in interval arithmetic. Input intervals must be pairwise disjoint; results
// align with the input order.
std::vector<RationalInterval> vandermonde_coefficients(
    const std::vector<RationalInterval>& lambdas,
    const std::vector<BigInt>& values);

// Elementary symmetric data of the three remaining roots of a monic quartic
// once one simple real root is pinned down: their product a0/l, their pair
// sum -a1/l - a0/l^2, and their sum -a3 - l.
struct VietaTriple {
    RationalInterval product;
    RationalInterval pair_sum;
    RationalInterval sum;
};

VietaTriple vieta_reduce(const RationalPolynomial& p, const RationalInterval& lambda1);

// Exact discriminant of a degree 3 polynomial.
Rational discriminant(const RationalPolynomial& cubic);

} // namespace treehom
