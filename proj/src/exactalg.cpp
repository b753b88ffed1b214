#include "treehom/exactalg.hpp"

#include "treehom/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace treehom {

namespace {

RationalPolynomial poly_rem(RationalPolynomial a, const RationalPolynomial& b) {
    if (degree(b) < 0) throw division_error("polynomial division by zero");
    while (degree(a) >= degree(b)) {
        Rational factor = a.coeffs.back() / b.coeffs.back();
        int shift = degree(a) - degree(b);
        for (int i = 0; i <= degree(b); ++i)
            a.coeffs[i + shift] -= factor * b.coeffs[i];
        a = make_poly(std::move(a.coeffs));
    }
    return a;
}

RationalPolynomial poly_quot(RationalPolynomial a, const RationalPolynomial& b) {
    if (degree(b) < 0) throw division_error("polynomial division by zero");
    if (degree(a) < degree(b)) return {};
    std::vector<Rational> q(degree(a) - degree(b) + 1, Rational(0));
    while (degree(a) >= degree(b)) {
        Rational factor = a.coeffs.back() / b.coeffs.back();
        int shift = degree(a) - degree(b);
        q[shift] = factor;
        for (int i = 0; i <= degree(b); ++i)
            a.coeffs[i + shift] -= factor * b.coeffs[i];
        a = make_poly(std::move(a.coeffs));
    }
    return make_poly(std::move(q));
}

// Sturm chain of a squarefree polynomial, with the zero skipping variation
// count: for lo <= hi the difference sigma(lo) - sigma(hi) is the number of
// distinct real roots in (lo, hi].
struct SturmChain {
    std::vector<RationalPolynomial> seq;

    explicit SturmChain(const RationalPolynomial& squarefree) {
        seq.push_back(squarefree);
        RationalPolynomial d = derivative(squarefree);
        if (degree(d) >= 0) seq.push_back(std::move(d));
        while (degree(seq.back()) > 0) {
            RationalPolynomial r = poly_rem(seq[seq.size() - 2], seq.back());
            if (degree(r) < 0) break;
            for (auto& c : r.coeffs) c = -c;
            seq.push_back(std::move(r));
        }
    }

    long variations(const Rational& t) const {
        long count = 0;
        int prev = 0;
        for (const auto& p : seq) {
            int s = sgn(poly_eval(p, t));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    long count(const Rational& lo, const Rational& hi) const {
        return variations(lo) - variations(hi);
    }
};

Rational cauchy_bound(const RationalPolynomial& p) {
    Rational best = 0;
    const Rational& lead = p.coeffs.back();
    for (std::size_t i = 0; i + 1 < p.coeffs.size(); ++i) {
        Rational r = rational_abs(p.coeffs[i] / lead);
        if (r > best) best = r;
    }
    return best + 1;
}

// A bisection point in (lo, hi) that is not a root of g, so every cell
// boundary downstream is sign definite.
Rational nonroot_split(const RationalPolynomial& g, const Rational& lo,
                       const Rational& hi) {
    Rational span = hi - lo;
    Rational mid = lo + span / 2;
    if (sgn(poly_eval(g, mid)) != 0) return mid;
    Rational delta = span / 4;
    for (int tries = 0; tries < 64; ++tries) {
        for (int side : {1, -1}) {
            Rational s = mid + side * delta;
            if (s > lo && s < hi && sgn(poly_eval(g, s)) != 0) return s;
        }
        delta /= 2;
    }
    throw internal_error("no root free bisection point found");
}

} // namespace

RationalPolynomial make_poly(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && sgn(coeffs.back()) == 0) coeffs.pop_back();
    return RationalPolynomial{std::move(coeffs)};
}

int degree(const RationalPolynomial& p) {
    return static_cast<int>(p.coeffs.size()) - 1;
}

Rational poly_eval(const RationalPolynomial& p, const Rational& t) {
    Rational acc = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

RationalPolynomial derivative(const RationalPolynomial& p) {
    std::vector<Rational> out;
    for (std::size_t i = 1; i < p.coeffs.size(); ++i)
        out.push_back(Rational(static_cast<long>(i)) * p.coeffs[i]);
    return make_poly(std::move(out));
}

RationalPolynomial poly_gcd(RationalPolynomial a, RationalPolynomial b) {
    while (degree(b) >= 0) {
        RationalPolynomial r = poly_rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (degree(a) >= 0) {
        Rational lead = a.coeffs.back();
        for (auto& c : a.coeffs) c /= lead;
    }
    return a;
}

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
    if (degree(p) <= 0) return p;
    return poly_quot(p, poly_gcd(p, derivative(p)));
}

RationalPolynomial negate_variable(const RationalPolynomial& p) {
    RationalPolynomial out = p;
    for (std::size_t i = 1; i < out.coeffs.size(); i += 2) out.coeffs[i] = -out.coeffs[i];
    return out;
}

RationalInterval make_interval(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw invalid_argument_error("interval endpoints are out of order");
    return RationalInterval{lo, hi};
}

RationalInterval point_interval(const Rational& v) { return RationalInterval{v, v}; }

bool iv_contains(const RationalInterval& a, const Rational& q) {
    return a.lo <= q && q <= a.hi;
}

bool iv_disjoint(const RationalInterval& a, const RationalInterval& b) {
    return a.hi < b.lo || b.hi < a.lo;
}

Rational iv_width(const RationalInterval& a) { return a.hi - a.lo; }

RationalInterval iv_add(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval iv_sub(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval iv_mul(const RationalInterval& a, const RationalInterval& b) {
    Rational p1 = a.lo * b.lo;
    Rational p2 = a.lo * b.hi;
    Rational p3 = a.hi * b.lo;
    Rational p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

RationalInterval iv_div(const RationalInterval& a, const RationalInterval& b) {
    if (sgn(b.lo) <= 0 && sgn(b.hi) >= 0)
        throw division_error("interval divisor touches zero");
    return iv_mul(a, {Rational(1) / b.hi, Rational(1) / b.lo});
}

RationalInterval iv_neg(const RationalInterval& a) { return {-a.hi, -a.lo}; }

RationalInterval iv_scale(const Rational& c, const RationalInterval& a) {
    if (sgn(c) >= 0) return {c * a.lo, c * a.hi};
    return {c * a.hi, c * a.lo};
}

RationalInterval poly_eval_interval(const RationalPolynomial& p,
                                    const RationalInterval& x) {
    RationalInterval acc = point_interval(Rational(0));
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = iv_add(iv_mul(acc, x), point_interval(*it));
    return acc;
}

RationalPolynomial char_poly(const IntMatrix& m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw invalid_argument_error("matrix is not square");
    if (n == 0) return make_poly({Rational(1)});
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    std::vector<Rational> coeffs(n + 1, Rational(0));
    coeffs[n] = 1;
    std::vector<std::vector<Rational>> work = a;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            const Rational& shift = coeffs[n - k + 1];
            for (std::size_t i = 0; i < n; ++i) work[i][i] += shift;
            std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l) {
                    if (sgn(a[i][l]) == 0) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        next[i][j] += a[i][l] * work[l][j];
                }
            work = std::move(next);
        }
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += work[i][i];
        coeffs[n - k] = -trace / Rational(static_cast<long>(k));
    }
    return make_poly(std::move(coeffs));
}

long sturm_root_count(const RationalPolynomial& p, const RationalInterval& iv) {
    if (degree(p) < 0)
        throw invalid_argument_error("the zero polynomial has no root count");
    if (iv.lo > iv.hi) throw invalid_argument_error("interval endpoints are out of order");
    RationalPolynomial g = squarefree_part(p);
    if (degree(g) <= 0) return 0;
    return SturmChain(g).count(iv.lo, iv.hi);
}

std::vector<RationalInterval> isolate_real_roots(const RationalPolynomial& p,
                                                 const Rational& width) {
    if (degree(p) < 0)
        throw invalid_argument_error("cannot isolate roots of the zero polynomial");
    if (sgn(width) <= 0) throw invalid_argument_error("width must be positive");
    RationalPolynomial g = squarefree_part(p);
    if (degree(g) <= 0) return {};
    SturmChain chain(g);
    Rational bound = cauchy_bound(g);
    // Cells keep one eighth of the requested width in hand so downstream
    // containment checks are not decided by a root sitting at a cell edge.
    Rational target = width / 8;
    std::vector<RationalInterval> found;
    struct Cell {
        Rational lo, hi;
        long vlo, vhi;
    };
    std::vector<Cell> stack;
    stack.push_back({-bound, bound, chain.variations(-bound), chain.variations(bound)});
    while (!stack.empty()) {
        Cell c = std::move(stack.back());
        stack.pop_back();
        long roots = c.vlo - c.vhi;
        if (roots == 0) continue;
        if (roots == 1 && c.hi - c.lo <= target) {
            found.push_back({c.lo, c.hi});
            continue;
        }
        Rational s = nonroot_split(g, c.lo, c.hi);
        long vs = chain.variations(s);
        // right first, so the left cell is processed first and results come
        // out sorted
        stack.push_back({s, c.hi, vs, c.vhi});
        stack.push_back({c.lo, s, c.vlo, vs});
    }
    for (std::size_t i = 0; i + 1 < found.size(); ++i) {
        while (found[i].hi == found[i + 1].lo) {
            Rational s = nonroot_split(g, found[i].lo, found[i].hi);
            if (chain.count(found[i].lo, s) == 1)
                found[i].hi = s;
            else
                found[i].lo = s;
        }
    }
    return found;
}

std::vector<RationalInterval> vandermonde_coefficients(
    const std::vector<RationalInterval>& lambdas, const std::vector<BigInt>& values) {
    std::size_t k = lambdas.size();
    if (k == 0 || values.size() != k)
        throw invalid_argument_error("need as many power sums as eigenvalue enclosures");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (!iv_disjoint(lambdas[i], lambdas[j]))
                throw distinctness_error("eigenvalue enclosures " + std::to_string(i) +
                                         " and " + std::to_string(j) + " overlap");
    std::vector<RationalInterval> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<RationalInterval> elem(k, point_interval(Rational(0)));
        elem[0] = point_interval(Rational(1));
        std::size_t used = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            ++used;
            for (std::size_t d = used; d >= 1; --d)
                elem[d] = iv_add(elem[d], iv_mul(elem[d - 1], lambdas[j]));
        }
        RationalInterval numerator = point_interval(Rational(0));
        for (std::size_t n = 0; n < k; ++n) {
            Rational v = Rational(values[n]);
            if ((k - 1 - n) % 2 == 1) v = -v;
            numerator = iv_add(numerator, iv_scale(v, elem[k - 1 - n]));
        }
        RationalInterval denominator = point_interval(Rational(1));
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) denominator = iv_mul(denominator, iv_sub(lambdas[i], lambdas[j]));
        out.push_back(iv_div(numerator, denominator));
    }
    return out;
}

VietaTriple vieta_reduce(const RationalPolynomial& p, const RationalInterval& lambda1) {
    if (degree(p) != 4 || p.coeffs[4] != 1)
        throw precondition_error("expected a monic quartic");
    if (iv_width(lambda1) == 0) {
        if (sgn(poly_eval(p, lambda1.lo)) != 0)
            throw precondition_error("the pinned point is not a root");
    } else if (sgn(poly_eval(p, lambda1.lo)) * sgn(poly_eval(p, lambda1.hi)) > 0) {
        throw precondition_error("the pinned interval shows no sign change");
    }
    RationalInterval a0 = point_interval(p.coeffs[0]);
    RationalInterval a1 = point_interval(p.coeffs[1]);
    VietaTriple out;
    out.product = iv_div(a0, lambda1);
    out.pair_sum = iv_sub(iv_neg(iv_div(a1, lambda1)),
                          iv_div(a0, iv_mul(lambda1, lambda1)));
    out.sum = iv_sub(point_interval(-p.coeffs[3]), lambda1);
    return out;
}

Rational discriminant(const RationalPolynomial& cubic) {
    if (degree(cubic) != 3)
        throw invalid_argument_error("discriminant is implemented for cubics");
    const Rational& d = cubic.coeffs[0];
    const Rational& c = cubic.coeffs[1];
    const Rational& b = cubic.coeffs[2];
    const Rational& a = cubic.coeffs[3];
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c -
           4 * a * c * c * c - 27 * a * a * d * d;
}

} // namespace treehom
