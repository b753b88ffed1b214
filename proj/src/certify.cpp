#include "treehom/certify.hpp"

#include "treehom/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace treehom {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* const kPathLabel = "path_family";
const char* const kPendantLabel = "pendant_family";
const unsigned long kExponentCap = 1'000'000;

const BigInt& bound_grid() {
    static const BigInt grid = bigint_pow(10, 6);
    return grid;
}

Rational width_cap() { return make_rational(1, bigint_pow(10, 16)); }

Rational grid_down(const Rational& q) { return round_down(q, bound_grid()); }
Rational grid_up(const Rational& q) { return round_up(q, bound_grid()); }

Rational mag_hi(const RationalInterval& iv) {
    return std::max(rational_abs(iv.lo), rational_abs(iv.hi));
}

Rational mag_lo(const RationalInterval& iv) {
    if (sgn(iv.lo) <= 0 && sgn(iv.hi) >= 0) return Rational(0);
    return std::min(rational_abs(iv.lo), rational_abs(iv.hi));
}

std::vector<long> indices_for(ParityScope s) {
    switch (s) {
    case ParityScope::odd: return {1, 3};
    case ParityScope::even: return {0, 2};
    case ParityScope::all: return {0, 1, 2, 3};
    }
    throw internal_error("unreachable parity scope");
}

// Coefficient enclosures for the stored counts, shared verbatim between the
// producer and replay so containment checks compare identical arithmetic.
// Parity mode solves the 2x2 system in the squared eigenvalues; the odd
// member subsequence carries one extra eigenvalue factor that is divided
// back out.
std::vector<RationalInterval> recompute_coeffs(const std::string& mode, ParityScope scope,
                                               const std::vector<RationalInterval>& roots,
                                               const std::vector<BigInt>& counts) {
    if (mode == "dominant") return vandermonde_coefficients(roots, counts);
    RationalInterval s = iv_mul(roots[0], roots[0]);
    RationalInterval s2 = iv_mul(roots[1], roots[1]);
    auto tilde = vandermonde_coefficients({s, s2}, counts);
    if (scope == ParityScope::even) return tilde;
    return {iv_div(tilde[0], roots[0]), iv_div(tilde[1], roots[1])};
}

// Degree 3 sign witness for the dominant comparison. With the count
// differences d_n = a_n - b_n its value at the dominant eigenvalue equals
// (c1_a - c1_b) times a positive factor, so a certified sign settles the
// dominant coefficient comparison without touching the other eigenvalues.
RationalPolynomial dominant_cubic(const std::vector<BigInt>& counts_a,
                                  const std::vector<BigInt>& counts_b, long x, long y,
                                  long z) {
    BigInt d0 = counts_a[0] - counts_b[0];
    BigInt d1 = counts_a[1] - counts_b[1];
    BigInt d2 = counts_a[2] - counts_b[2];
    BigInt d3 = counts_a[3] - counts_b[3];
    BigInt xz = BigInt(x) * z;
    BigInt yz = BigInt(y) + z;
    return make_poly({Rational(-d1 * xz), Rational(-(d0 * xz + d1 * yz)),
                      Rational(d3 - d2), Rational(d2)});
}

// Least in-scope n with gap * lambda^n > tail * rest^n, all inputs already
// rounded onto a coarse grid so the powers stay small. Monotone because
// lambda > rest.
std::optional<unsigned long> least_threshold(const Rational& gap, const Rational& tail,
                                             const Rational& lambda_lo,
                                             const Rational& rest_hi, ParityScope scope) {
    if (sgn(gap) <= 0 || sgn(lambda_lo) <= 0 || lambda_lo <= rest_hi) return std::nullopt;
    unsigned long start = scope == ParityScope::odd ? 1 : 0;
    unsigned long stride = scope == ParityScope::all ? 1 : 2;
    auto holds = [&](unsigned long n) {
        return gap * rational_pow(lambda_lo, n) > tail * rational_pow(rest_hi, n);
    };
    if (holds(start)) return start;
    unsigned long max_m = (kExponentCap - start) / stride;
    unsigned long lo_m = 0;
    unsigned long hi_m = 0;
    bool found = false;
    for (unsigned long step = 1;; step *= 2) {
        unsigned long m = std::min(step, max_m);
        if (holds(start + m * stride)) {
            hi_m = m;
            found = true;
            break;
        }
        lo_m = m;
        if (m == max_m) break;
    }
    if (!found) return std::nullopt;
    while (hi_m - lo_m > 1) {
        unsigned long mid = lo_m + (hi_m - lo_m) / 2;
        if (holds(start + mid * stride))
            hi_m = mid;
        else
            lo_m = mid;
    }
    return start + hi_m * stride;
}

Rational monic_root_bound(const RationalPolynomial& f) {
    Rational m = 0;
    const Rational& lead = f.coeffs.back();
    for (std::size_t i = 0; i + 1 < f.coeffs.size(); ++i)
        m = std::max(m, rational_abs(f.coeffs[i] / lead));
    return m + 1;
}

bool is_canonical_seed(const SourceTree& seed) {
    return seed.vertex_count == 4 && seed.root == 0 &&
           seed.parent == std::vector<int>{-1, 0, 1, 2};
}

struct ThresholdInputs {
    Rational gap;
    Rational tail;
    Rational lambda_lo;
    Rational rest_hi;
};

ThresholdInputs threshold_inputs(const Certificate& cert,
                                 const std::vector<RationalInterval>& coeffs_a,
                                 const std::vector<RationalInterval>& coeffs_b) {
    ThresholdInputs in;
    in.gap = cert.bound_a_lower - cert.bound_b_upper;
    Rational tail = 0;
    for (std::size_t j = 1; j < coeffs_a.size(); ++j)
        tail += mag_hi(iv_sub(coeffs_a[j], coeffs_b[j]));
    in.tail = grid_up(tail);
    in.lambda_lo = grid_down(cert.roots[0].lo);
    Rational rest = 0;
    for (std::size_t j = 1; j < cert.roots.size(); ++j)
        rest = std::max(rest, mag_hi(cert.roots[j]));
    in.rest_hi = grid_up(rest);
    return in;
}

} // namespace

std::string to_string(ParityScope s) {
    switch (s) {
    case ParityScope::odd: return "odd";
    case ParityScope::even: return "even";
    case ParityScope::all: return "all";
    }
    throw internal_error("unreachable parity scope");
}

std::string to_string(Conclusion c) {
    return c == Conclusion::a_exceeds_b_eventually ? "a_exceeds_b_eventually"
                                                   : "inconclusive";
}

Certificate certify_parity(long x, long y, long z, ParityScope parity,
                           const Rational& width) {
    if (x < 1 || y < 1 || z < 1)
        throw invalid_argument_error("level multiplicities must be positive");
    if (parity == ParityScope::all)
        throw invalid_argument_error("parity certification needs scope odd or even");
    if (sgn(width) <= 0) throw invalid_argument_error("width must be positive");
    OrbitQuotient q = structural_orbits_T(x, y, z, false);
    RationalPolynomial f = char_poly(quotient_matrix(q));
    BigInt level_sum = BigInt(x) + y + z;
    BigInt level_prod = BigInt(x) * z;
    if (level_sum * level_sum <= 4 * level_prod)
        throw structure_error("the squared eigenvalues coincide; no two scale comparison");
    CountSequence ps = hom_sequence(path_family(), q, 0, 3);
    CountSequence es = hom_sequence(pendant_family(), q, 0, 3);
    std::vector<long> idx = indices_for(parity);
    std::vector<BigInt> u_path = {ps.values[idx[0]], ps.values[idx[1]]};
    std::vector<BigInt> u_pend = {es.values[idx[0]], es.values[idx[1]]};

    Certificate cert;
    cert.mode = "parity";
    cert.x = x;
    cert.y = y;
    cert.z = z;
    cert.looped = false;
    cert.scope = parity;
    cert.charpoly = f;
    cert.family_a_label = kPathLabel;
    cert.family_b_label = kPendantLabel;
    cert.family_a = path_family();
    cert.family_b = pendant_family();
    cert.count_indices = idx;
    cert.counts_a = u_path;
    cert.counts_b = u_pend;
    cert.root_names = {"lambda", "mu"};
    bool odd = parity == ParityScope::odd;
    cert.coeff_names = odd ? std::vector<std::string>{"c_odd", "d_odd"}
                           : std::vector<std::string>{"c_even", "d_even"};

    Rational w = width;
    const Rational cap = width_cap();
    while (true) {
        cert.width = w;
        cert.roots.clear();
        cert.coeffs_a.clear();
        cert.coeffs_b.clear();
        cert.bound_a_lower = 0;
        cert.bound_b_upper = 0;
        auto enc = isolate_real_roots(f, w);
        if (enc.size() != 4)
            throw internal_error("expected four real eigenvalues for the unlooped target");
        std::string stall;
        if (sgn(enc[2].lo) > 0) {
            std::vector<RationalInterval> roots = {enc[3], enc[2]};
            auto c_path = recompute_coeffs("parity", parity, roots, u_path);
            auto c_pend = recompute_coeffs("parity", parity, roots, u_pend);
            int orient = 0;
            if (c_path[0].lo > c_pend[0].hi)
                orient = 1;
            else if (c_pend[0].lo > c_path[0].hi)
                orient = -1;
            cert.roots = roots;
            bool a_is_path = orient >= 0;
            cert.family_a_label = a_is_path ? kPathLabel : kPendantLabel;
            cert.family_b_label = a_is_path ? kPendantLabel : kPathLabel;
            cert.family_a = a_is_path ? path_family() : pendant_family();
            cert.family_b = a_is_path ? pendant_family() : path_family();
            cert.counts_a = a_is_path ? u_path : u_pend;
            cert.counts_b = a_is_path ? u_pend : u_path;
            cert.coeffs_a = a_is_path ? c_path : c_pend;
            cert.coeffs_b = a_is_path ? c_pend : c_path;
            cert.bound_a_lower = grid_down(cert.coeffs_a[0].lo);
            cert.bound_b_upper = grid_up(cert.coeffs_b[0].hi);
            if (orient == 0) {
                stall = "the dominant coefficient enclosures overlap";
            } else if (cert.bound_a_lower <= cert.bound_b_upper) {
                stall = "the dominant coefficient gap vanishes on the bound grid";
            } else {
                ThresholdInputs in = threshold_inputs(cert, cert.coeffs_a, cert.coeffs_b);
                auto n = least_threshold(in.gap, in.tail, in.lambda_lo, in.rest_hi, parity);
                if (!n) {
                    stall = "no member cutoff below the exponent cap";
                } else {
                    cert.conclusion = Conclusion::a_exceeds_b_eventually;
                    cert.threshold =
                        ThresholdWitness{*n, in.gap, in.tail, in.lambda_lo, in.rest_hi};
                    return cert;
                }
            }
        } else {
            stall = "the subdominant eigenvalue enclosure touches zero";
        }
        Rational next = w / 2;
        if (next < cap) {
            cert.conclusion = Conclusion::inconclusive;
            cert.threshold.reset();
            cert.note = stall + " at the width cap";
            return cert;
        }
        w = next;
    }
}

Certificate certify_dominant(long x, long y, long z, bool looped, const Rational& width) {
    if (x < 1 || y < 1 || z < 1)
        throw invalid_argument_error("level multiplicities must be positive");
    if (sgn(width) <= 0) throw invalid_argument_error("width must be positive");
    OrbitQuotient q = structural_orbits_T(x, y, z, looped);
    RationalPolynomial f = char_poly(quotient_matrix(q));
    CountSequence ps = hom_sequence(path_family(), q, 0, 3);
    CountSequence es = hom_sequence(pendant_family(), q, 0, 3);

    Certificate cert;
    cert.mode = "dominant";
    cert.x = x;
    cert.y = y;
    cert.z = z;
    cert.looped = looped;
    cert.scope = ParityScope::all;
    cert.charpoly = f;
    cert.family_a_label = kPathLabel;
    cert.family_b_label = kPendantLabel;
    cert.family_a = path_family();
    cert.family_b = pendant_family();
    cert.count_indices = indices_for(ParityScope::all);
    cert.counts_a = ps.values;
    cert.counts_b = es.values;
    cert.root_names = {"lambda1", "lambda2", "lambda3", "lambda4"};
    cert.coeff_names = {"c1", "c2", "c3", "c4"};

    if (ps.values == es.values) {
        cert.width = width;
        cert.conclusion = Conclusion::inconclusive;
        cert.note = "the first four member counts coincide, so the full sequences do";
        return cert;
    }

    RationalPolynomial mirror_common = poly_gcd(f, negate_variable(f));
    Rational w = width;
    const Rational cap = width_cap();
    while (true) {
        cert.width = w;
        cert.roots.clear();
        cert.coeffs_a.clear();
        cert.coeffs_b.clear();
        cert.bound_a_lower = 0;
        cert.bound_b_upper = 0;
        auto enc = isolate_real_roots(f, w);
        if (enc.size() != 4)
            throw structure_error("the quotient spectrum has " +
                                  std::to_string(enc.size()) +
                                  " real eigenvalues; four distinct ones are required");
        if (degree(mirror_common) >= 1 && sturm_root_count(mirror_common, enc[3]) >= 1)
            throw structure_error(
                "eigenvalues lambda1 and lambda4 form a plus minus pair of equal "
                "magnitude; no strictly dominant eigenvalue");
        if (mag_lo(enc[0]) > mag_hi(enc[3]))
            throw structure_error(
                "the magnitude dominant eigenvalue lambda4 is negative");
        std::vector<RationalInterval> roots = {enc[3], enc[2], enc[1], enc[0]};
        cert.roots = roots;
        std::string stall;
        bool dominant = sgn(roots[0].lo) > 0;
        for (std::size_t j = 1; j < 4 && dominant; ++j)
            if (!(roots[0].lo > mag_hi(roots[j]))) dominant = false;
        if (!dominant) {
            stall = "magnitude separation of the spectrum is unresolved";
        } else {
            RationalPolynomial h = dominant_cubic(ps.values, es.values, x, y, z);
            long stray = sturm_root_count(h, roots[0]);
            Rational endpoint = poly_eval(h, roots[0].lo);
            if (stray != 0 || sgn(endpoint) == 0) {
                stall = "the sign witness cubic is not sign definite on the enclosure";
            } else {
                bool a_is_path = sgn(endpoint) > 0;
                cert.family_a_label = a_is_path ? kPathLabel : kPendantLabel;
                cert.family_b_label = a_is_path ? kPendantLabel : kPathLabel;
                cert.family_a = a_is_path ? path_family() : pendant_family();
                cert.family_b = a_is_path ? pendant_family() : path_family();
                cert.counts_a = a_is_path ? ps.values : es.values;
                cert.counts_b = a_is_path ? es.values : ps.values;
                RationalPolynomial ha =
                    dominant_cubic(cert.counts_a, cert.counts_b, x, y, z);
                cert.coeffs_a = recompute_coeffs("dominant", ParityScope::all, roots,
                                                 cert.counts_a);
                cert.coeffs_b = recompute_coeffs("dominant", ParityScope::all, roots,
                                                 cert.counts_b);
                cert.bound_a_lower = grid_down(cert.coeffs_a[0].lo);
                cert.bound_b_upper = grid_up(cert.coeffs_b[0].hi);
                if (cert.coeffs_b[0].lo > cert.coeffs_a[0].hi)
                    throw internal_error(
                        "sign witness and coefficient enclosures disagree");
                if (!(cert.coeffs_a[0].lo > cert.coeffs_b[0].hi) ||
                    cert.bound_a_lower <= cert.bound_b_upper) {
                    stall = "the dominant coefficient enclosures overlap";
                } else {
                    ThresholdInputs in =
                        threshold_inputs(cert, cert.coeffs_a, cert.coeffs_b);
                    auto n = least_threshold(in.gap, in.tail, in.lambda_lo, in.rest_hi,
                                             ParityScope::all);
                    if (!n) {
                        stall = "no member cutoff below the exponent cap";
                    } else {
                        cert.cubic = ha;
                        cert.cubic_endpoint_value = poly_eval(ha, roots[0].lo);
                        if (degree(ha) == 3) cert.cubic_discriminant = discriminant(ha);
                        cert.conclusion = Conclusion::a_exceeds_b_eventually;
                        cert.threshold = ThresholdWitness{*n, in.gap, in.tail,
                                                          in.lambda_lo, in.rest_hi};
                        return cert;
                    }
                }
            }
        }
        Rational next = w / 2;
        if (next < cap) {
            cert.conclusion = Conclusion::inconclusive;
            cert.threshold.reset();
            cert.cubic.reset();
            cert.cubic_endpoint_value.reset();
            cert.cubic_discriminant.reset();
            cert.note = stall + " at the width cap";
            return cert;
        }
        w = next;
    }
}

std::vector<CompareRow> exact_compare(const PathLikeFamily& fam_a,
                                      const PathLikeFamily& fam_b, const OrbitQuotient& q,
                                      const std::vector<unsigned long>& n_list) {
    if (fam_a.seed.vertex_count != fam_b.seed.vertex_count)
        throw invalid_argument_error("families must share member sizes");
    std::vector<CompareRow> rows;
    rows.reserve(n_list.size());
    for (unsigned long n : n_list) {
        CompareRow row;
        row.n = n;
        row.count_a = hom_pathlike(fam_a, q, n);
        row.count_b = hom_pathlike(fam_b, q, n);
        row.difference = row.count_a - row.count_b;
        rows.push_back(std::move(row));
    }
    return rows;
}

bool replay(const Certificate& cert, std::string* reason) {
    auto fail = [&](const std::string& r) {
        if (reason) *reason = r;
        return false;
    };
    try {
        if (cert.mode != "parity" && cert.mode != "dominant")
            return fail("unknown certificate mode '" + cert.mode + "'");
        if (cert.x < 1 || cert.y < 1 || cert.z < 1)
            return fail("target multiplicities must be positive");
        bool valid_labels =
            (cert.family_a_label == kPathLabel || cert.family_a_label == kPendantLabel) &&
            (cert.family_b_label == kPathLabel || cert.family_b_label == kPendantLabel) &&
            cert.family_a_label != cert.family_b_label;
        if (!valid_labels) return fail("family labels must name both families once");
        auto family_matches = [](const PathLikeFamily& fam, const std::string& label) {
            return is_canonical_seed(fam.seed) &&
                   fam.attach_vertex == (label == kPathLabel ? 3 : 2);
        };
        if (!family_matches(cert.family_a, cert.family_a_label) ||
            !family_matches(cert.family_b, cert.family_b_label))
            return fail("stored family shapes disagree with their labels");
        if (cert.mode == "parity") {
            if (cert.scope == ParityScope::all)
                return fail("parity certificates need an odd or even scope");
            if (cert.looped) return fail("parity certificates apply to unlooped targets");
        } else if (cert.scope != ParityScope::all) {
            return fail("dominant certificates cover all members");
        }
        if (sgn(cert.width) <= 0) return fail("stored width must be positive");
        RationalPolynomial f =
            char_poly(quotient_matrix(structural_orbits_T(cert.x, cert.y, cert.z,
                                                          cert.looped)));
        if (f.coeffs != cert.charpoly.coeffs)
            return fail("stored characteristic polynomial disagrees with the target");
        if (cert.mode == "parity" &&
            (sgn(f.coeffs[1]) != 0 || sgn(f.coeffs[3]) != 0))
            return fail("parity scheme needs an even characteristic polynomial");
        std::vector<long> idx = indices_for(cert.scope);
        if (cert.count_indices != idx)
            return fail("stored count indices do not match the scope");
        if (cert.counts_a.size() != idx.size() || cert.counts_b.size() != idx.size())
            return fail("count vectors do not match the scope");
        std::size_t nroots = cert.mode == "parity" ? 2 : 4;
        bool conclusive = cert.conclusion == Conclusion::a_exceeds_b_eventually;
        if (cert.roots.size() != nroots) {
            if (conclusive || !cert.roots.empty())
                return fail("unexpected number of eigenvalue enclosures");
        }
        if (cert.root_names.size() != cert.roots.size() &&
            !(cert.roots.empty() && cert.root_names.size() == nroots))
            return fail("eigenvalue names do not line up with the enclosures");
        for (std::size_t i = 0; i < cert.roots.size(); ++i) {
            const auto& r = cert.roots[i];
            if (r.lo > r.hi) return fail("eigenvalue enclosure endpoints out of order");
            if (iv_width(r) > cert.width)
                return fail("eigenvalue enclosure wider than the stored width");
            if (sgn(poly_eval(f, r.lo)) * sgn(poly_eval(f, r.hi)) >= 0)
                return fail("no sign change across an eigenvalue enclosure");
            if (sturm_root_count(f, r) != 1)
                return fail("an enclosure does not isolate exactly one eigenvalue");
            if (i + 1 < cert.roots.size() && !(cert.roots[i].lo > cert.roots[i + 1].hi))
                return fail("eigenvalue enclosures out of order or overlapping");
        }
        if (!cert.roots.empty()) {
            if (cert.mode == "dominant") {
                Rational b = monic_root_bound(f);
                if (sturm_root_count(f, make_interval(-b, b)) != 4)
                    return fail("the enclosures do not cover the whole real spectrum");
            } else if (!(sgn(cert.roots[1].lo) > 0)) {
                return fail("both parity eigenvalues must be positive");
            }
        }
        if (cert.coeffs_a.size() != cert.coeffs_b.size())
            return fail("coefficient enclosure lists differ in length");
        if (!cert.coeffs_a.empty()) {
            if (cert.roots.empty()) return fail("coefficients stored without eigenvalues");
            if (cert.coeffs_a.size() != cert.roots.size() ||
                cert.coeff_names.size() != cert.roots.size())
                return fail("coefficient enclosures do not line up with the eigenvalues");
            auto rec_a = recompute_coeffs(cert.mode, cert.scope, cert.roots, cert.counts_a);
            auto rec_b = recompute_coeffs(cert.mode, cert.scope, cert.roots, cert.counts_b);
            for (std::size_t i = 0; i < rec_a.size(); ++i) {
                if (cert.coeffs_a[i].lo > rec_a[i].lo || rec_a[i].hi > cert.coeffs_a[i].hi)
                    return fail("a stored family A coefficient enclosure is too tight");
                if (cert.coeffs_b[i].lo > rec_b[i].lo || rec_b[i].hi > cert.coeffs_b[i].hi)
                    return fail("a stored family B coefficient enclosure is too tight");
            }
            if (cert.bound_a_lower > rec_a[0].lo)
                return fail("the family A dominant lower bound is too optimistic");
            if (cert.bound_b_upper < rec_b[0].hi)
                return fail("the family B dominant upper bound is too optimistic");
            if (conclusive) {
                if (!(cert.bound_a_lower > cert.bound_b_upper))
                    return fail("the dominant coefficient bounds do not separate");
                if (!cert.threshold) return fail("conclusive certificate lacks a cutoff");
                const ThresholdWitness& t = *cert.threshold;
                if (sgn(t.gap) <= 0 || t.gap > cert.bound_a_lower - cert.bound_b_upper)
                    return fail("the stored coefficient gap is not supported");
                Rational tail = 0;
                for (std::size_t j = 1; j < rec_a.size(); ++j)
                    tail += mag_hi(iv_sub(rec_a[j], rec_b[j]));
                if (t.tail_bound < tail)
                    return fail("the stored tail bound is below the recomputed tail");
                if (sgn(t.lambda_lower) <= 0 || t.lambda_lower > cert.roots[0].lo)
                    return fail("the dominant eigenvalue lower bound is not supported");
                Rational rest = 0;
                for (std::size_t j = 1; j < cert.roots.size(); ++j)
                    rest = std::max(rest, mag_hi(cert.roots[j]));
                if (t.rest_upper < rest)
                    return fail("the remaining magnitude upper bound is not supported");
                if (!(t.lambda_lower > t.rest_upper))
                    return fail("the stored eigenvalue bounds do not separate");
                if (!(t.gap * rational_pow(t.lambda_lower, t.n) >
                      t.tail_bound * rational_pow(t.rest_upper, t.n)))
                    return fail("the cutoff power inequality fails at the stored n");
                if (cert.scope == ParityScope::odd && t.n % 2 != 1)
                    return fail("the cutoff has the wrong parity for the odd scope");
                if (cert.scope == ParityScope::even && t.n % 2 != 0)
                    return fail("the cutoff has the wrong parity for the even scope");
            }
        } else if (conclusive) {
            return fail("conclusive certificate lacks coefficient enclosures");
        }
        if (conclusive && cert.mode == "dominant") {
            for (std::size_t j = 1; j < cert.roots.size(); ++j)
                if (!(cert.roots[0].lo > mag_hi(cert.roots[j])))
                    return fail("the first eigenvalue is not strictly dominant");
            if (!(sgn(cert.roots[0].lo) > 0))
                return fail("the dominant eigenvalue is not positive");
            if (!cert.cubic || !cert.cubic_endpoint_value)
                return fail("dominant certificate lacks its sign witness");
            RationalPolynomial h =
                dominant_cubic(cert.counts_a, cert.counts_b, cert.x, cert.y, cert.z);
            if (h.coeffs != cert.cubic->coeffs)
                return fail("the sign witness cubic disagrees with the stored counts");
            if (sturm_root_count(*cert.cubic, cert.roots[0]) != 0)
                return fail("the sign witness cubic has a root inside the enclosure");
            Rational v = poly_eval(*cert.cubic, cert.roots[0].lo);
            if (v != *cert.cubic_endpoint_value)
                return fail("the stored sign witness endpoint value is wrong");
            if (sgn(v) <= 0) return fail("the sign witness is not positive");
            if (cert.cubic_discriminant) {
                if (degree(*cert.cubic) != 3)
                    return fail("a discriminant is stored for a non cubic witness");
                if (discriminant(*cert.cubic) != *cert.cubic_discriminant)
                    return fail("the stored discriminant is wrong");
            }
        }
        if (cert.mode == "parity" && (cert.cubic || cert.cubic_endpoint_value ||
                                      cert.cubic_discriminant))
            return fail("parity certificates carry no sign witness cubic");
        if (!conclusive && cert.threshold)
            return fail("inconclusive certificate carries a cutoff");
        return true;
    } catch (const error& e) {
        return fail(std::string("replay raised: ") + e.what());
    }
}

namespace {

ordered_json interval_json(const RationalInterval& iv) {
    ordered_json j;
    j["lo"] = format_rational(iv.lo);
    j["hi"] = format_rational(iv.hi);
    return j;
}

RationalInterval interval_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
        throw validation_error("interval entries need lo and hi");
    Rational lo = parse_rational(j["lo"].get<std::string>());
    Rational hi = parse_rational(j["hi"].get<std::string>());
    if (lo > hi) throw validation_error("interval endpoints out of order");
    return RationalInterval{lo, hi};
}

ordered_json family_json(const PathLikeFamily& fam, const std::string& label) {
    ordered_json j;
    j["label"] = label;
    j["seed_parents"] = fam.seed.parent;
    j["seed_root"] = fam.seed.root;
    j["attach"] = fam.attach_vertex;
    return j;
}

PathLikeFamily family_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("seed_parents") || !j.contains("seed_root") ||
        !j.contains("attach"))
        throw validation_error("family entries need seed_parents, seed_root and attach");
    auto parents = j["seed_parents"].get<std::vector<int>>();
    int root = j["seed_root"].get<int>();
    SourceTree seed = make_tree(static_cast<int>(parents.size()), root, parents);
    int attach = j["attach"].get<int>();
    if (attach < 0 || attach >= seed.vertex_count)
        throw validation_error("attach vertex out of range");
    return PathLikeFamily{std::move(seed), attach};
}

std::vector<Rational> rationals_from_json(const ordered_json& j) {
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(parse_rational(e.get<std::string>()));
    return out;
}

ordered_json rationals_json(const std::vector<Rational>& v) {
    auto arr = ordered_json::array();
    for (const auto& q : v) arr.push_back(format_rational(q));
    return arr;
}

} // namespace

std::string write_certificate(const Certificate& cert) {
    ordered_json j;
    j["mode"] = cert.mode;
    ordered_json target;
    target["x"] = cert.x;
    target["y"] = cert.y;
    target["z"] = cert.z;
    target["looped"] = cert.looped;
    j["target"] = std::move(target);
    j["scope"] = to_string(cert.scope);
    j["width"] = format_rational(cert.width);
    j["family_a"] = family_json(cert.family_a, cert.family_a_label);
    j["family_b"] = family_json(cert.family_b, cert.family_b_label);
    j["charpoly"] = rationals_json(cert.charpoly.coeffs);
    auto roots = ordered_json::array();
    for (std::size_t i = 0; i < cert.roots.size(); ++i) {
        ordered_json r = interval_json(cert.roots[i]);
        ordered_json named;
        named["name"] = i < cert.root_names.size() ? cert.root_names[i] : "";
        named["lo"] = r["lo"];
        named["hi"] = r["hi"];
        roots.push_back(std::move(named));
    }
    j["roots"] = std::move(roots);
    ordered_json counts;
    counts["indices"] = cert.count_indices;
    auto ca = ordered_json::array();
    for (const auto& v : cert.counts_a) ca.push_back(format_bigint(v));
    auto cb = ordered_json::array();
    for (const auto& v : cert.counts_b) cb.push_back(format_bigint(v));
    counts["family_a"] = std::move(ca);
    counts["family_b"] = std::move(cb);
    j["counts"] = std::move(counts);
    ordered_json coeffs;
    coeffs["names"] = cert.coeff_names;
    auto fa = ordered_json::array();
    for (const auto& iv : cert.coeffs_a) fa.push_back(interval_json(iv));
    auto fb = ordered_json::array();
    for (const auto& iv : cert.coeffs_b) fb.push_back(interval_json(iv));
    coeffs["family_a"] = std::move(fa);
    coeffs["family_b"] = std::move(fb);
    j["coefficients"] = std::move(coeffs);
    ordered_json bounds;
    bounds["family_a_dominant_lower"] = format_rational(cert.bound_a_lower);
    bounds["family_b_dominant_upper"] = format_rational(cert.bound_b_upper);
    j["bounds"] = std::move(bounds);
    if (cert.cubic) {
        ordered_json cubic;
        cubic["coeffs"] = rationals_json(cert.cubic->coeffs);
        if (cert.cubic_endpoint_value)
            cubic["endpoint_value"] = format_rational(*cert.cubic_endpoint_value);
        if (cert.cubic_discriminant)
            cubic["discriminant"] = format_rational(*cert.cubic_discriminant);
        j["cubic"] = std::move(cubic);
    }
    j["conclusion"] = to_string(cert.conclusion);
    if (cert.threshold) {
        ordered_json t;
        t["n"] = cert.threshold->n;
        t["gap"] = format_rational(cert.threshold->gap);
        t["tail_bound"] = format_rational(cert.threshold->tail_bound);
        t["lambda_lower"] = format_rational(cert.threshold->lambda_lower);
        t["rest_upper"] = format_rational(cert.threshold->rest_upper);
        j["threshold"] = std::move(t);
    }
    j["note"] = cert.note;
    return j.dump(2) + "\n";
}

Certificate read_certificate(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what(), e.byte);
    }
    if (!j.is_object()) throw validation_error("certificate must be an object");
    for (const char* key : {"mode", "target", "scope", "width", "family_a", "family_b",
                            "charpoly", "roots", "counts", "coefficients", "bounds",
                            "conclusion", "note"})
        if (!j.contains(key))
            throw validation_error(std::string("certificate is missing '") + key + "'");
    Certificate cert;
    cert.mode = j["mode"].get<std::string>();
    const auto& target = j["target"];
    if (!target.contains("x") || !target.contains("y") || !target.contains("z") ||
        !target.contains("looped"))
        throw validation_error("target needs x, y, z and looped");
    cert.x = target["x"].get<long>();
    cert.y = target["y"].get<long>();
    cert.z = target["z"].get<long>();
    cert.looped = target["looped"].get<bool>();
    std::string scope = j["scope"].get<std::string>();
    if (scope == "odd")
        cert.scope = ParityScope::odd;
    else if (scope == "even")
        cert.scope = ParityScope::even;
    else if (scope == "all")
        cert.scope = ParityScope::all;
    else
        throw validation_error("unknown scope '" + scope + "'");
    cert.width = parse_rational(j["width"].get<std::string>());
    cert.family_a_label = j["family_a"].value("label", "");
    cert.family_b_label = j["family_b"].value("label", "");
    cert.family_a = family_from_json(j["family_a"]);
    cert.family_b = family_from_json(j["family_b"]);
    cert.charpoly = make_poly(rationals_from_json(j["charpoly"]));
    for (const auto& r : j["roots"]) {
        cert.root_names.push_back(r.value("name", ""));
        cert.roots.push_back(interval_from_json(r));
    }
    const auto& counts = j["counts"];
    if (!counts.contains("indices") || !counts.contains("family_a") ||
        !counts.contains("family_b"))
        throw validation_error("counts needs indices and both families");
    cert.count_indices = counts["indices"].get<std::vector<long>>();
    for (const auto& v : counts["family_a"])
        cert.counts_a.push_back(parse_bigint(v.get<std::string>()));
    for (const auto& v : counts["family_b"])
        cert.counts_b.push_back(parse_bigint(v.get<std::string>()));
    const auto& coeffs = j["coefficients"];
    if (!coeffs.contains("names") || !coeffs.contains("family_a") ||
        !coeffs.contains("family_b"))
        throw validation_error("coefficients needs names and both families");
    cert.coeff_names = coeffs["names"].get<std::vector<std::string>>();
    for (const auto& iv : coeffs["family_a"])
        cert.coeffs_a.push_back(interval_from_json(iv));
    for (const auto& iv : coeffs["family_b"])
        cert.coeffs_b.push_back(interval_from_json(iv));
    const auto& bounds = j["bounds"];
    if (!bounds.contains("family_a_dominant_lower") ||
        !bounds.contains("family_b_dominant_upper"))
        throw validation_error("bounds needs both dominant coefficient bounds");
    cert.bound_a_lower = parse_rational(bounds["family_a_dominant_lower"].get<std::string>());
    cert.bound_b_upper = parse_rational(bounds["family_b_dominant_upper"].get<std::string>());
    if (j.contains("cubic")) {
        const auto& cubic = j["cubic"];
        if (!cubic.contains("coeffs"))
            throw validation_error("cubic needs its coefficient list");
        cert.cubic = make_poly(rationals_from_json(cubic["coeffs"]));
        if (cubic.contains("endpoint_value"))
            cert.cubic_endpoint_value =
                parse_rational(cubic["endpoint_value"].get<std::string>());
        if (cubic.contains("discriminant"))
            cert.cubic_discriminant =
                parse_rational(cubic["discriminant"].get<std::string>());
    }
    std::string conclusion = j["conclusion"].get<std::string>();
    if (conclusion == "a_exceeds_b_eventually")
        cert.conclusion = Conclusion::a_exceeds_b_eventually;
    else if (conclusion == "inconclusive")
        cert.conclusion = Conclusion::inconclusive;
    else
        throw validation_error("unknown conclusion '" + conclusion + "'");
    if (j.contains("threshold")) {
        const auto& t = j["threshold"];
        for (const char* key : {"n", "gap", "tail_bound", "lambda_lower", "rest_upper"})
            if (!t.contains(key))
                throw validation_error(std::string("threshold is missing '") + key + "'");
        ThresholdWitness w;
        w.n = t["n"].get<unsigned long>();
        w.gap = parse_rational(t["gap"].get<std::string>());
        w.tail_bound = parse_rational(t["tail_bound"].get<std::string>());
        w.lambda_lower = parse_rational(t["lambda_lower"].get<std::string>());
        w.rest_upper = parse_rational(t["rest_upper"].get<std::string>());
        cert.threshold = std::move(w);
    }
    cert.note = j["note"].get<std::string>();
    return cert;
}

std::string summarize(const Certificate& cert) {
    std::ostringstream out;
    const std::string members =
        cert.scope == ParityScope::all ? "all" : to_string(cert.scope) + " indexed";
    const std::string each =
        cert.scope == ParityScope::all ? "" : to_string(cert.scope) + " ";
    out << (cert.mode == "parity" ? "Parity" : "Dominant") << " comparison on T("
        << cert.x << "," << cert.y << "," << cert.z << ")"
        << (cert.looped ? " with a rooted loop" : "") << ", "
        << members << " members";
    if (cert.conclusion == Conclusion::a_exceeds_b_eventually) {
        out << ": " << cert.family_a_label << " eventually admits strictly more "
            << "colorings than " << cert.family_b_label << "; the gap holds for every "
            << each << "member index n >= " << cert.threshold->n
            << ". Dominant coefficient bounds: " << cert.family_a_label << " above "
            << format_rational(cert.bound_a_lower) << ", " << cert.family_b_label
            << " below " << format_rational(cert.bound_b_upper) << ".";
    } else {
        out << ": inconclusive";
        if (!cert.note.empty()) out << " (" << cert.note << ")";
        out << ".";
    }
    return out.str();
}

} // namespace treehom
