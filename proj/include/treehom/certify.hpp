#pragma once

#include "treehom/exactalg.hpp"
#include "treehom/graph.hpp"
#include "treehom/homcount.hpp"
#include "treehom/orbits.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treehom {

enum class ParityScope { odd, even, all };
enum class Conclusion { a_exceeds_b_eventually, inconclusive };

std::string to_string(ParityScope s);
std::string to_string(Conclusion c);

// Data backing the explicit cutoff: for every in-scope n >= n with
// gap * lambda_lower^n > tail_bound * rest_upper^n the strict comparison
// holds. Endpoints are pre-rounded so replaying the power inequality stays
// cheap.
struct ThresholdWitness {
    unsigned long n = 0;
    Rational gap;          // lower bound on the dominant coefficient difference a - b
    Rational tail_bound;   // upper bound on the summed magnitudes of the remaining differences
    Rational lambda_lower; // lower bound on the dominant eigenvalue
    Rational rest_upper;   // upper bound on the largest remaining root magnitude
};

// Self-contained record of an asymptotic comparison between two path-like
// families against one target. Everything needed to re-verify the claim is
// stored as exact rationals; replay never re-derives counts or isolates
// roots from scratch.
struct Certificate {
    std::string mode; // "parity" or "dominant"
    long x = 0;
    long y = 0;
    long z = 0;
    bool looped = false;
    std::string family_a_label; // "path_family" or "pendant_family"
    std::string family_b_label;
    PathLikeFamily family_a;
    PathLikeFamily family_b;
    ParityScope scope = ParityScope::all;
    Rational width; // isolation width actually used
    RationalPolynomial charpoly;
    std::vector<std::string> root_names;
    std::vector<RationalInterval> roots;
    std::vector<long> count_indices; // family indices of the stored counts
    std::vector<BigInt> counts_a;
    std::vector<BigInt> counts_b;
    std::vector<std::string> coeff_names;
    std::vector<RationalInterval> coeffs_a;
    std::vector<RationalInterval> coeffs_b;
    Rational bound_a_lower; // lower bound for family A's dominant coefficient
    Rational bound_b_upper; // upper bound for family B's dominant coefficient
    std::optional<RationalPolynomial> cubic; // dominant mode sign witness
    std::optional<Rational> cubic_endpoint_value;
    std::optional<Rational> cubic_discriminant;
    Conclusion conclusion = Conclusion::inconclusive;
    std::optional<ThresholdWitness> threshold;
    std::string note;
};

// Compares the path family against the pendant family on the unlooped
// symmetric tree target, restricted to members of one parity. Orientation is
// decided by the data: family A is whichever family provably dominates. An
// undecidable comparison at the width cap comes back inconclusive.
Certificate certify_parity(long x, long y, long z, ParityScope parity, const Rational& width);

// Same comparison on all members at once, available when the quotient
// spectrum has four distinct real roots with a unique positive root of
// strictly largest magnitude. Primary evidence is the sign of an integer
// cubic on the dominant root's enclosure; coefficient enclosures from the
// full Vandermonde solve corroborate it.
Certificate certify_dominant(long x, long y, long z, bool looped, const Rational& width);

struct CompareRow {
    unsigned long n = 0;
    BigInt count_a;
    BigInt count_b;
    BigInt difference; // count_a - count_b
};

// Exact per member counts for both families at the requested indices.
std::vector<CompareRow> exact_compare(const PathLikeFamily& fam_a,
                                      const PathLikeFamily& fam_b,
                                      const OrbitQuotient& q,
                                      const std::vector<unsigned long>& n_list);

// Re-verifies every stored equality and inequality from the certificate's
// own fields. Returns false on the first failed check; if reason is given it
// receives a short description.
bool replay(const Certificate& cert, std::string* reason = nullptr);

std::string write_certificate(const Certificate& cert);
Certificate read_certificate(const std::string& text);

// One paragraph human summary of what the certificate claims.
std::string summarize(const Certificate& cert);

} // namespace treehom
