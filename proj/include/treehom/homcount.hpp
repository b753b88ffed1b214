#pragma once

#include "treehom/graph.hpp"
#include "treehom/matrix.hpp"
#include "treehom/orbits.hpp"
#include "treehom/rational.hpp"

#include <string>
#include <vector>

namespace treehom {

// Per class counts of colorings with the tree root pinned to a class
// representative.
struct HomVector {
    std::vector<BigInt> entries;
};

// Consecutive family counts hom(G_n, H) for n = start_n, start_n+1, ...
struct CountSequence {
    long start_n = 0;
    std::vector<BigInt> values;
};

// Exact hom(g, h) by dynamic programming over the full target. On small
// inputs an exhaustive all-maps enumeration runs as well and any mismatch is
// an internal error.
BigInt hom_oracle(const SourceTree& g, const TargetGraph& h);

// The recursion h(T,v)_i = prod over children c of sum_j m_ij h(S_c,u_c)_j,
// starting from the all ones vector on a single vertex. The root of t is the
// pinned vertex.
HomVector hvector(const SourceTree& t, const OrbitQuotient& q);

// a(H) . hvector(t, q). Equals hom_oracle whenever q is equitable for h.
BigInt hom_quotient(const SourceTree& t, const OrbitQuotient& q);

// a(H) . M^n . h(seed, attach_vertex) with M^n by repeated squaring.
BigInt hom_pathlike(const PathLikeFamily& fam, const OrbitQuotient& q, unsigned long n);

// Consecutive counts by repeated vector updates rather than matrix powers.
CountSequence hom_sequence(const PathLikeFamily& fam, const OrbitQuotient& q,
                           long n_from, long n_to);

IntMatrix quotient_matrix(const OrbitQuotient& q);

std::string write_sequence(const CountSequence& s);
CountSequence read_sequence(const std::string& text);

} // namespace treehom
