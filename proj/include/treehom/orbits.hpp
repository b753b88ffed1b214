#pragma once

#include "treehom/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treehom {

// Disjoint nonempty vertex classes covering V(H), each class sorted, classes
// ordered by their smallest member.
struct VertexPartition {
    std::vector<std::vector<int>> classes;
};

enum class QuotientKind { orbit, equitable_only };

// Class sizes a(H) and quotient matrix M of an equitable partition:
// quotient[i][j] is the number of neighbors every vertex of class i has in
// class j.
struct OrbitQuotient {
    VertexPartition partition;
    std::vector<long> class_sizes;
    std::vector<std::vector<long>> quotient;
    QuotientKind kind = QuotientKind::equitable_only;
};

// Vertices u and v sit in class_i but have different neighbor counts into class_j.
struct EquitableRefutation {
    int class_i = 0;
    int class_j = 0;
    int vertex_u = 0;
    int vertex_v = 0;
    long count_u = 0;
    long count_v = 0;
};

struct EquitableCheck {
    std::optional<OrbitQuotient> quotient;
    std::optional<EquitableRefutation> refutation;
    bool ok() const { return quotient.has_value(); }
};

// Checks neighbor-count constancy class by class. Throws partition_error if
// p does not partition V(H).
EquitableCheck verify_equitable(const TargetGraph& h, const VertexPartition& p);

// Automorphism orbits, computed by refinement plus backtracking search over
// pinned vertex pairs. Refuses targets above vertex_bound.
VertexPartition orbit_partition(const TargetGraph& h, int vertex_bound = 16);

// orbit_partition followed by verify_equitable, kind = orbit.
OrbitQuotient orbit_quotient(const TargetGraph& h, int vertex_bound = 16);

// Depth partition of the symmetric tree target with sizes [1, x, xy, xyz]
// and the known 4x4 quotient matrix, without building the graph when it is
// large. Small instances are compared against the true orbit partition to
// set the kind flag; larger ones are genuinely orbit partitions.
OrbitQuotient structural_orbits_T(long x, long y, long z, bool rooted_loop);

std::string write_quotient(const OrbitQuotient& q);
OrbitQuotient read_quotient(const std::string& text);

} // namespace treehom
