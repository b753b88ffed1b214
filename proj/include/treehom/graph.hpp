#pragma once

#include <utility>
#include <vector>

namespace treehom {

// Target graph H. Undirected, loops allowed, multi-edges not. A vertex with
// a loop is adjacent to itself exactly once, which is what puts the 1 on the
// diagonal of its quotient matrix entry.
struct TargetGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // u < v, sorted, no duplicates
    std::vector<int> loops;                 // sorted, no duplicates
    std::vector<int> depth_tags;            // empty, or one tag per vertex
};

// Normalizes edge orientation and ordering and validates the result.
TargetGraph make_target(int vertex_count,
                        std::vector<std::pair<int, int>> edges,
                        std::vector<int> loops,
                        std::vector<int> depth_tags = {});

// Per vertex neighbor lists; a looped vertex lists itself once.
std::vector<std::vector<int>> adjacency_lists(const TargetGraph& h);

// Rooted source tree. parent[v] is the parent of v, -1 for the root.
struct SourceTree {
    int vertex_count = 0;
    int root = 0;
    std::vector<int> parent;
};

SourceTree make_tree(int vertex_count, int root, std::vector<int> parent);
std::vector<std::vector<int>> children_lists(const SourceTree& t);
std::vector<std::pair<int, int>> tree_edges(const SourceTree& t);
std::vector<int> tree_degrees(const SourceTree& t);

// Path on n vertices, numbered along the path and rooted at vertex 0.
SourceTree make_path(int n);

// Star on n vertices rooted at the center, leaves 1..n-1.
SourceTree make_star(int n);

// Spine 0..n-2 plus a pendant vertex n-1 attached at the third vertex from
// the far end of the spine. Defined for n >= 7 only.
SourceTree make_E(int n);

// Spherically symmetric rooted tree with level sizes 1, x, xy, xyz, numbered
// breadth first from the root, with a loop at the root when rooted_loop is
// set. depth_tags records each vertex's level.
TargetGraph make_T(long x, long y, long z, bool rooted_loop);

SourceTree reroot(const SourceTree& t, int new_root);

// Family {G_n}: G_n is the seed with a path of n new vertices appended at
// attach_vertex.
struct PathLikeFamily {
    SourceTree seed;
    int attach_vertex = 0;
};

// Seed P4 extended at the far leaf; member n is the path on n+4 vertices.
PathLikeFamily path_family();

// Seed P4 extended one step in from the far leaf; member n is the tree on
// n+4 vertices whose spine carries a single pendant edge.
PathLikeFamily pendant_family();

// The assembled member G_n, seed labels first, rooted at the seed root.
SourceTree family_tree(const PathLikeFamily& fam, int n);

// A tree viewed as a loopless target graph.
TargetGraph tree_as_target(const SourceTree& t);

} // namespace treehom
