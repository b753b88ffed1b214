#include "treehom/graph.hpp"

#include "treehom/errors.hpp"

#include <algorithm>
#include <string>

namespace treehom {

TargetGraph make_target(int vertex_count,
                        std::vector<std::pair<int, int>> edges,
                        std::vector<int> loops,
                        std::vector<int> depth_tags) {
    if (vertex_count < 0) throw validation_error("negative vertex count");
    for (auto& e : edges) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 0 || e.second >= vertex_count)
            throw validation_error("edge endpoint out of range: [" +
                                   std::to_string(e.first) + "," +
                                   std::to_string(e.second) + "]");
        if (e.first == e.second)
            throw validation_error("loop written as an edge pair; use the loop list");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw validation_error("duplicate edge");
    for (int v : loops)
        if (v < 0 || v >= vertex_count)
            throw validation_error("loop vertex out of range: " + std::to_string(v));
    std::sort(loops.begin(), loops.end());
    if (std::adjacent_find(loops.begin(), loops.end()) != loops.end())
        throw validation_error("duplicate loop");
    if (!depth_tags.empty() && static_cast<int>(depth_tags.size()) != vertex_count)
        throw validation_error("depth tag list length does not match vertex count");
    return TargetGraph{vertex_count, std::move(edges), std::move(loops), std::move(depth_tags)};
}

std::vector<std::vector<int>> adjacency_lists(const TargetGraph& h) {
    std::vector<std::vector<int>> adj(h.vertex_count);
    for (const auto& [u, v] : h.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (int v : h.loops) adj[v].push_back(v);
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

SourceTree make_tree(int vertex_count, int root, std::vector<int> parent) {
    if (vertex_count <= 0) throw validation_error("tree needs at least one vertex");
    if (root < 0 || root >= vertex_count) throw validation_error("root out of range");
    if (static_cast<int>(parent.size()) != vertex_count)
        throw validation_error("parent list length does not match vertex count");
    if (parent[root] != -1) throw validation_error("root must have parent -1");
    for (int v = 0; v < vertex_count; ++v) {
        if (v == root) continue;
        if (parent[v] < 0 || parent[v] >= vertex_count)
            throw validation_error("parent out of range for vertex " + std::to_string(v));
    }
    // walk each vertex to the root; a revisit inside the current walk is a cycle
    std::vector<int> state(vertex_count, 0); // 0 unseen, 1 on current walk, 2 done
    for (int v = 0; v < vertex_count; ++v) {
        int w = v;
        std::vector<int> walk;
        while (state[w] == 0 && w != root) {
            state[w] = 1;
            walk.push_back(w);
            w = parent[w];
        }
        if (state[w] == 1) throw validation_error("parent map contains a cycle");
        for (int u : walk) state[u] = 2;
        state[root] = 2;
    }
    return SourceTree{vertex_count, root, std::move(parent)};
}

std::vector<std::vector<int>> children_lists(const SourceTree& t) {
    std::vector<std::vector<int>> ch(t.vertex_count);
    for (int v = 0; v < t.vertex_count; ++v)
        if (v != t.root) ch[t.parent[v]].push_back(v);
    return ch;
}

std::vector<std::pair<int, int>> tree_edges(const SourceTree& t) {
    std::vector<std::pair<int, int>> out;
    out.reserve(t.vertex_count > 0 ? t.vertex_count - 1 : 0);
    for (int v = 0; v < t.vertex_count; ++v) {
        if (v == t.root) continue;
        int p = t.parent[v];
        out.emplace_back(std::min(v, p), std::max(v, p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> tree_degrees(const SourceTree& t) {
    std::vector<int> deg(t.vertex_count, 0);
    for (const auto& [u, v] : tree_edges(t)) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

SourceTree make_path(int n) {
    if (n < 1) throw invalid_argument_error("path needs at least one vertex");
    std::vector<int> parent(n);
    parent[0] = -1;
    for (int v = 1; v < n; ++v) parent[v] = v - 1;
    return SourceTree{n, 0, std::move(parent)};
}

SourceTree make_star(int n) {
    if (n < 1) throw invalid_argument_error("star needs at least one vertex");
    std::vector<int> parent(n, 0);
    parent[0] = -1;
    return SourceTree{n, 0, std::move(parent)};
}

SourceTree make_E(int n) {
    if (n < 7)
        throw invalid_argument_error("pendant spine tree is only defined for n >= 7");
    std::vector<int> parent(n);
    parent[0] = -1;
    for (int v = 1; v <= n - 2; ++v) parent[v] = v - 1;
    parent[n - 1] = n - 4;
    return SourceTree{n, 0, std::move(parent)};
}

TargetGraph make_T(long x, long y, long z, bool rooted_loop) {
    if (x < 1 || y < 1 || z < 1)
        throw invalid_argument_error("level multiplicities must be positive");
    long total = 1 + x + x * y + x * y * z;
    if (total > 50'000'000L)
        throw invalid_argument_error("target too large to materialize: " +
                                     std::to_string(total) + " vertices");
    int n = static_cast<int>(total);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    std::vector<int> tags(n, 0);
    // breadth first numbering: root 0, then the three levels in order
    int level1 = 1;
    int level2 = static_cast<int>(1 + x);
    int level3 = static_cast<int>(1 + x + x * y);
    for (long i = 0; i < x; ++i) {
        int v = level1 + static_cast<int>(i);
        tags[v] = 1;
        edges.emplace_back(0, v);
        for (long j = 0; j < y; ++j) {
            int w = level2 + static_cast<int>(i * y + j);
            tags[w] = 2;
            edges.emplace_back(v, w);
            for (long k = 0; k < z; ++k) {
                int u = level3 + static_cast<int>((i * y + j) * z + k);
                tags[u] = 3;
                edges.emplace_back(w, u);
            }
        }
    }
    std::vector<int> loops;
    if (rooted_loop) loops.push_back(0);
    return make_target(n, std::move(edges), std::move(loops), std::move(tags));
}

SourceTree reroot(const SourceTree& t, int new_root) {
    if (new_root < 0 || new_root >= t.vertex_count)
        throw invalid_argument_error("new root out of range");
    if (new_root == t.root) return t;
    std::vector<int> parent = t.parent;
    // reverse the parent pointers along the old root to new root path
    std::vector<int> path;
    for (int v = new_root; v != -1; v = t.parent[v]) path.push_back(v);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) parent[path[i + 1]] = path[i];
    parent[new_root] = -1;
    return SourceTree{t.vertex_count, new_root, std::move(parent)};
}

PathLikeFamily path_family() {
    return PathLikeFamily{make_path(4), 3};
}

PathLikeFamily pendant_family() {
    return PathLikeFamily{make_path(4), 2};
}

SourceTree family_tree(const PathLikeFamily& fam, int n) {
    if (n < 0) throw invalid_argument_error("family index must be nonnegative");
    if (fam.attach_vertex < 0 || fam.attach_vertex >= fam.seed.vertex_count)
        throw invalid_argument_error("attach vertex is not a seed vertex");
    int base = fam.seed.vertex_count;
    std::vector<int> parent = fam.seed.parent;
    parent.resize(base + n);
    for (int i = 0; i < n; ++i)
        parent[base + i] = (i == 0) ? fam.attach_vertex : base + i - 1;
    return SourceTree{base + n, fam.seed.root, std::move(parent)};
}

TargetGraph tree_as_target(const SourceTree& t) {
    return make_target(t.vertex_count, tree_edges(t), {});
}

} // namespace treehom
