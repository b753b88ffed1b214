#include "treehom/orbits.hpp"

#include "treehom/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

namespace treehom {

using ordered_json = nlohmann::ordered_json;

namespace {

VertexPartition canonical_partition(std::vector<std::vector<int>> classes) {
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return VertexPartition{std::move(classes)};
}

std::vector<int> class_of_vertex(const TargetGraph& h, const VertexPartition& p) {
    std::vector<int> cls(h.vertex_count, -1);
    for (std::size_t i = 0; i < p.classes.size(); ++i) {
        if (p.classes[i].empty()) throw partition_error("empty class");
        for (int v : p.classes[i]) {
            if (v < 0 || v >= h.vertex_count)
                throw partition_error("class member out of range: " + std::to_string(v));
            if (cls[v] != -1)
                throw partition_error("vertex " + std::to_string(v) + " appears twice");
            cls[v] = static_cast<int>(i);
        }
    }
    for (int v = 0; v < h.vertex_count; ++v)
        if (cls[v] == -1)
            throw partition_error("vertex " + std::to_string(v) + " is not covered");
    return cls;
}

// Iterated neighborhood color refinement. Stable colors bound the orbit
// partition from below: same orbit implies same color.
std::vector<int> refine_colors(const TargetGraph& h) {
    int n = h.vertex_count;
    auto adj = adjacency_lists(h);
    std::vector<int> color(n, 0);
    std::vector<bool> looped(n, false);
    for (int v : h.loops) looped[v] = true;
    {
        std::map<std::pair<int, bool>, int> ids;
        for (int v = 0; v < n; ++v) {
            auto key = std::make_pair(static_cast<int>(adj[v].size()), looped[v]);
            auto [it, _] = ids.emplace(key, static_cast<int>(ids.size()));
            color[v] = it->second;
        }
    }
    while (true) {
        std::map<std::pair<int, std::vector<int>>, int> ids;
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig;
            sig.reserve(adj[v].size());
            for (int w : adj[v]) sig.push_back(color[w]);
            std::sort(sig.begin(), sig.end());
            auto key = std::make_pair(color[v], std::move(sig));
            auto [it, _] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
            next[v] = it->second;
        }
        if (next == color) return color;
        color = std::move(next);
    }
}

struct AutoSearch {
    int n;
    std::vector<std::uint64_t> adj_bits; // row v, bit w; loops on the diagonal
    std::vector<int> color;
    std::vector<int> image;
    std::vector<bool> used;

    explicit AutoSearch(const TargetGraph& h) : n(h.vertex_count) {
        adj_bits.assign(n, 0);
        for (const auto& [u, v] : h.edges) {
            adj_bits[u] |= std::uint64_t{1} << v;
            adj_bits[v] |= std::uint64_t{1} << u;
        }
        for (int v : h.loops) adj_bits[v] |= std::uint64_t{1} << v;
        color = refine_colors(h);
        image.assign(n, -1);
        used.assign(n, false);
    }

    bool consistent(int v, int w) const {
        if (color[v] != color[w]) return false;
        for (int u = 0; u < n; ++u) {
            if (image[u] == -1) continue;
            bool a = adj_bits[v] >> u & 1u;
            bool b = adj_bits[w] >> image[u] & 1u;
            if (a != b) return false;
        }
        // the diagonal is covered once v itself gets assigned below
        return ((adj_bits[v] >> v & 1u) == (adj_bits[w] >> w & 1u));
    }

    bool extend(int v) {
        while (v < n && image[v] != -1) ++v;
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[w] || !consistent(v, w)) continue;
            image[v] = w;
            used[w] = true;
            if (extend(v + 1)) return true;
            image[v] = -1;
            used[w] = false;
        }
        return false;
    }

    // Finds any automorphism sending a to b, or reports there is none.
    bool find_pinned(int a, int b, std::vector<int>& out) {
        std::fill(image.begin(), image.end(), -1);
        std::fill(used.begin(), used.end(), false);
        if (!consistent(a, b)) return false;
        image[a] = b;
        used[b] = true;
        if (!extend(0)) return false;
        out = image;
        return true;
    }
};

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int v) { return up[v] == v ? v : up[v] = find(up[v]); }
    void join(int a, int b) { up[find(a)] = find(b); }
};

std::vector<std::vector<long>> structural_matrix(long x, long y, long z, bool rooted_loop) {
    return {{rooted_loop ? 1L : 0L, x, 0, 0},
            {1, 0, y, 0},
            {0, 1, 0, z},
            {0, 0, 1, 0}};
}

} // namespace

EquitableCheck verify_equitable(const TargetGraph& h, const VertexPartition& p) {
    std::vector<int> cls = class_of_vertex(h, p);
    auto adj = adjacency_lists(h);
    int k = static_cast<int>(p.classes.size());
    std::vector<std::vector<long>> quotient(k, std::vector<long>(k, 0));
    for (int i = 0; i < k; ++i) {
        int rep = p.classes[i].front();
        std::vector<long> rep_counts(k, 0);
        for (int w : adj[rep]) ++rep_counts[cls[w]];
        for (int v : p.classes[i]) {
            std::vector<long> counts(k, 0);
            for (int w : adj[v]) ++counts[cls[w]];
            for (int j = 0; j < k; ++j) {
                if (counts[j] == rep_counts[j]) continue;
                EquitableCheck out;
                out.refutation = EquitableRefutation{i, j, rep, v, rep_counts[j], counts[j]};
                return out;
            }
        }
        quotient[i] = rep_counts;
    }
    OrbitQuotient q;
    q.partition = p;
    q.class_sizes.reserve(k);
    for (const auto& c : p.classes) q.class_sizes.push_back(static_cast<long>(c.size()));
    q.quotient = std::move(quotient);
    q.kind = QuotientKind::equitable_only;
    EquitableCheck out;
    out.quotient = std::move(q);
    return out;
}

VertexPartition orbit_partition(const TargetGraph& h, int vertex_bound) {
    if (h.vertex_count > std::min(vertex_bound, 64))
        throw size_limit_error(
            "orbit computation is limited to " + std::to_string(std::min(vertex_bound, 64)) +
            " vertices; supply a verified partition for larger targets");
    int n = h.vertex_count;
    if (n == 0) return VertexPartition{};
    AutoSearch search(h);
    UnionFind uf(n);
    std::vector<int> sigma;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (search.color[a] != search.color[b]) continue;
            if (uf.find(a) == uf.find(b)) continue;
            if (search.find_pinned(a, b, sigma))
                for (int v = 0; v < n; ++v) uf.join(v, sigma[v]);
        }
    }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[uf.find(v)].push_back(v);
    std::vector<std::vector<int>> classes;
    classes.reserve(groups.size());
    for (auto& [_, members] : groups) classes.push_back(std::move(members));
    return canonical_partition(std::move(classes));
}

OrbitQuotient orbit_quotient(const TargetGraph& h, int vertex_bound) {
    auto check = verify_equitable(h, orbit_partition(h, vertex_bound));
    if (!check.ok())
        throw internal_error("orbit partition failed the equitability check");
    check.quotient->kind = QuotientKind::orbit;
    return *check.quotient;
}

OrbitQuotient structural_orbits_T(long x, long y, long z, bool rooted_loop) {
    if (x < 1 || y < 1 || z < 1)
        throw invalid_argument_error("level multiplicities must be positive");
    if (x > 50'000'000 || y > 50'000'000 / x || z > 50'000'000 / (x * y))
        throw size_limit_error("level multiplicities exceed the supported size");
    long total = 1 + x + x * y + x * y * z;
    OrbitQuotient q;
    std::vector<long> starts = {0, 1, 1 + x, 1 + x + x * y, total};
    q.partition.classes.resize(4);
    for (int level = 0; level < 4; ++level) {
        auto& c = q.partition.classes[level];
        c.reserve(starts[level + 1] - starts[level]);
        for (long v = starts[level]; v < starts[level + 1]; ++v)
            c.push_back(static_cast<int>(v));
    }
    q.class_sizes = {1, x, x * y, x * y * z};
    q.quotient = structural_matrix(x, y, z, rooted_loop);
    q.kind = QuotientKind::orbit;
    // the depth partition can be strictly finer than the orbit partition on
    // tiny symmetric instances, e.g. the four vertex unlooped path
    if (total <= 16) {
        auto true_orbits = orbit_partition(make_T(x, y, z, rooted_loop));
        if (true_orbits.classes != q.partition.classes)
            q.kind = QuotientKind::equitable_only;
    }
    return q;
}

std::string write_quotient(const OrbitQuotient& q) {
    ordered_json j;
    j["classes"] = q.partition.classes;
    j["sizes"] = q.class_sizes;
    auto matrix = ordered_json::array();
    for (const auto& row : q.quotient)
        for (long e : row) matrix.push_back(e);
    j["matrix"] = std::move(matrix);
    j["kind"] = q.kind == QuotientKind::orbit ? "orbit" : "equitable-only";
    return j.dump(2) + "\n";
}

OrbitQuotient read_quotient(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what(), e.byte);
    }
    OrbitQuotient q;
    if (!j.is_object() || !j.contains("classes") || !j.contains("sizes") ||
        !j.contains("matrix") || !j.contains("kind"))
        throw validation_error("quotient document is missing fields");
    for (const auto& c : j["classes"])
        q.partition.classes.push_back(c.get<std::vector<int>>());
    q.class_sizes = j["sizes"].get<std::vector<long>>();
    std::size_t k = q.class_sizes.size();
    auto flat = j["matrix"].get<std::vector<long>>();
    if (q.partition.classes.size() != k || flat.size() != k * k)
        throw validation_error("quotient document dimensions disagree");
    q.quotient.assign(k, std::vector<long>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) q.quotient[i][l] = flat[i * k + l];
    std::string kind = j["kind"].get<std::string>();
    if (kind == "orbit")
        q.kind = QuotientKind::orbit;
    else if (kind == "equitable-only")
        q.kind = QuotientKind::equitable_only;
    else
        throw validation_error("unknown quotient kind '" + kind + "'");
    for (std::size_t i = 0; i < k; ++i)
        if (q.class_sizes[i] != static_cast<long>(q.partition.classes[i].size()))
            throw validation_error("class size entry disagrees with the class list");
    return q;
}

} // namespace treehom
