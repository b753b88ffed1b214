#include "treehom/homcount.hpp"

#include "treehom/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace treehom {

using ordered_json = nlohmann::ordered_json;

namespace {

// Children before parents, so each vertex can be folded into its parent and
// released right away. Only a couple of large vectors are alive at any time.
std::vector<int> reverse_bfs_order(const SourceTree& g) {
    auto children = children_lists(g);
    std::vector<int> order;
    order.reserve(g.vertex_count);
    order.push_back(g.root);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int c : children[order[i]]) order.push_back(c);
    std::reverse(order.begin(), order.end());
    return order;
}

BigInt brute_force_count(const SourceTree& g, const TargetGraph& h) {
    int n = g.vertex_count;
    int m = h.vertex_count;
    if (m == 0) return n == 0 ? BigInt(1) : BigInt(0);
    std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
    for (const auto& [u, v] : h.edges) adj[u][v] = adj[v][u] = true;
    for (int v : h.loops) adj[v][v] = true;
    std::vector<int> map(n, 0);
    BigInt total = 0;
    while (true) {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
            if (v != g.root && !adj[map[v]][map[g.parent[v]]]) ok = false;
        if (ok) total += 1;
        int pos = n - 1;
        while (pos >= 0 && map[pos] == m - 1) map[pos--] = 0;
        if (pos < 0) break;
        ++map[pos];
    }
    return total;
}

} // namespace

BigInt hom_oracle(const SourceTree& g, const TargetGraph& h) {
    auto adj = adjacency_lists(h);
    auto order = reverse_bfs_order(g);
    std::vector<std::vector<BigInt>> acc(
        g.vertex_count, std::vector<BigInt>(h.vertex_count, 1));
    for (int v : order) {
        if (v == g.root) break;
        std::vector<BigInt> up(h.vertex_count, 0);
        for (int c = 0; c < h.vertex_count; ++c)
            for (int d : adj[c]) up[c] += acc[v][d];
        auto& parent = acc[g.parent[v]];
        for (int c = 0; c < h.vertex_count; ++c) parent[c] *= up[c];
        std::vector<BigInt>().swap(acc[v]);
    }
    BigInt total = 0;
    for (const auto& e : acc[g.root]) total += e;
    if (g.vertex_count <= 8 && h.vertex_count <= 6) {
        if (total != brute_force_count(g, h))
            throw internal_error("tree count disagrees with exhaustive enumeration");
    }
    return total;
}

HomVector hvector(const SourceTree& t, const OrbitQuotient& q) {
    std::size_t k = q.class_sizes.size();
    const auto& m = q.quotient;
    auto order = reverse_bfs_order(t);
    std::vector<std::vector<BigInt>> acc(t.vertex_count, std::vector<BigInt>(k, 1));
    for (int v : order) {
        if (v == t.root) break;
        std::vector<BigInt> up(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (m[i][j] != 0) up[i] += BigInt(m[i][j]) * acc[v][j];
        auto& parent = acc[t.parent[v]];
        for (std::size_t i = 0; i < k; ++i) parent[i] *= up[i];
        std::vector<BigInt>().swap(acc[v]);
    }
    return HomVector{std::move(acc[t.root])};
}

BigInt hom_quotient(const SourceTree& t, const OrbitQuotient& q) {
    HomVector h = hvector(t, q);
    BigInt total = 0;
    for (std::size_t i = 0; i < h.entries.size(); ++i)
        total += BigInt(q.class_sizes[i]) * h.entries[i];
    return total;
}

IntMatrix quotient_matrix(const OrbitQuotient& q) {
    std::size_t k = q.quotient.size();
    IntMatrix m(k, std::vector<BigInt>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = q.quotient[i][j];
    return m;
}

BigInt hom_pathlike(const PathLikeFamily& fam, const OrbitQuotient& q, unsigned long n) {
    SourceTree seed = reroot(fam.seed, fam.attach_vertex);
    HomVector h0 = hvector(seed, q);
    IntMatrix power = mat_pow(quotient_matrix(q), n);
    std::vector<BigInt> v = mat_vec(power, h0.entries);
    BigInt total = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        total += BigInt(q.class_sizes[i]) * v[i];
    return total;
}

CountSequence hom_sequence(const PathLikeFamily& fam, const OrbitQuotient& q,
                           long n_from, long n_to) {
    if (n_from < 0 || n_to < n_from)
        throw invalid_argument_error("family index range is empty or negative");
    SourceTree seed = reroot(fam.seed, fam.attach_vertex);
    HomVector h0 = hvector(seed, q);
    IntMatrix m = quotient_matrix(q);
    std::vector<BigInt> v =
        mat_vec(mat_pow(m, static_cast<unsigned long>(n_from)), h0.entries);
    CountSequence out;
    out.start_n = n_from;
    out.values.reserve(static_cast<std::size_t>(n_to - n_from) + 1);
    for (long n = n_from;; ++n) {
        BigInt total = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            total += BigInt(q.class_sizes[i]) * v[i];
        out.values.push_back(std::move(total));
        if (n == n_to) break;
        v = mat_vec(m, v);
    }
    return out;
}

std::string write_sequence(const CountSequence& s) {
    ordered_json j;
    j["start_n"] = s.start_n;
    auto values = ordered_json::array();
    for (const auto& v : s.values) values.push_back(format_bigint(v));
    j["values"] = std::move(values);
    return j.dump(2) + "\n";
}

CountSequence read_sequence(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what(), e.byte);
    }
    if (!j.is_object() || !j.contains("start_n") || !j.contains("values"))
        throw validation_error("sequence document is missing fields");
    CountSequence s;
    s.start_n = j["start_n"].get<long>();
    for (const auto& v : j["values"]) {
        if (!v.is_string())
            throw validation_error("sequence values must be decimal strings");
        s.values.push_back(parse_bigint(v.get<std::string>()));
    }
    return s;
}

} // namespace treehom
