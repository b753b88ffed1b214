#include "treehom/graph_io.hpp"

#include "treehom/errors.hpp"

#include <json.hpp>

namespace treehom {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_document(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what(), e.byte);
    }
}

int get_int(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw validation_error(std::string("missing or non-integer field '") + key + "'");
    return j[key].get<int>();
}

} // namespace

std::string write_target(const TargetGraph& h) {
    ordered_json j;
    j["vertices"] = h.vertex_count;
    auto edges = ordered_json::array();
    for (const auto& [u, v] : h.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    j["loops"] = h.loops;
    if (!h.depth_tags.empty()) j["depth_tags"] = h.depth_tags;
    return j.dump(2) + "\n";
}

TargetGraph read_target(const std::string& text) {
    ordered_json j = parse_document(text);
    if (!j.is_object()) throw validation_error("target document must be an object");
    int n = get_int(j, "vertices");
    std::vector<std::pair<int, int>> edges;
    if (!j.contains("edges") || !j["edges"].is_array())
        throw validation_error("missing edge list");
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw validation_error("each edge must be a pair of vertex ids");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<int> loops;
    if (j.contains("loops")) {
        if (!j["loops"].is_array()) throw validation_error("loop list must be an array");
        for (const auto& v : j["loops"]) {
            if (!v.is_number_integer()) throw validation_error("loop entries must be vertex ids");
            loops.push_back(v.get<int>());
        }
    }
    std::vector<int> tags;
    if (j.contains("depth_tags")) {
        if (!j["depth_tags"].is_array())
            throw validation_error("depth tag list must be an array");
        for (const auto& v : j["depth_tags"]) {
            if (!v.is_number_integer()) throw validation_error("depth tags must be integers");
            tags.push_back(v.get<int>());
        }
    }
    return make_target(n, std::move(edges), std::move(loops), std::move(tags));
}

std::string write_tree(const SourceTree& t) {
    ordered_json j;
    j["vertices"] = t.vertex_count;
    j["root"] = t.root;
    j["parent"] = t.parent;
    return j.dump(2) + "\n";
}

SourceTree read_tree(const std::string& text) {
    ordered_json j = parse_document(text);
    if (!j.is_object()) throw validation_error("tree document must be an object");
    int n = get_int(j, "vertices");
    int root = get_int(j, "root");
    if (!j.contains("parent") || !j["parent"].is_array())
        throw validation_error("missing parent list");
    std::vector<int> parent;
    for (const auto& v : j["parent"]) {
        if (!v.is_number_integer()) throw validation_error("parent entries must be integers");
        parent.push_back(v.get<int>());
    }
    return make_tree(n, root, std::move(parent));
}

} // namespace treehom
