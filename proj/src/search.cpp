#include "treehom/search.hpp"

#include "treehom/errors.hpp"

#include <json.hpp>

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace treehom {

namespace {

using nlohmann::ordered_json;

const char* mode_name(SearchMode m) {
    switch (m) {
    case SearchMode::finite_n: return "finite_n";
    case SearchMode::parity_certificate: return "parity_certificate";
    case SearchMode::dominant_certificate: return "dominant_certificate";
    }
    throw internal_error("unknown search mode");
}

SearchMode mode_from_name(const std::string& name) {
    if (name == "finite_n") return SearchMode::finite_n;
    if (name == "parity_certificate") return SearchMode::parity_certificate;
    if (name == "dominant_certificate") return SearchMode::dominant_certificate;
    throw validation_error("unknown search mode \"" + name + "\"");
}

unsigned long range_size(const ParamRange& r) {
    return static_cast<unsigned long>((r.hi - r.lo) / r.step) + 1;
}

void check_range(const char* name, const ParamRange& r) {
    if (r.lo < 1)
        throw validation_error(std::string("range ") + name + " must start at 1 or above");
    if (r.step < 1)
        throw validation_error(std::string("range ") + name + " needs a positive step");
    if (r.hi < r.lo)
        throw validation_error(std::string("range ") + name + " is empty");
}

void check_spec(const SearchSpec& spec) {
    check_range("x", spec.x);
    check_range("y", spec.y);
    check_range("z", spec.z);
    if (spec.looped_flags.empty())
        throw validation_error("no looped flags selected");
    if (spec.looped_flags.size() > 2 ||
        (spec.looped_flags.size() == 2 && (spec.looped_flags[0] || !spec.looped_flags[1])))
        throw validation_error("looped flags must list false before true, without repeats");
    switch (spec.mode) {
    case SearchMode::finite_n:
        if (spec.finite_ns.empty())
            throw validation_error("finite_n mode needs at least one member index");
        break;
    case SearchMode::parity_certificate:
        if (spec.parity == ParityScope::all)
            throw validation_error("a parity scan covers the odd or the even members, not both");
        for (bool flag : spec.looped_flags)
            if (flag)
                throw validation_error("parity certificates apply to unlooped targets only");
        if (sgn(spec.width) <= 0)
            throw validation_error("certificate modes need a positive isolation width");
        break;
    case SearchMode::dominant_certificate:
        if (sgn(spec.width) <= 0)
            throw validation_error("certificate modes need a positive isolation width");
        break;
    }
}

unsigned long grid_size(const SearchSpec& spec) {
    constexpr unsigned long kCellLimit = 100'000'000;
    unsigned long total = 1;
    for (unsigned long part : {range_size(spec.x), range_size(spec.y), range_size(spec.z),
                               static_cast<unsigned long>(spec.looped_flags.size())}) {
        if (total > kCellLimit / part)
            throw validation_error("the grid has too many cells to enumerate");
        total *= part;
    }
    return total;
}

GridCell cell_at(const SearchSpec& spec, unsigned long index) {
    const unsigned long nl = spec.looped_flags.size();
    const unsigned long nz = range_size(spec.z);
    const unsigned long ny = range_size(spec.y);
    GridCell cell;
    cell.looped = spec.looped_flags[index % nl];
    index /= nl;
    cell.z = spec.z.lo + static_cast<long>(index % nz) * spec.z.step;
    index /= nz;
    cell.y = spec.y.lo + static_cast<long>(index % ny) * spec.y.step;
    index /= ny;
    cell.x = spec.x.lo + static_cast<long>(index) * spec.x.step;
    return cell;
}

std::optional<SearchHit> evaluate_cell(const SearchSpec& spec, const GridCell& cell) {
    SearchHit hit;
    hit.cell = cell;
    hit.mode = spec.mode;
    if (spec.mode == SearchMode::finite_n) {
        OrbitQuotient q = structural_orbits_T(cell.x, cell.y, cell.z, cell.looped);
        hit.rows = exact_compare(path_family(), pendant_family(), q, spec.finite_ns);
        for (const CompareRow& row : hit.rows) {
            if (sgn(row.difference) > 0) {
                hit.margin = Rational(row.difference);
                return hit;
            }
        }
        return std::nullopt;
    }
    Certificate cert;
    try {
        cert = spec.mode == SearchMode::parity_certificate
                   ? certify_parity(cell.x, cell.y, cell.z, spec.parity, spec.width)
                   : certify_dominant(cell.x, cell.y, cell.z, cell.looped, spec.width);
    } catch (const structure_error&) {
        // Cells whose spectrum does not fit the requested mode are not hits.
        return std::nullopt;
    }
    if (cert.conclusion != Conclusion::a_exceeds_b_eventually) return std::nullopt;
    if (cert.family_a_label != "path_family") return std::nullopt;
    std::string why;
    if (!replay(cert, &why))
        throw internal_error("scan produced a certificate that fails replay: " + why);
    hit.margin = cert.bound_a_lower - cert.bound_b_upper;
    hit.cert = std::move(cert);
    return hit;
}

ordered_json cell_to_json(const GridCell& cell) {
    ordered_json doc;
    doc["x"] = cell.x;
    doc["y"] = cell.y;
    doc["z"] = cell.z;
    doc["looped"] = cell.looped;
    return doc;
}

ordered_json range_to_json(const ParamRange& r) {
    return ordered_json::array({r.lo, r.hi, r.step});
}

ordered_json spec_to_json(const SearchSpec& spec) {
    ordered_json doc;
    doc["x"] = range_to_json(spec.x);
    doc["y"] = range_to_json(spec.y);
    doc["z"] = range_to_json(spec.z);
    ordered_json flags = ordered_json::array();
    for (bool flag : spec.looped_flags) flags.push_back(flag);
    doc["looped"] = flags;
    doc["mode"] = mode_name(spec.mode);
    ordered_json ns = ordered_json::array();
    for (unsigned long n : spec.finite_ns) ns.push_back(n);
    doc["finite_ns"] = ns;
    doc["parity"] = to_string(spec.parity);
    doc["width"] = format_rational(spec.width);
    doc["max_cells"] = spec.max_cells;
    return doc;
}

ParamRange range_from_json(const ordered_json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != 3)
        throw validation_error(std::string("spec needs \"") + key + "\" as [lo, hi, step]");
    ParamRange r;
    long* fields[3] = {&r.lo, &r.hi, &r.step};
    for (int i = 0; i < 3; ++i) {
        const ordered_json& v = doc[key][static_cast<std::size_t>(i)];
        if (!v.is_number_integer())
            throw validation_error(std::string("range \"") + key + "\" holds a non integer");
        *fields[i] = v.get<long>();
    }
    return r;
}

} // namespace

ScanResult scan(const SearchSpec& spec, unsigned workers) {
    check_spec(spec);
    ScanResult result;
    result.spec = spec;
    result.cells_total = grid_size(spec);
    unsigned long budget = result.cells_total;
    if (spec.max_cells != 0 && spec.max_cells < budget) budget = spec.max_cells;
    result.cells_scanned = budget;
    result.partial = budget < result.cells_total;
    result.completed_through = cell_at(spec, budget - 1);

    std::vector<std::optional<SearchHit>> slots(budget);
    std::atomic<unsigned long> next{0};
    std::mutex fail_lock;
    unsigned long fail_index = budget;
    std::exception_ptr fail;

    // Workers pull cell indices from a shared counter and write into private
    // slots; every cell is evaluated even after a failure so the reported
    // error is always the one with the smallest cell index.
    auto worker = [&] {
        for (;;) {
            const unsigned long i = next.fetch_add(1);
            if (i >= budget) return;
            try {
                slots[i] = evaluate_cell(spec, cell_at(spec, i));
            } catch (...) {
                std::lock_guard<std::mutex> hold(fail_lock);
                if (i < fail_index) {
                    fail_index = i;
                    fail = std::current_exception();
                }
            }
        }
    };

    unsigned long thread_count = workers == 0 ? 1 : workers;
    if (thread_count > budget) thread_count = budget;
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (unsigned long t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (fail) std::rethrow_exception(fail);

    for (std::optional<SearchHit>& slot : slots)
        if (slot) result.hits.push_back(std::move(*slot));
    return result;
}

std::string report_table(const ScanResult& r) {
    std::ostringstream out;
    out << "mode: " << mode_name(r.spec.mode) << "\n";
    out << "cells scanned: " << r.cells_scanned << " of " << r.cells_total << "\n";
    if (r.partial && r.completed_through) {
        const GridCell& c = *r.completed_through;
        out << "partial scan, stopped after x=" << c.x << " y=" << c.y << " z=" << c.z
            << " looped=" << (c.looped ? "yes" : "no") << "\n";
    }
    out << "hits: " << r.hits.size() << "\n";
    for (const SearchHit& hit : r.hits) {
        out << "\n"
            << "x=" << hit.cell.x << " y=" << hit.cell.y << " z=" << hit.cell.z
            << " looped=" << (hit.cell.looped ? "yes" : "no")
            << " margin=" << format_rational(hit.margin) << "\n";
        for (const CompareRow& row : hit.rows)
            out << "  n=" << row.n << ": path=" << format_bigint(row.count_a)
                << " pendant=" << format_bigint(row.count_b)
                << " difference=" << format_bigint(row.difference) << "\n";
        if (hit.cert) out << "  " << summarize(*hit.cert) << "\n";
    }
    return out.str();
}

std::string report_document(const ScanResult& r) {
    ordered_json doc;
    doc["spec"] = spec_to_json(r.spec);
    doc["cells_total"] = r.cells_total;
    doc["cells_scanned"] = r.cells_scanned;
    doc["partial"] = r.partial;
    doc["completed_through"] =
        r.completed_through ? cell_to_json(*r.completed_through) : ordered_json();
    ordered_json hits = ordered_json::array();
    for (const SearchHit& hit : r.hits) {
        ordered_json entry;
        entry["cell"] = cell_to_json(hit.cell);
        entry["mode"] = mode_name(hit.mode);
        entry["margin"] = format_rational(hit.margin);
        ordered_json rows = ordered_json::array();
        for (const CompareRow& row : hit.rows) {
            ordered_json line;
            line["n"] = row.n;
            line["path"] = format_bigint(row.count_a);
            line["pendant"] = format_bigint(row.count_b);
            line["difference"] = format_bigint(row.difference);
            rows.push_back(line);
        }
        entry["rows"] = rows;
        if (hit.cert) entry["certificate"] = ordered_json::parse(write_certificate(*hit.cert));
        hits.push_back(entry);
    }
    doc["hits"] = hits;
    return doc.dump(2) + "\n";
}

std::string write_spec(const SearchSpec& spec) {
    return spec_to_json(spec).dump(2) + "\n";
}

SearchSpec read_spec(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what(), e.byte);
    }
    if (!doc.is_object()) throw validation_error("spec document must be an object");
    SearchSpec spec;
    spec.x = range_from_json(doc, "x");
    spec.y = range_from_json(doc, "y");
    spec.z = range_from_json(doc, "z");
    if (!doc.contains("looped") || !doc["looped"].is_array())
        throw validation_error("spec needs \"looped\" as an array of booleans");
    spec.looped_flags.clear();
    for (const auto& v : doc["looped"]) {
        if (!v.is_boolean()) throw validation_error("\"looped\" holds a non boolean");
        spec.looped_flags.push_back(v.get<bool>());
    }
    if (!doc.contains("mode") || !doc["mode"].is_string())
        throw validation_error("spec needs a \"mode\" string");
    spec.mode = mode_from_name(doc["mode"].get<std::string>());
    if (doc.contains("finite_ns")) {
        if (!doc["finite_ns"].is_array())
            throw validation_error("\"finite_ns\" must be an array of member indices");
        for (const auto& v : doc["finite_ns"]) {
            if (!v.is_number_integer() || v.get<long>() < 0)
                throw validation_error("\"finite_ns\" holds a bad member index");
            spec.finite_ns.push_back(v.get<unsigned long>());
        }
    }
    if (doc.contains("parity")) {
        if (!doc["parity"].is_string())
            throw validation_error("\"parity\" must be \"odd\" or \"even\"");
        const std::string p = doc["parity"].get<std::string>();
        if (p == "odd")
            spec.parity = ParityScope::odd;
        else if (p == "even")
            spec.parity = ParityScope::even;
        else
            throw validation_error("\"parity\" must be \"odd\" or \"even\"");
    }
    if (doc.contains("width")) {
        if (!doc["width"].is_string())
            throw validation_error("\"width\" must be a rational string like \"1/10000\"");
        spec.width = parse_rational(doc["width"].get<std::string>());
    }
    if (doc.contains("max_cells")) {
        if (!doc["max_cells"].is_number_integer() || doc["max_cells"].get<long long>() < 0)
            throw validation_error("\"max_cells\" must be a nonnegative integer");
        spec.max_cells = doc["max_cells"].get<unsigned long>();
    }
    return spec;
}

} // namespace treehom
