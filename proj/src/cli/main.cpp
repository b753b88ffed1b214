#include "treehom/certify.hpp"
#include "treehom/errors.hpp"
#include "treehom/graph_io.hpp"
#include "treehom/homcount.hpp"
#include "treehom/orbits.hpp"
#include "treehom/rational.hpp"
#include "treehom/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace treehom;
using nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_argument_error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_argument_error("cannot write \"" + path + "\"");
    out << body;
}

long parse_long_token(const std::string& token, const char* what) {
    try {
        std::size_t used = 0;
        long value = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw invalid_argument_error(std::string("bad ") + what + " \"" + token + "\"");
    }
}

SourceTree resolve_tree(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        if (head == "path" || head == "star" || head == "e") {
            const std::string tail = spec.substr(colon + 1);
            const long n = parse_long_token(tail, "tree size");
            if (n < 1 || n > 1'000'000)
                throw invalid_argument_error("tree size out of range: " + tail);
            if (head == "path") return make_path(static_cast<int>(n));
            if (head == "star") return make_star(static_cast<int>(n));
            return make_E(static_cast<int>(n));
        }
    }
    return read_tree(slurp(spec));
}

struct TargetSpec {
    bool structural = false;
    long x = 0;
    long y = 0;
    long z = 0;
    bool looped = false;
    std::string file;
};

TargetSpec parse_target_spec(const std::string& spec) {
    TargetSpec out;
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        if (head == "t" || head == "that") {
            std::string tail = spec.substr(colon + 1);
            std::vector<std::string> parts;
            std::size_t start = 0;
            for (;;) {
                const auto comma = tail.find(',', start);
                parts.push_back(tail.substr(start, comma - start));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            if (parts.size() != 3)
                throw invalid_argument_error("target shorthand needs three sizes, like t:7,1,9");
            out.structural = true;
            out.looped = head == "that";
            out.x = parse_long_token(parts[0], "target size");
            out.y = parse_long_token(parts[1], "target size");
            out.z = parse_long_token(parts[2], "target size");
            return out;
        }
    }
    out.file = spec;
    return out;
}

TargetGraph resolve_target_graph(const TargetSpec& spec) {
    if (spec.structural) return make_T(spec.x, spec.y, spec.z, spec.looped);
    return read_target(slurp(spec.file));
}

OrbitQuotient resolve_quotient(const TargetSpec& spec) {
    if (spec.structural) return structural_orbits_T(spec.x, spec.y, spec.z, spec.looped);
    return orbit_quotient(read_target(slurp(spec.file)));
}

int cmd_count(const std::string& tree_spec, const std::string& target_spec,
              const std::string& engine, const std::string& format) {
    const SourceTree tree = resolve_tree(tree_spec);
    const TargetSpec target = parse_target_spec(target_spec);
    std::optional<BigInt> by_quotient;
    std::optional<BigInt> by_oracle;
    if (engine == "quotient" || engine == "both")
        by_quotient = hom_quotient(tree, resolve_quotient(target));
    if (engine == "oracle" || engine == "both")
        by_oracle = hom_oracle(tree, resolve_target_graph(target));
    if (by_quotient && by_oracle && *by_quotient != *by_oracle)
        throw internal_error("the quotient engine says " + format_bigint(*by_quotient) +
                             " but the oracle says " + format_bigint(*by_oracle));
    const BigInt count = by_quotient ? *by_quotient : *by_oracle;
    if (format == "structured") {
        ordered_json doc;
        doc["tree"] = tree_spec;
        doc["target"] = target_spec;
        doc["engine"] = engine;
        doc["count"] = format_bigint(count);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << format_bigint(count) << "\n";
    }
    return 0;
}

int cmd_orbits(const std::string& target_spec, const std::string& format) {
    const OrbitQuotient q = resolve_quotient(parse_target_spec(target_spec));
    if (format == "structured") {
        std::cout << write_quotient(q);
        return 0;
    }
    std::cout << "kind: " << (q.kind == QuotientKind::orbit ? "orbit" : "equitable-only") << "\n";
    std::cout << "sizes:";
    long total = 0;
    for (long s : q.class_sizes) {
        std::cout << " " << s;
        total += s;
    }
    std::cout << "\nmatrix:\n";
    for (const auto& row : q.quotient) {
        std::cout << " ";
        for (long entry : row) std::cout << " " << entry;
        std::cout << "\n";
    }
    if (total <= 64) {
        std::cout << "classes:\n";
        for (std::size_t i = 0; i < q.partition.classes.size(); ++i) {
            std::cout << "  " << i << ":";
            for (int v : q.partition.classes[i]) std::cout << " " << v;
            std::cout << "\n";
        }
    } else {
        std::cout << "classes: " << q.partition.classes.size() << " classes over " << total
                  << " vertices, listed by --format structured\n";
    }
    return 0;
}

int cmd_certify(const std::string& mode, const std::string& target_text,
                const std::string& width_text, const std::string& out_path,
                const std::string& format) {
    const Rational width = parse_rational(width_text);
    const TargetSpec target = parse_target_spec(target_text);
    if (!target.structural)
        throw invalid_argument_error(
            "certify works on the symmetric tree targets t:x,y,z and that:x,y,z");
    Certificate cert;
    if (mode == "odd" || mode == "even") {
        if (target.looped)
            throw invalid_argument_error("parity certificates apply to unlooped targets only");
        cert = certify_parity(target.x, target.y, target.z,
                              mode == "odd" ? ParityScope::odd : ParityScope::even, width);
    } else if (mode == "dominant") {
        cert = certify_dominant(target.x, target.y, target.z, target.looped, width);
    } else {
        throw invalid_argument_error("certify mode must be odd, even, or dominant");
    }
    const std::string doc = write_certificate(cert);
    if (!out_path.empty()) spill(out_path, doc);
    if (format == "structured") {
        std::cout << doc;
    } else {
        std::cout << summarize(cert) << "\n";
        if (!out_path.empty()) std::cout << "certificate written to " << out_path << "\n";
    }
    return cert.conclusion == Conclusion::a_exceeds_b_eventually ? 0 : 4;
}

int cmd_replay(const std::string& path) {
    const Certificate cert = read_certificate(slurp(path));
    std::string why;
    if (replay(cert, &why)) {
        std::cout << "replay passed\n";
        return 0;
    }
    std::cout << "replay failed: " << why << "\n";
    return 3;
}

std::string finite_hit_document(const SearchHit& hit) {
    ordered_json doc;
    ordered_json cell;
    cell["x"] = hit.cell.x;
    cell["y"] = hit.cell.y;
    cell["z"] = hit.cell.z;
    cell["looped"] = hit.cell.looped;
    doc["cell"] = cell;
    doc["mode"] = "finite_n";
    doc["margin"] = format_rational(hit.margin);
    ordered_json rows = ordered_json::array();
    for (const CompareRow& row : hit.rows) {
        ordered_json line;
        line["n"] = row.n;
        line["path"] = format_bigint(row.count_a);
        line["pendant"] = format_bigint(row.count_b);
        line["difference"] = format_bigint(row.difference);
        rows.push_back(line);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

int cmd_search(const std::string& spec_path, unsigned workers, const std::string& format,
               const std::string& out_dir) {
    const SearchSpec spec = read_spec(slurp(spec_path));
    const ScanResult result = scan(spec, workers);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        spill(out_dir + "/report.json", report_document(result));
        for (std::size_t i = 0; i < result.hits.size(); ++i) {
            const SearchHit& hit = result.hits[i];
            std::ostringstream name;
            name << out_dir << "/hit_" << std::setw(5) << std::setfill('0') << i << "_x"
                 << hit.cell.x << "_y" << hit.cell.y << "_z" << hit.cell.z
                 << (hit.cell.looped ? "_looped" : "") << ".json";
            spill(name.str(), hit.cert ? write_certificate(*hit.cert) : finite_hit_document(hit));
        }
    }
    std::cout << (format == "structured" ? report_document(result) : report_table(result));
    return 0;
}

int fail(int code, const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact H-coloring counts, orbit quotients, and asymptotic comparison "
                 "certificates for tree families"};
    app.require_subcommand(1);

    auto* count_cmd = app.add_subcommand("count", "Count H-colorings of a tree in a target");
    std::string count_tree;
    std::string count_target;
    std::string count_engine = "quotient";
    std::string count_format = "table";
    count_cmd->add_option("tree", count_tree, "path:n, star:n, e:n, or a tree file")->required();
    count_cmd->add_option("target", count_target, "t:x,y,z, that:x,y,z, or a target file")
        ->required();
    count_cmd->add_option("--engine", count_engine, "quotient, oracle, or both")
        ->check(CLI::IsMember({"quotient", "oracle", "both"}));
    count_cmd->add_option("--format", count_format, "table or structured")
        ->check(CLI::IsMember({"table", "structured"}));

    auto* orbits_cmd = app.add_subcommand("orbits", "Orbit classes and quotient matrix of a target");
    std::string orbits_target;
    std::string orbits_format = "table";
    orbits_cmd->add_option("target", orbits_target, "t:x,y,z, that:x,y,z, or a target file")
        ->required();
    orbits_cmd->add_option("--format", orbits_format, "table or structured")
        ->check(CLI::IsMember({"table", "structured"}));

    auto* certify_cmd =
        app.add_subcommand("certify", "Emit or replay an asymptotic comparison certificate");
    std::string certify_mode;
    std::string certify_target;
    std::string certify_width = "1/1000000000000";
    std::string certify_out;
    std::string certify_format = "table";
    std::string replay_path;
    certify_cmd->add_option("mode", certify_mode, "odd, even, or dominant");
    certify_cmd->add_option("target", certify_target, "t:x,y,z or that:x,y,z");
    certify_cmd->add_option("--width", certify_width, "root isolation width as num/den");
    certify_cmd->add_option("--out", certify_out, "write the certificate document to this file");
    certify_cmd->add_option("--format", certify_format, "table or structured")
        ->check(CLI::IsMember({"table", "structured"}));
    certify_cmd->add_option("--replay", replay_path, "re-verify a stored certificate file");

    auto* search_cmd = app.add_subcommand("search", "Scan a parameter grid for separations");
    std::string search_spec_path;
    std::string search_format = "table";
    std::string search_out;
    unsigned search_workers = 1;
    search_cmd->add_option("spec", search_spec_path, "search spec document")->required();
    search_cmd->add_option("--workers", search_workers, "worker thread count");
    search_cmd->add_option("--format", search_format, "table or structured")
        ->check(CLI::IsMember({"table", "structured"}));
    search_cmd->add_option("--out", search_out, "directory for the report and per hit evidence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (count_cmd->parsed()) return cmd_count(count_tree, count_target, count_engine, count_format);
        if (orbits_cmd->parsed()) return cmd_orbits(orbits_target, orbits_format);
        if (certify_cmd->parsed()) {
            if (!replay_path.empty()) {
                if (!certify_mode.empty() || !certify_target.empty())
                    throw invalid_argument_error("--replay takes no mode or target");
                return cmd_replay(replay_path);
            }
            if (certify_mode.empty() || certify_target.empty())
                throw invalid_argument_error("certify needs a mode and a target, or --replay");
            return cmd_certify(certify_mode, certify_target, certify_width, certify_out,
                               certify_format);
        }
        if (search_cmd->parsed())
            return cmd_search(search_spec_path, search_workers, search_format, search_out);
    } catch (const parse_error& e) {
        return fail(2, e.what());
    } catch (const validation_error& e) {
        return fail(2, e.what());
    } catch (const invalid_argument_error& e) {
        return fail(2, e.what());
    } catch (const partition_error& e) {
        return fail(2, e.what());
    } catch (const size_limit_error& e) {
        return fail(2, e.what());
    } catch (const error& e) {
        return fail(3, e.what());
    } catch (const std::exception& e) {
        return fail(3, e.what());
    }
    return 0;
}
