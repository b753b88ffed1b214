#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treehom/certify.hpp"
#include "treehom/graph.hpp"
#include "treehom/graph_io.hpp"
#include "treehom/homcount.hpp"
#include "treehom/orbits.hpp"
#include "treehom/rational.hpp"
#include "treehom/search.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace treehom;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string output; // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(TREEHOM_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "treehom_cli_scratch";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string put(const std::string& name, const std::string& body) {
    const fs::path p = scratch() / name;
    std::ofstream out(p, std::ios::binary);
    out << body;
    return p.string();
}

std::string get(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool has(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("count command") {
    CHECK(run("count path:7 t:18,3,32").output == "81558090\n");
    CHECK(run("count e:7 t:18,3,32").output == "81548856\n");
    CHECK(run("count path:7 t:18,3,32").code == 0);
    CHECK(run("count path:7 t:18,3,32 --engine oracle").output == "81558090\n");
    CHECK(run("count path:7 t:18,3,32 --engine both").output == "81558090\n");
    CHECK(run("count path:5 t:7,1,9").output == "9366\n");
    CHECK(run("count e:7 t:7,1,9").output == "106932\n");

    const BigInt star = hom_oracle(make_star(5), make_T(7, 1, 9, false));
    CHECK(run("count star:5 t:7,1,9").output == format_bigint(star) + "\n");

    const RunResult structured = run("count path:7 t:18,3,32 --format structured");
    CHECK(structured.code == 0);
    CHECK(has(structured.output, "\"count\": \"81558090\""));
    CHECK(has(structured.output, "\"engine\": \"quotient\""));
}

TEST_CASE("count command with file inputs") {
    const std::string tree = put("p7.json", write_tree(make_path(7)));
    const std::string target = put("t18.json", write_target(make_T(18, 3, 32, false)));
    CHECK(run("count " + tree + " " + target + " --engine oracle").output == "81558090\n");
    // Orbit computation on raw files is capped; a large file target needs the
    // oracle engine or the structural shorthand.
    const RunResult capped = run("count " + tree + " " + target);
    CHECK(capped.code == 2);
    CHECK(has(capped.output, "limited to 16 vertices"));

    const std::string small = put("hind.json", write_target(make_target(2, {{0, 1}}, {1})));
    CHECK(run("count path:3 " + small).output == "5\n");
    CHECK(run("count " + tree + " " + small + " --engine both").output ==
          format_bigint(hom_oracle(make_path(7), make_target(2, {{0, 1}}, {1}))) + "\n");
}

TEST_CASE("orbits command") {
    const RunResult small = run("orbits t:7,1,9");
    CHECK(small.code == 0);
    CHECK(has(small.output, "kind: orbit"));
    CHECK(has(small.output, "sizes: 1 7 7 63"));
    CHECK(has(small.output, "  0 7 0 0"));
    CHECK(has(small.output, "  1 0 1 0"));
    CHECK(has(small.output, "  0 1 0 9"));
    CHECK(has(small.output, "  0 0 1 0"));
    CHECK(has(small.output, "classes:"));

    const RunResult looped = run("orbits that:400,3,800");
    CHECK(looped.code == 0);
    CHECK(has(looped.output, "  1 400 0 0"));
    CHECK(has(looped.output, "4 classes over 961601 vertices"));

    const std::string hind = put("hind_orbits.json", write_target(make_target(2, {{0, 1}}, {1})));
    const RunResult file_out = run("orbits " + hind);
    CHECK(has(file_out.output, "sizes: 1 1"));

    const RunResult structured = run("orbits t:7,1,9 --format structured");
    CHECK(structured.output == write_quotient(structural_orbits_T(7, 1, 9, false)));
}

TEST_CASE("certify command emits and replays certificates") {
    const std::string cert_path = (scratch() / "odd_719.json").string();
    const RunResult odd = run("certify odd t:7,1,9 --out " + cert_path);
    CHECK(odd.code == 0);
    CHECK(has(odd.output, "path_family eventually admits strictly more"));
    CHECK(has(odd.output, "n >= 9"));

    const Certificate cert = read_certificate(get(cert_path));
    CHECK(cert.threshold->n == 9);
    CHECK(replay(cert));

    CHECK(run("certify --replay " + cert_path).output == "replay passed\n");
    CHECK(run("certify --replay " + cert_path).code == 0);

    Certificate bad = cert;
    bad.bound_a_lower += make_rational(1, 1000000);
    const std::string bad_path = put("odd_719_bad.json", write_certificate(bad));
    const RunResult failed = run("certify --replay " + bad_path);
    CHECK(failed.code == 3);
    CHECK(has(failed.output, "replay failed: the family A dominant lower bound is too optimistic"));

    const RunResult even = run("certify even t:7,1,9");
    CHECK(even.code == 0);
    CHECK(has(even.output, "pendant_family eventually admits strictly more"));
    CHECK(has(even.output, "n >= 2"));

    const RunResult dominant = run("certify dominant that:400,3,800 --format structured");
    CHECK(dominant.code == 0);
    const Certificate dom = read_certificate(dominant.output);
    CHECK(dom.threshold->n == 15951);
    CHECK(replay(dom));
}

TEST_CASE("certify command exit codes") {
    const RunResult structural = run("certify dominant t:7,1,9");
    CHECK(structural.code == 3);
    CHECK(has(structural.output, "error:"));

    CHECK(run("certify odd that:7,1,9").code == 2);
    CHECK(run("certify odd t:7,1,9 --width 0/1").code == 2);
    CHECK(run("certify odd t:7,1,9 --width abc").code == 2);
    CHECK(run("certify sideways t:7,1,9").code == 2);
    CHECK(run("certify odd t:7,1").code == 2);
    CHECK(run("certify").code == 2);
    CHECK(run("certify odd t:7,1,9 --replay somefile.json").code == 2);
    CHECK(run("certify --replay " + (scratch() / "missing.json").string()).code == 2);
    const std::string garbled = put("garbled.json", "{\"mode\": ");
    CHECK(run("certify --replay " + garbled).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("count path:0 t:1,1,1").code == 2);
    CHECK(run("count path:x t:1,1,1").code == 2);
    CHECK(run("count path:3 t:1,2").code == 2);
    CHECK(run("count path:3 " + (scratch() / "nosuchfile.json").string()).code == 2);
    CHECK(run("count path:3 t:1,1,1 --engine warp").code == 2);
    CHECK(run("count e:5 t:1,1,1").code == 2);

    const RunResult help = run("--help");
    CHECK(help.code == 0);
    CHECK(has(help.output, "count"));
    CHECK(has(help.output, "certify"));
}

TEST_CASE("search command") {
    SearchSpec spec;
    spec.x = ParamRange{18, 18, 1};
    spec.y = ParamRange{3, 3, 1};
    spec.z = ParamRange{32, 32, 1};
    spec.looped_flags = {false};
    spec.mode = SearchMode::finite_n;
    spec.finite_ns = {3};
    const std::string spec_path = put("hit_spec.json", write_spec(spec));
    const fs::path out_dir = scratch() / "hit_out";

    const RunResult r = run("search " + spec_path + " --out " + out_dir.string());
    CHECK(r.code == 0);
    CHECK(has(r.output, "hits: 1"));
    CHECK(get(out_dir / "report.json") == report_document(scan(spec, 1)));
    const std::string hit = get(out_dir / "hit_00000_x18_y3_z32.json");
    CHECK(has(hit, "\"difference\": \"9234\""));

    SearchSpec parity;
    parity.x = ParamRange{7, 7, 1};
    parity.y = ParamRange{1, 1, 1};
    parity.z = ParamRange{9, 9, 1};
    parity.looped_flags = {false};
    parity.mode = SearchMode::parity_certificate;
    parity.parity = ParityScope::odd;
    parity.width = make_rational(1, bigint_pow(10, 12));
    const std::string parity_path = put("parity_spec.json", write_spec(parity));
    const fs::path parity_dir = scratch() / "parity_out";
    CHECK(run("search " + parity_path + " --out " + parity_dir.string()).code == 0);
    const Certificate stored = read_certificate(get(parity_dir / "hit_00000_x7_y1_z9.json"));
    CHECK(replay(stored));
    CHECK(stored.threshold->n == 9);

    SearchSpec empty;
    empty.x = ParamRange{1, 1, 1};
    empty.y = ParamRange{1, 1, 1};
    empty.z = ParamRange{1, 1, 1};
    empty.looped_flags = {false};
    empty.mode = SearchMode::finite_n;
    empty.finite_ns = {3};
    const std::string empty_path = put("empty_spec.json", write_spec(empty));
    const RunResult none = run("search " + empty_path);
    CHECK(none.code == 0);
    CHECK(has(none.output, "hits: 0"));

    CHECK(run("search " + (scratch() / "missing_spec.json").string()).code == 2);
    const std::string bad_spec = put("bad_spec.json", "{\"x\": [1, 2]}");
    CHECK(run("search " + bad_spec).code == 2);
}

TEST_CASE("search worker counts do not change the output") {
    SearchSpec spec;
    spec.x = ParamRange{1, 3, 1};
    spec.y = ParamRange{1, 3, 1};
    spec.z = ParamRange{1, 3, 1};
    spec.looped_flags = {false, true};
    spec.mode = SearchMode::finite_n;
    spec.finite_ns = {3, 5};
    const std::string spec_path = put("grid_spec.json", write_spec(spec));

    const RunResult single = run("search " + spec_path + " --workers 1 --format structured");
    const RunResult eight = run("search " + spec_path + " --workers 8 --format structured");
    CHECK(single.code == 0);
    CHECK(eight.code == 0);
    CHECK(single.output == eight.output);
    CHECK(single.output == report_document(scan(spec, 1)));
}
