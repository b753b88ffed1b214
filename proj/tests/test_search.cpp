#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treehom/certify.hpp"
#include "treehom/errors.hpp"
#include "treehom/homcount.hpp"
#include "treehom/orbits.hpp"
#include "treehom/search.hpp"

#include <optional>
#include <string>
#include <vector>

using namespace treehom;

namespace {

ParamRange at(long v) { return ParamRange{v, v, 1}; }
ParamRange span(long lo, long hi) { return ParamRange{lo, hi, 1}; }

SearchSpec finite_spec(long x, long y, long z, std::vector<unsigned long> ns) {
    SearchSpec spec;
    spec.x = at(x);
    spec.y = at(y);
    spec.z = at(z);
    spec.looped_flags = {false};
    spec.mode = SearchMode::finite_n;
    spec.finite_ns = std::move(ns);
    return spec;
}

Rational cert_width() { return make_rational(1, bigint_pow(10, 12)); }

// The finite_n hit rule, recomputed from scratch: a hit is a cell where the
// path family strictly beats the pendant family at some requested index, and
// its margin is the difference at the first such index.
std::optional<Rational> expected_margin(const GridCell& cell,
                                        const std::vector<unsigned long>& ns) {
    const OrbitQuotient q = structural_orbits_T(cell.x, cell.y, cell.z, cell.looped);
    for (const CompareRow& row : exact_compare(path_family(), pendant_family(), q, ns))
        if (row.difference > 0) return Rational(row.difference);
    return std::nullopt;
}

} // namespace

TEST_CASE("spec validation") {
    SearchSpec ok = finite_spec(2, 2, 2, {3});
    CHECK(scan(ok, 1).cells_total == 1);

    SearchSpec bad = ok;
    bad.looped_flags = {};
    CHECK_THROWS_AS(scan(bad, 1), validation_error);
    bad = ok;
    bad.looped_flags = {true, false};
    CHECK_THROWS_AS(scan(bad, 1), validation_error);
    bad = ok;
    bad.looped_flags = {false, false};
    CHECK_THROWS_AS(scan(bad, 1), validation_error);
    bad = ok;
    bad.finite_ns = {};
    CHECK_THROWS_AS(scan(bad, 1), validation_error);
    bad = ok;
    bad.x = ParamRange{0, 2, 1};
    CHECK_THROWS_AS(scan(bad, 1), validation_error);
    bad = ok;
    bad.y = ParamRange{2, 1, 1};
    CHECK_THROWS_AS(scan(bad, 1), validation_error);
    bad = ok;
    bad.z = ParamRange{1, 2, 0};
    CHECK_THROWS_AS(scan(bad, 1), validation_error);

    SearchSpec parity = ok;
    parity.mode = SearchMode::parity_certificate;
    parity.parity = ParityScope::all;
    parity.width = cert_width();
    CHECK_THROWS_AS(scan(parity, 1), validation_error);
    parity.parity = ParityScope::odd;
    parity.looped_flags = {false, true};
    CHECK_THROWS_AS(scan(parity, 1), validation_error);
    parity.looped_flags = {false};
    parity.width = Rational(0);
    CHECK_THROWS_AS(scan(parity, 1), validation_error);
    parity.width = cert_width();
    CHECK(scan(parity, 1).cells_total == 1);

    SearchSpec huge = ok;
    huge.x = span(1, 10000);
    huge.y = span(1, 10000);
    huge.z = span(1, 10000);
    CHECK_THROWS_AS(scan(huge, 1), validation_error);
}

TEST_CASE("single cell with a finite witness") {
    const ScanResult r = scan(finite_spec(18, 3, 32, {3}), 1);
    CHECK(r.cells_total == 1);
    CHECK(r.cells_scanned == 1);
    CHECK_FALSE(r.partial);
    REQUIRE(r.completed_through.has_value());
    CHECK(r.completed_through->x == 18);
    REQUIRE(r.hits.size() == 1);
    const SearchHit& hit = r.hits[0];
    CHECK(hit.cell.x == 18);
    CHECK(hit.cell.y == 3);
    CHECK(hit.cell.z == 32);
    CHECK_FALSE(hit.cell.looped);
    REQUIRE(hit.rows.size() == 1);
    CHECK(hit.rows[0].count_a == 81558090);
    CHECK(hit.rows[0].count_b == 81548856);
    CHECK(hit.margin == Rational(9234));
    CHECK_FALSE(hit.cert.has_value());

    const std::string table = report_table(r);
    CHECK(table.find("hits: 1") != std::string::npos);
    CHECK(table.find("x=18 y=3 z=32 looped=no margin=9234/1") != std::string::npos);
    CHECK(table.find("difference=9234") != std::string::npos);
}

TEST_CASE("the margin comes from the first winning index") {
    const ScanResult r = scan(finite_spec(7, 1, 9, {3, 9}), 1);
    REQUIRE(r.hits.size() == 1);
    const SearchHit& hit = r.hits[0];
    REQUIRE(hit.rows.size() == 2);
    CHECK(hit.rows[0].difference < 0);
    CHECK(hit.rows[1].difference > 0);
    CHECK(hit.margin == Rational(hit.rows[1].difference));
}

TEST_CASE("cells without a witness report cleanly") {
    for (auto ns : {std::vector<unsigned long>{3}, std::vector<unsigned long>{2}}) {
        const ScanResult r = scan(finite_spec(7, 1, 9, ns), 1);
        CHECK(r.hits.empty());
        CHECK(r.cells_scanned == 1);
        const std::string table = report_table(r);
        CHECK(table.find("cells scanned: 1 of 1") != std::string::npos);
        CHECK(table.find("hits: 0") != std::string::npos);
    }
    const ScanResult tiny = scan(finite_spec(1, 1, 1, {3}), 1);
    CHECK(tiny.hits.empty());
}

TEST_CASE("certificate scans respect the orientation") {
    SearchSpec odd = finite_spec(7, 1, 9, {});
    odd.mode = SearchMode::parity_certificate;
    odd.parity = ParityScope::odd;
    odd.width = cert_width();
    odd.finite_ns = {};
    const ScanResult ro = scan(odd, 1);
    REQUIRE(ro.hits.size() == 1);
    REQUIRE(ro.hits[0].cert.has_value());
    CHECK(ro.hits[0].cert->threshold->n == 9);
    CHECK(ro.hits[0].cert->family_a_label == "path_family");
    CHECK(ro.hits[0].margin ==
          ro.hits[0].cert->bound_a_lower - ro.hits[0].cert->bound_b_upper);
    CHECK(ro.hits[0].margin > 0);

    // The even comparison concludes in the pendant family's favor, which a
    // path superiority scan must not report.
    SearchSpec even = odd;
    even.parity = ParityScope::even;
    CHECK(scan(even, 1).hits.empty());
}

TEST_CASE("dominant scans skip unusable spectra") {
    SearchSpec spec = finite_spec(7, 1, 9, {});
    spec.mode = SearchMode::dominant_certificate;
    spec.width = cert_width();
    spec.finite_ns = {};
    spec.looped_flags = {false, true};
    const ScanResult r = scan(spec, 1);
    CHECK(r.cells_scanned == 2);

    const Certificate direct = certify_dominant(7, 1, 9, true, cert_width());
    const bool expect_hit = direct.conclusion == Conclusion::a_exceeds_b_eventually &&
                            direct.family_a_label == "path_family";
    if (expect_hit) {
        REQUIRE(r.hits.size() == 1);
        CHECK(r.hits[0].cell.looped);
        CHECK(r.hits[0].cert->threshold->n == direct.threshold->n);
    } else {
        CHECK(r.hits.empty());
    }
}

TEST_CASE("scans are deterministic across worker counts") {
    SearchSpec spec;
    spec.x = span(1, 4);
    spec.y = span(1, 4);
    spec.z = span(1, 4);
    spec.looped_flags = {false, true};
    spec.mode = SearchMode::finite_n;
    spec.finite_ns = {3, 5};

    const ScanResult one = scan(spec, 1);
    const ScanResult zero = scan(spec, 0);
    const ScanResult eight = scan(spec, 8);
    CHECK(one.cells_total == 128);
    CHECK(report_document(one) == report_document(eight));
    CHECK(report_document(one) == report_document(zero));
    CHECK(report_table(one) == report_table(eight));

    for (std::size_t i = 0; i + 1 < one.hits.size(); ++i) {
        const GridCell& a = one.hits[i].cell;
        const GridCell& b = one.hits[i + 1].cell;
        const auto key = [](const GridCell& c) {
            return std::tuple<long, long, long, bool>(c.x, c.y, c.z, c.looped);
        };
        CHECK(key(a) < key(b));
    }

    // Every cell's hit status and margin agrees with an exact recount.
    std::size_t hit_i = 0;
    for (long x = 1; x <= 4; ++x)
        for (long y = 1; y <= 4; ++y)
            for (long z = 1; z <= 4; ++z)
                for (bool looped : {false, true}) {
                    const GridCell cell{x, y, z, looped};
                    const auto expect = expected_margin(cell, spec.finite_ns);
                    if (expect) {
                        REQUIRE(hit_i < one.hits.size());
                        CHECK(one.hits[hit_i].cell.x == x);
                        CHECK(one.hits[hit_i].cell.y == y);
                        CHECK(one.hits[hit_i].cell.z == z);
                        CHECK(one.hits[hit_i].cell.looped == looped);
                        CHECK(one.hits[hit_i].margin == *expect);
                        ++hit_i;
                    }
                }
    CHECK(hit_i == one.hits.size());
}

TEST_CASE("a cell budget yields a reproducible prefix") {
    SearchSpec spec;
    spec.x = span(1, 4);
    spec.y = span(1, 4);
    spec.z = span(1, 4);
    spec.looped_flags = {false, true};
    spec.mode = SearchMode::finite_n;
    spec.finite_ns = {3};
    spec.max_cells = 10;

    const ScanResult r = scan(spec, 3);
    CHECK(r.partial);
    CHECK(r.cells_scanned == 10);
    CHECK(r.cells_total == 128);
    REQUIRE(r.completed_through.has_value());
    CHECK(r.completed_through->x == 1);
    CHECK(r.completed_through->y == 2);
    CHECK(r.completed_through->z == 1);
    CHECK(r.completed_through->looped);
    CHECK(report_document(r) == report_document(scan(spec, 8)));
    CHECK(report_table(r).find("partial scan, stopped after x=1 y=2 z=1 looped=yes") !=
          std::string::npos);

    spec.max_cells = 1000;
    CHECK_FALSE(scan(spec, 2).partial);
}

TEST_CASE("specs round trip through documents") {
    SearchSpec spec;
    spec.x = ParamRange{2, 10, 2};
    spec.y = ParamRange{1, 7, 3};
    spec.z = ParamRange{5, 5, 1};
    spec.looped_flags = {false, true};
    spec.mode = SearchMode::dominant_certificate;
    spec.width = make_rational(1, 100000);
    spec.max_cells = 42;

    const std::string text = write_spec(spec);
    const SearchSpec back = read_spec(text);
    CHECK(back.x.lo == 2);
    CHECK(back.x.hi == 10);
    CHECK(back.x.step == 2);
    CHECK(back.looped_flags == std::vector<bool>{false, true});
    CHECK(back.mode == SearchMode::dominant_certificate);
    CHECK(back.width == spec.width);
    CHECK(back.max_cells == 42);
    CHECK(write_spec(back) == text);

    SearchSpec parity_spec = finite_spec(7, 1, 9, {});
    parity_spec.mode = SearchMode::parity_certificate;
    parity_spec.parity = ParityScope::even;
    parity_spec.width = make_rational(1, 10000);
    const SearchSpec parity_back = read_spec(write_spec(parity_spec));
    CHECK(parity_back.parity == ParityScope::even);
    CHECK(write_spec(parity_back) == write_spec(parity_spec));

    CHECK_THROWS_AS(read_spec("{"), parse_error);
    CHECK_THROWS_AS(read_spec("[]"), validation_error);
    CHECK_THROWS_AS(read_spec("{}"), validation_error);
    CHECK_THROWS_AS(read_spec(R"({"x": [1, 2], "y": [1,1,1], "z": [1,1,1],)"
                              R"( "looped": [false], "mode": "finite_n"})"),
                    validation_error);
    CHECK_THROWS_AS(read_spec(R"({"x": [1,1,1], "y": [1,1,1], "z": [1,1,1],)"
                              R"( "looped": [0], "mode": "finite_n"})"),
                    validation_error);
    CHECK_THROWS_AS(read_spec(R"({"x": [1,1,1], "y": [1,1,1], "z": [1,1,1],)"
                              R"( "looped": [false], "mode": "sideways"})"),
                    validation_error);
    CHECK_THROWS_AS(read_spec(R"({"x": [1,1,1], "y": [1,1,1], "z": [1,1,1],)"
                              R"( "looped": [false], "mode": "finite_n",)"
                              R"( "finite_ns": [-3]})"),
                    validation_error);
    CHECK_THROWS_AS(read_spec(R"({"x": [1,1,1], "y": [1,1,1], "z": [1,1,1],)"
                              R"( "looped": [false], "mode": "finite_n",)"
                              R"( "parity": "both"})"),
                    validation_error);
    CHECK_THROWS_AS(read_spec(R"({"x": [1,1,1], "y": [1,1,1], "z": [1,1,1],)"
                              R"( "looped": [false], "mode": "finite_n",)"
                              R"( "width": 0.5})"),
                    validation_error);
    CHECK_THROWS_AS(read_spec(R"({"x": [1,1,1], "y": [1,1,1], "z": [1,1,1],)"
                              R"( "looped": [false], "mode": "finite_n",)"
                              R"( "max_cells": -1})"),
                    validation_error);
}
