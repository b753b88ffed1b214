#pragma once

#include "treehom/certify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treehom {

// Inclusive range with a positive step.
struct ParamRange {
    long lo = 1;
    long hi = 1;
    long step = 1;
};

enum class SearchMode { finite_n, parity_certificate, dominant_certificate };

struct SearchSpec {
    ParamRange x;
    ParamRange y;
    ParamRange z;
    std::vector<bool> looped_flags;        // subset of {false, true}, false first
    SearchMode mode = SearchMode::finite_n;
    std::vector<unsigned long> finite_ns;  // finite_n mode: member indices to compare
    ParityScope parity = ParityScope::odd; // parity_certificate mode
    Rational width;                        // certificate isolation width
    unsigned long max_cells = 0;           // 0 means unlimited; otherwise scan a prefix
};

struct GridCell {
    long x = 0;
    long y = 0;
    long z = 0;
    bool looped = false;
};

// A cell where the pendant family provably admits fewer colorings than the
// path family: strictly at some requested index in finite_n mode, eventually
// via a conclusive certificate in the other modes.
struct SearchHit {
    GridCell cell;
    SearchMode mode = SearchMode::finite_n;
    std::vector<CompareRow> rows;        // finite_n evidence: path vs pendant
    std::optional<Certificate> cert;     // certificate evidence
    Rational margin;                     // count difference at the first witnessing index,
                                         // or the certificate's coefficient gap
};

struct ScanResult {
    SearchSpec spec;
    unsigned long cells_total = 0;
    unsigned long cells_scanned = 0;
    bool partial = false;
    std::optional<GridCell> completed_through; // last cell evaluated, in scan order
    std::vector<SearchHit> hits;               // lexicographic (x, y, z, looped)
};

// Evaluates every cell independently on `workers` threads and merges results
// in lexicographic order, so the output does not depend on scheduling.
ScanResult scan(const SearchSpec& spec, unsigned workers);

std::string report_table(const ScanResult& r);
std::string report_document(const ScanResult& r);

std::string write_spec(const SearchSpec& spec);
SearchSpec read_spec(const std::string& text);

} // namespace treehom
