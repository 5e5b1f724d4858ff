#pragma once

// CSV ingestion and emission.  Two data schemas are accepted:
//   p,n,outcome   per-participant positive/negative scores plus an outcome
//   x,y           pre-computed predictor/outcome pairs
// plus a summary-statistics schema for the forensics pipeline:
//   sample,n1,n2,mean1,mean2,t

#include <cstdint>
#include <string>
#include <vector>

#include "ratiolab/regression.hpp"
#include "ratiolab/stats.hpp"

namespace ratiolab::io {

struct PositivityRecord {
    double p_count = 0;
    double n_count = 0;
    double outcome = 0;
};

enum class InputSchema { positivity, xy };

struct Dataset {
    InputSchema schema = InputSchema::xy;
    std::vector<PositivityRecord> records;  // positivity schema only
    regression::ScatterData xy;             // xy schema only

    // Scatter view under the requested parameterization.  For the
    // positivity schema, ratio drops rows with n = 0 (ratio undefined) and
    // reports how many were skipped; fraction keeps every row.  For the xy
    // schema the stored points are returned tagged with `kind`.
    regression::ScatterData as_scatter(regression::XKind kind,
                                       long* skipped = nullptr) const;
};

// Parses one of the two data schemas, dispatching on the header row.
// Rows violating invariants (non-numeric cells, p = n = 0, non-finite
// values) are reported with their line numbers in a single ParseError.
Dataset load_records(const std::string& path);

struct LabeledSummary {
    std::string label;
    stats::SummaryStats stats;
};

// Parses the summary-statistics schema.
std::vector<LabeledSummary> load_summaries(const std::string& path);

// Writes the positivity schema back out with ratio and fraction columns
// appended; the ratio cell is left empty when n = 0.
void write_transformed(const std::string& path,
                       const std::vector<PositivityRecord>& records);

// FNV-1a 64-bit content hash of a file, as 16 hex digits.
std::string file_digest(const std::string& path);

}  // namespace ratiolab::io
