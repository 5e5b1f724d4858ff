#pragma once

// JSON serialization of every report type.  Key order is fixed
// (nlohmann::ordered_json) so identical inputs, config and seed produce
// byte-identical documents.

#include <string>

#include <json.hpp>

#include "ratiolab/claims.hpp"
#include "ratiolab/forensics.hpp"
#include "ratiolab/regression.hpp"
#include "ratiolab/simulate.hpp"

namespace ratiolab::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

json to_json(const stats::SummaryStats& s);
json to_json(const stats::TailEstimate& t);
json to_json(const regression::RegressionFit& fit);
json to_json(const forensics::ForensicsReport& r);
json to_json(const std::vector<forensics::SensitivityEntry>& entries);
json to_json(const claims::ClaimVerdict& v);
json to_json(const claims::ChangepointScan& s);
json to_json(const claims::ClaimReport& r);
json to_json(const simulate::PowerTable& t);

// Top-level envelope: tool version, schema version, input digest, the full
// effective configuration, and the results payload.
json envelope(const std::string& subcommand, const std::string& input_digest,
              json parameters, json results);

}  // namespace ratiolab::report
