#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "reslevy/analytics.hpp"
#include "reslevy/mc_verify.hpp"
#include "reslevy/resurrection.hpp"

namespace reslevy {

using Json = nlohmann::json;  // object keys live in a std::map, so dumps are sorted

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest decimal form that round-trips the exact double. Non-finite
// values are spelled out ("inf", "-inf", "nan").
std::string format_double(double v);

// Finite doubles stay JSON numbers; non-finite ones become the spelled-out
// strings, because bare JSON has no tokens for them.
Json json_number(double v);

struct ReportMeta {
    std::string command;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string timestamp;  // kept on its own line; everything else is replayable
    std::map<std::string, std::string> settings;
};

std::string utc_timestamp();

// Writes to "<path>.tmp" then renames, so readers never observe a torn file.
void write_text_atomic(const std::string& path, const std::string& text);

// {"meta": {...}, "body": ...} pretty-printed; identical configuration and
// seed reproduce the body byte for byte, only meta.timestamp varies.
std::string render_json_report(const ReportMeta& meta, const Json& body);

struct CsvDocument {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footers;  // trailing comment lines
};

// '#'-prefixed header block (command, seed, settings, timestamp), one
// column-name line, comma-separated rows, then '#'-prefixed footers.
std::string render_csv_report(const ReportMeta& meta, const CsvDocument& doc);

Json to_json(const EstimateWithCI& e);
Json to_json(const KsReport& r);
Json to_json(const ClassificationVerdict& v);
Json to_json(const HinfResult& h);
Json to_json(const FeynmanKacResult& r);
Json to_json(const ExponentialLawResult& r);
Json to_json(const DominationResult& r);
Json to_json(const KernelInvarianceRow& r);
Json to_json(const ZeroOneProbeRow& r);
Json to_json(const ScalingResult& r);

// One row per resurrection (ordinal, time, position) plus status footers.
CsvDocument trace_csv(const ResurrectionTrace& tr);

}  // namespace reslevy
