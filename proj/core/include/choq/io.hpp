#pragma once

#include <string>

#include <json.hpp>

#include "choq/content.hpp"
#include "choq/geometry.hpp"
#include "choq/operators.hpp"
#include "choq/verify.hpp"

namespace choq {

using Json = nlohmann::ordered_json;

/// Doubles with non-finite values become the strings "inf"/"-inf"/"nan";
/// JSON has no literals for them and silently dropping to null would not
/// round-trip.
Json json_number(double v);
double number_from_json(const Json& j);

std::string hex_digest(std::uint64_t digest);

Json grid_set_to_json(const GridSet& s, const std::string& encoding = "rle");
GridSet grid_set_from_json(const Json& j);

Json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);

/// Either kind, dispatched on the "kind" field.
Json grid_from_file(const std::string& path);

Json content_result_to_json(const ContentResult& r);
Json operator_result_to_json(const OperatorResult& r);
Json suite_report_to_json(const SuiteReport& r, bool with_timestamp);

std::string suite_summary_csv_row(const SuiteReport& r);
std::string suite_summary_csv_header();
std::string sweep_csv(const std::string& suite, const std::vector<SweepRow>& rows);

std::string iso8601_utc_now();

std::string read_file(const std::string& path);
void atomic_write_file(const std::string& path, const std::string& contents);

Json load_json_file(const std::string& path);

}  // namespace choq
