#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cars/run.hpp"

namespace cars {

// One JSON object per line:
//   {"v":1,"problem":..,"solver":..,"seed":..,"budget":..,"queries":..,
//    "f0":..,"f_star":..|null,"final_best":..,
//    "targets":[{"eps":..,"queries":..|null},..],
//    "trace":[[query,best],..],"error":".."}
// Non-finite doubles are written as the strings "nan", "inf", "-inf".
std::string record_to_line(const RunRecord& record);
// Throws kParseError.
RunRecord record_from_line(std::string_view line);

std::string records_to_text(std::span<const RunRecord> records);
// Blank lines are skipped. kParseError messages carry the 1-based line.
std::vector<RunRecord> records_from_text(std::string_view text);

// Throw kIo on file errors.
void write_records(const std::filesystem::path& path,
                   std::span<const RunRecord> records);
std::vector<RunRecord> read_records(const std::filesystem::path& path);

}  // namespace cars
