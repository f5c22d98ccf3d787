#include "cars/records.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cars/error.hpp"

namespace cars {
namespace {

using nlohmann::json;

json encode(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw Error(ErrorCode::kParseError, "expected a number, got " + j.dump());
}

const std::set<std::string>& record_keys() {
  static const std::set<std::string> keys = {
      "v", "problem", "solver", "seed", "budget", "queries", "f0",
      "f_star", "final_best", "targets", "trace", "error"};
  return keys;
}

}  // namespace

std::string record_to_line(const RunRecord& r) {
  json targets = json::array();
  for (const TargetResult& t : r.targets) {
    json q = t.queries ? json(*t.queries) : json(nullptr);
    targets.push_back({{"eps", encode(t.eps)}, {"queries", q}});
  }
  json trace = json::array();
  for (const TracePoint& p : r.trace) trace.push_back({p.query, encode(p.best)});

  json j;
  j["v"] = kRecordVersion;
  j["problem"] = r.problem;
  j["solver"] = r.solver;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["queries"] = r.queries_used;
  j["f0"] = encode(r.f0);
  j["f_star"] = r.f_star ? encode(*r.f_star) : json(nullptr);
  j["final_best"] = encode(r.final_best);
  j["targets"] = std::move(targets);
  j["trace"] = std::move(trace);
  j["error"] = r.error;
  return j.dump();
}

RunRecord record_from_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "record is not an object");
  for (const auto& item : j.items()) {
    if (!record_keys().count(item.key())) {
      throw Error(ErrorCode::kParseError, "unknown field '" + item.key() + "'");
    }
  }
  try {
    if (j.at("v").get<int>() != kRecordVersion) {
      throw Error(ErrorCode::kParseError,
                  "unsupported record version " + j.at("v").dump());
    }
    RunRecord r;
    r.problem = j.at("problem").get<std::string>();
    r.solver = j.at("solver").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.budget = j.at("budget").get<std::uint64_t>();
    r.queries_used = j.at("queries").get<std::uint64_t>();
    r.f0 = decode(j.at("f0"));
    if (!j.at("f_star").is_null()) r.f_star = decode(j.at("f_star"));
    r.final_best = decode(j.at("final_best"));
    for (const json& t : j.at("targets")) {
      TargetResult tr;
      tr.eps = decode(t.at("eps"));
      if (!t.at("queries").is_null()) tr.queries = t.at("queries").get<std::uint64_t>();
      r.targets.push_back(tr);
    }
    for (const json& p : j.at("trace")) {
      if (!p.is_array() || p.size() != 2) {
        throw Error(ErrorCode::kParseError, "trace points are [query, best] pairs");
      }
      r.trace.push_back({p[0].get<std::uint64_t>(), decode(p[1])});
    }
    r.error = j.at("error").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::string records_to_text(std::span<const RunRecord> records) {
  std::string out;
  for (const RunRecord& r : records) {
    out += record_to_line(r);
    out += '\n';
  }
  return out;
}

std::vector<RunRecord> records_from_text(std::string_view text) {
  std::vector<RunRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(record_from_line(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_records(const std::filesystem::path& path,
                   std::span<const RunRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << records_to_text(records);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

std::vector<RunRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return records_from_text(buf.str());
}

}  // namespace cars
