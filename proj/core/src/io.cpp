#include "choq/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "choq/version.hpp"

namespace choq {

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw IoError("expected a number or inf/nan string");
}

std::string hex_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

Json grid_set_to_json(const GridSet& s, const std::string& encoding) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "grid_set";
  j["n"] = s.dim();
  j["L"] = s.level();
  if (encoding == "dense") {
    j["encoding"] = "dense";
    Json data = Json::array();
    for (std::int64_t i = 0; i < s.size(); ++i) data.push_back(s.test(i) ? 1 : 0);
    j["data"] = std::move(data);
  } else if (encoding == "rle") {
    // Run lengths in row-major index order, alternating empty/occupied and
    // starting with an (possibly zero-length) empty run.
    j["encoding"] = "rle";
    Json data = Json::array();
    bool current = false;
    std::int64_t run = 0;
    for (std::int64_t i = 0; i < s.size(); ++i) {
      if (s.test(i) == current) {
        ++run;
      } else {
        data.push_back(run);
        current = !current;
        run = 1;
      }
    }
    data.push_back(run);
    j["data"] = std::move(data);
  } else {
    throw ValidationError("unknown grid set encoding: " + encoding);
  }
  return j;
}

GridSet grid_set_from_json(const Json& j) {
  try {
    if (j.at("kind") != "grid_set") throw IoError("not a grid_set document");
    GridSet s(j.at("n").get<int>(), j.at("L").get<int>());
    const std::string encoding = j.at("encoding").get<std::string>();
    const Json& data = j.at("data");
    if (encoding == "dense") {
      if (static_cast<std::int64_t>(data.size()) != s.size())
        throw IoError("dense grid_set data length mismatch");
      for (std::int64_t i = 0; i < s.size(); ++i)
        if (data[static_cast<std::size_t>(i)].get<int>() != 0) s.set(i);
    } else if (encoding == "rle") {
      std::int64_t pos = 0;
      bool current = false;
      for (const auto& run : data) {
        std::int64_t len = run.get<std::int64_t>();
        if (len < 0 || pos + len > s.size()) throw IoError("rle runs exceed grid size");
        if (current)
          for (std::int64_t i = 0; i < len; ++i) s.set(pos + i);
        pos += len;
        current = !current;
      }
      if (pos != s.size()) throw IoError("rle runs do not cover the grid");
    } else {
      throw IoError("unknown grid_set encoding: " + encoding);
    }
    return s;
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed grid_set JSON: ") + e.what());
  }
}

Json grid_function_to_json(const GridFunction& f) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "grid_function";
  j["n"] = f.dim();
  j["L"] = f.level();
  j["encoding"] = "dense";
  Json data = Json::array();
  for (std::int64_t i = 0; i < f.size(); ++i) data.push_back(json_number(f[i]));
  j["data"] = std::move(data);
  return j;
}

GridFunction grid_function_from_json(const Json& j) {
  try {
    if (j.at("kind") != "grid_function") throw IoError("not a grid_function document");
    GridFunction f(j.at("n").get<int>(), j.at("L").get<int>());
    const Json& data = j.at("data");
    if (static_cast<std::int64_t>(data.size()) != f.size())
      throw IoError("grid_function data length mismatch");
    for (std::int64_t i = 0; i < f.size(); ++i)
      f.set(i, number_from_json(data[static_cast<std::size_t>(i)]));
    return f;
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed grid_function JSON: ") + e.what());
  }
}

Json grid_from_file(const std::string& path) {
  Json j = load_json_file(path);
  if (!j.contains("kind")) throw IoError(path + ": missing kind field");
  return j;
}

Json content_result_to_json(const ContentResult& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "content_result";
  j["backend"] = backend_name(r.backend);
  j["delta"] = r.delta;
  j["value"] = json_number(r.value);
  j["lower"] = json_number(r.lower);
  j["upper"] = json_number(r.upper);
  Json cover = Json::array();
  for (const auto& q : r.cube_cover) {
    Json c;
    c["type"] = "cube";
    c["level"] = q.level;
    Json idx = Json::array();
    for (int i = 0; i < q.n; ++i) idx.push_back(q.index[static_cast<std::size_t>(i)]);
    c["index"] = std::move(idx);
    cover.push_back(std::move(c));
  }
  for (const auto& b : r.ball_cover) {
    Json c;
    c["type"] = "ball";
    Json center = Json::array();
    for (int i = 0; i < b.n; ++i) center.push_back(b.center[static_cast<std::size_t>(i)]);
    c["center"] = std::move(center);
    c["radius"] = b.radius;
    cover.push_back(std::move(c));
  }
  j["cover"] = std::move(cover);
  return j;
}

Json operator_result_to_json(const OperatorResult& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "operator_result";
  j["op"] = r.op;
  Json params;
  params["delta"] = r.params.delta;
  params["kappa"] = r.params.kappa;
  params["alpha"] = r.params.alpha;
  params["backend"] = backend_name(r.params.backend);
  Json ladder = Json::array();
  for (double rad : r.params.ladder.radii) ladder.push_back(rad);
  params["ladder"] = std::move(ladder);
  params["distance_floor"] = r.params.distance_floor;
  params["stride"] = r.params.stride;
  j["params"] = std::move(params);
  j["input_digest"] = hex_digest(r.input_digest);
  j["output"] = grid_function_to_json(r.output);
  return j;
}

Json suite_report_to_json(const SuiteReport& r, bool with_timestamp) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "suite_report";
  j["tool_version"] = kVersion;
  j["suite"] = r.suite;
  if (with_timestamp) j["timestamp"] = iso8601_utc_now();
  Json cfg;
  cfg["n"] = r.config.n;
  cfg["L"] = r.config.L;
  cfg["samples"] = r.config.samples;
  cfg["seed"] = r.config.seed;
  cfg["backend"] = backend_name(r.config.backend);
  cfg["threads"] = r.config.threads;
  cfg["delta"] = r.config.delta;
  cfg["delta2"] = r.config.delta2;
  cfg["kappa"] = r.config.kappa;
  cfg["alpha"] = r.config.alpha;
  cfg["p"] = r.config.p;
  cfg["q"] = r.config.q;
  cfg["stride"] = r.config.stride;
  j["config"] = std::move(cfg);
  Json env;
  env["backend"] = r.backend;
  Json ladder = Json::array();
  for (double rad : r.ladder) ladder.push_back(rad);
  env["ladder"] = std::move(ladder);
  env["distance_floor"] = r.distance_floor;
  env["threads"] = r.threads;
  j["environment"] = std::move(env);
  Json instances = Json::array();
  for (const auto& rec : r.records) {
    Json x;
    x["digest"] = rec.digest;
    x["lhs"] = json_number(rec.lhs);
    x["rhs"] = json_number(rec.rhs);
    x["ratio"] = json_number(rec.ratio);
    x["ok"] = rec.ok;
    if (!rec.note.empty()) x["note"] = rec.note;
    instances.push_back(std::move(x));
  }
  j["instances"] = std::move(instances);
  Json summary;
  summary["count"] = r.count;
  summary["violations"] = r.violations;
  summary["max_ratio"] = json_number(r.max_ratio);
  summary["median_ratio"] = json_number(r.median_ratio);
  summary["asserted_cap"] = json_number(r.asserted_cap);
  summary["cap_provenance"] = provenance_name(r.provenance);
  summary["verdict"] = r.pass ? "pass" : "fail";
  summary["detail"] = r.detail;
  j["summary"] = std::move(summary);
  return j;
}

std::string suite_summary_csv_header() {
  return "suite,count,violations,max_ratio,median_ratio,asserted_cap,cap_provenance,verdict";
}

static std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string suite_summary_csv_row(const SuiteReport& r) {
  std::ostringstream os;
  os << r.suite << ',' << r.count << ',' << r.violations << ',' << csv_num(r.max_ratio) << ','
     << csv_num(r.median_ratio) << ',' << csv_num(r.asserted_cap) << ','
     << provenance_name(r.provenance) << ',' << (r.pass ? "pass" : "fail");
  return os.str();
}

std::string sweep_csv(const std::string& suite, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "suite,param,value,empirical,cap,pass\n";
  for (const auto& row : rows) {
    os << suite << ',' << row.param << ',' << csv_num(row.value) << ',' << csv_num(row.empirical)
       << ',' << csv_num(row.cap) << ',' << (row.pass ? "pass" : "fail") << '\n';
  }
  return os.str();
}

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << contents;
    if (!out) throw IoError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IoError("cannot rename " + tmp + " to " + path);
}

Json load_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw IoError(path + ": invalid JSON: " + e.what());
  }
}

}  // namespace choq
