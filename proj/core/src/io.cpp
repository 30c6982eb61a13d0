#include "nestchase/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "nestchase/errors.hpp"

namespace nestchase {

using nlohmann::json;

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractViolation("cannot write " + path.string());
  out << text;
  if (!out) throw ContractViolation("failed writing " + path.string());
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
}

// Schema failures carry no position; nlohmann reports them by key.
template <typename F>
auto with_schema(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const ContractViolation& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("expected a number");
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v(k));
  return arr;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = j.at(k).get<double>();
  return v;
}

json event_to_json(const ChaseEvent& e) {
  json j{{"request", e.request}, {"kind", std::string(to_string(e.kind))}, {"level", e.level}};
  j["axis"] = e.axis ? json(*e.axis) : json(nullptr);
  j["radius"] = real_to_json(e.radius);
  return j;
}

ChaseEvent event_from_json(const json& j) {
  ChaseEvent e;
  e.request = j.at("request").get<std::size_t>();
  const auto kind = parse_event_kind(j.at("kind").get<std::string>());
  if (!kind) throw ParseError("unknown event kind");
  e.kind = *kind;
  e.level = j.at("level").get<std::size_t>();
  if (j.contains("axis") && !j.at("axis").is_null()) e.axis = j.at("axis").get<std::size_t>();
  e.radius = real_from_json(j.at("radius"));
  return e;
}

}  // namespace

NestedInstance parse_instance(const std::string& text) {
  const json doc = parse_json(text);
  return with_schema("instance", [&] {
    NestedInstance inst;
    inst.dimension = doc.at("dimension").get<std::size_t>();
    inst.start = vector_from_json(doc.at("start"));
    for (const auto& batch : doc.at("batches")) {
      std::vector<Halfspace> rows;
      for (const auto& row : batch) {
        const Vector a = vector_from_json(row.at("a"));
        const double b = row.at("b").get<double>();
        const std::string sense = row.contains("sense") ? row.at("sense").get<std::string>() : "le";
        if (sense == "le") {
          rows.emplace_back(a, b);
        } else if (sense == "ge") {
          rows.push_back(Halfspace::at_least(a, b));
        } else {
          throw ParseError("unknown sense '" + sense + "'");
        }
      }
      inst.batches.push_back(std::move(rows));
    }
    inst.check();
    return inst;
  });
}

std::string format_instance(const NestedInstance& instance) {
  instance.check();
  json batches = json::array();
  for (const auto& batch : instance.batches) {
    json rows = json::array();
    for (const auto& h : batch) rows.push_back({{"a", vector_to_json(h.normal())}, {"b", h.offset()}, {"sense", "le"}});
    batches.push_back(std::move(rows));
  }
  const json doc{{"dimension", instance.dimension}, {"start", vector_to_json(instance.start)}, {"batches", batches}};
  return doc.dump(1) + "\n";
}

NestedInstance load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

void save_instance(const NestedInstance& instance, const std::filesystem::path& path) {
  write_file(path, format_instance(instance));
}

std::string format_trajectory(const Trajectory& trajectory, std::span<const ChaseEvent> events) {
  json points = json::array();
  for (const auto& p : trajectory.points) points.push_back(vector_to_json(p));
  json ev = json::array();
  for (const auto& e : events) ev.push_back(event_to_json(e));
  const json doc{{"points", points},
                 {"step_costs", trajectory.step_costs},
                 {"total_cost", trajectory.total_cost},
                 {"events", ev}};
  return doc.dump(1) + "\n";
}

TrajectoryRecord parse_trajectory(const std::string& text) {
  const json doc = parse_json(text);
  return with_schema("trajectory", [&] {
    TrajectoryRecord rec;
    for (const auto& p : doc.at("points")) rec.trajectory.points.push_back(vector_from_json(p));
    rec.trajectory.step_costs = doc.at("step_costs").get<std::vector<double>>();
    rec.trajectory.total_cost = doc.at("total_cost").get<double>();
    if (doc.contains("events")) {
      for (const auto& e : doc.at("events")) rec.events.push_back(event_from_json(e));
    }
    return rec;
  });
}

void save_trajectory(const Trajectory& trajectory, std::span<const ChaseEvent> events,
                     const std::filesystem::path& path) {
  write_file(path, format_trajectory(trajectory, events));
}

TrajectoryRecord load_trajectory(const std::filesystem::path& path) { return parse_trajectory(read_file(path)); }

std::string format_report(const RunReport& r) {
  json ev = json::array();
  for (const auto& e : r.events) ev.push_back(event_to_json(e));
  json doc{{"algorithm", r.algorithm},
           {"instance", r.instance},
           {"dimension", r.dimension},
           {"n_requests", r.n_requests},
           {"total_cost", real_to_json(r.total_cost)},
           {"opt_cost", real_to_json(r.opt_cost)},
           {"ratio", real_to_json(r.ratio)},
           {"phases", r.phases},
           {"recenterings", r.recenterings},
           {"wall_time_s", r.wall_time_s},
           {"max_violation", real_to_json(r.max_violation)},
           {"events", ev}};
  doc["clip_radius"] = r.clip_radius ? real_to_json(*r.clip_radius) : json(nullptr);
  if (!r.error.empty()) doc["error"] = r.error;
  return doc.dump(1) + "\n";
}

RunReport parse_report(const std::string& text) {
  const json doc = parse_json(text);
  return with_schema("report", [&] {
    RunReport r;
    r.algorithm = doc.at("algorithm").get<std::string>();
    r.instance = doc.at("instance").get<std::string>();
    r.dimension = doc.at("dimension").get<std::size_t>();
    r.n_requests = doc.at("n_requests").get<std::size_t>();
    r.total_cost = real_from_json(doc.at("total_cost"));
    r.opt_cost = real_from_json(doc.at("opt_cost"));
    r.ratio = real_from_json(doc.at("ratio"));
    r.phases = doc.at("phases").get<std::size_t>();
    r.recenterings = doc.at("recenterings").get<std::size_t>();
    r.wall_time_s = doc.at("wall_time_s").get<double>();
    if (doc.contains("max_violation")) r.max_violation = real_from_json(doc.at("max_violation"));
    if (doc.contains("events")) {
      for (const auto& e : doc.at("events")) r.events.push_back(event_from_json(e));
    }
    if (doc.contains("clip_radius") && !doc.at("clip_radius").is_null()) {
      r.clip_radius = real_from_json(doc.at("clip_radius"));
    }
    if (doc.contains("error")) r.error = doc.at("error").get<std::string>();
    return r;
  });
}

void save_report(const RunReport& report, const std::filesystem::path& path) {
  write_file(path, format_report(report));
}

RunReport load_report(const std::filesystem::path& path) { return parse_report(read_file(path)); }

namespace {

// Quotes a CSV field when it holds a separator, quote or line break.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_summary(std::span<const RunReport> reports) {
  std::string out = "algorithm,instance,d,n,total_cost,opt,ratio,phases,recenterings,wall_time_s\n";
  for (const auto& r : reports) {
    out += csv_field(r.algorithm) + ',' + csv_field(r.instance) + ',' + std::to_string(r.dimension) + ',' +
           std::to_string(r.n_requests) + ',' + format_real(r.total_cost) + ',' + format_real(r.opt_cost) + ',' +
           format_real(r.ratio) + ',' + std::to_string(r.phases) + ',' + std::to_string(r.recenterings) + ',' +
           format_real(r.wall_time_s) + '\n';
  }
  return out;
}

void emit_summary(std::span<const RunReport> reports, const std::filesystem::path& path) {
  write_file(path, format_summary(reports));
}

}  // namespace nestchase
