#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nestchase/adversary.hpp"
#include "nestchase/chaser.hpp"
#include "nestchase/harness.hpp"

namespace nestchase {

/// Instance files are JSON:
///   {"dimension": d, "start": [...],
///    "batches": [[{"a": [...], "b": 1.0, "sense": "le" | "ge"}, ...], ...]}
/// "ge" rows are stored as negated "le" rows after loading.
NestedInstance parse_instance(const std::string& text);
std::string format_instance(const NestedInstance& instance);
NestedInstance load_instance(const std::filesystem::path& path);
void save_instance(const NestedInstance& instance, const std::filesystem::path& path);

struct TrajectoryRecord {
  Trajectory trajectory;
  std::vector<ChaseEvent> events;
};

std::string format_trajectory(const Trajectory& trajectory, std::span<const ChaseEvent> events = {});
TrajectoryRecord parse_trajectory(const std::string& text);
void save_trajectory(const Trajectory& trajectory, std::span<const ChaseEvent> events,
                     const std::filesystem::path& path);
TrajectoryRecord load_trajectory(const std::filesystem::path& path);

std::string format_report(const RunReport& report);
RunReport parse_report(const std::string& text);
void save_report(const RunReport& report, const std::filesystem::path& path);
RunReport load_report(const std::filesystem::path& path);

/// CSV header plus one row per report.
std::string format_summary(std::span<const RunReport> reports);
void emit_summary(std::span<const RunReport> reports, const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double (at most 17
/// significant digits); "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double value);

}  // namespace nestchase
