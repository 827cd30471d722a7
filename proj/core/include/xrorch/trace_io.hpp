#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "xrorch/orchestrator.hpp"

namespace xrorch {

/// One flat output row per (step, candidate).
struct TraceRecord {
  std::size_t step = 0;
  std::string event;
  std::string placement_id;
  double qos_norm = 0.0;
  double cost_norm = 0.0;
  double ro_norm = 0.0;
  double penalty = 0.0;
  std::optional<double> f;
  std::string discard_reason;
  bool chosen = false;
  ReschedulingOp op = ReschedulingOp::None;
};

std::vector<TraceRecord> flatten_trace(const Trace& trace);

/// Long-format per-candidate CSV (one row per step and placement).
std::string trace_candidates_csv(const Trace& trace);

/// Per-step decision summary: step, context change, incumbent, winner,
/// objective value, rescheduling operation, status.
std::string trace_summary_csv(const Trace& trace);

/// Machine-readable full report.
std::string trace_json(const Trace& trace);

struct TraceWriteOptions {
  bool csv = true;
  bool json = true;
};

struct TraceFiles {
  std::vector<std::filesystem::path> written;
};

/// Writes candidates.csv / summary.csv / trace.json under out_dir. Identical
/// traces produce identical bytes.
TraceFiles write_trace(const Trace& trace, const std::filesystem::path& out_dir,
                       const TraceWriteOptions& options = {});

/// Fixed 4-decimal rendering used for every float in text output.
std::string fixed4(double value);

/// RFC-4180 style quoting: fields with commas, quotes or newlines are quoted
/// and embedded quotes doubled.
std::string csv_escape(const std::string& field);

}  // namespace xrorch
