#include "xrorch/trace_io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "xrorch/errors.hpp"

namespace xrorch {

std::string fixed4(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  std::string out = buffer;
  if (out == "-0.0000") {
    out = "0.0000";
  }
  return out;
}

std::string csv_escape(const std::string& field) {
  const bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += "\"\"";
    } else {
      out += c;
    }
  }
  out += "\"";
  return out;
}

namespace {

double round4(double value) {
  return std::stod(fixed4(value));
}

std::string discard_reason(const CandidateScore& score) {
  if (!score.verdict.discarded()) {
    return "";
  }
  std::string reason =
      score.verdict.discarded_by ? to_string(*score.verdict.discarded_by) : "unknown";
  if (!score.verdict.discard_detail.empty()) {
    reason += ": " + score.verdict.discard_detail;
  }
  return reason;
}

}  // namespace

std::vector<TraceRecord> flatten_trace(const Trace& trace) {
  std::vector<TraceRecord> records;
  for (const auto& step : trace) {
    for (const auto& score : step.candidates) {
      TraceRecord record;
      record.step = step.step;
      record.event = step.event_summary;
      record.placement_id = score.placement_id;
      record.qos_norm = score.qos_norm;
      record.cost_norm = score.cost_norm;
      record.ro_norm = score.ro_norm;
      record.penalty = score.penalty;
      record.f = score.f;
      record.discard_reason = discard_reason(score);
      record.chosen = step.j_best && score.placement_id == *step.j_best;
      record.op = record.chosen ? step.op : ReschedulingOp::None;
      records.push_back(record);
    }
  }
  return records;
}

std::string trace_candidates_csv(const Trace& trace) {
  std::string out =
      "step,event,placement,qos_norm,cost_norm,ro_norm,penalty,f,discard_reason,chosen,"
      "resched_op\n";
  for (const auto& record : flatten_trace(trace)) {
    out += "t" + std::to_string(record.step);
    out += "," + csv_escape(record.event);
    out += "," + csv_escape(record.placement_id);
    out += "," + fixed4(record.qos_norm);
    out += "," + fixed4(record.cost_norm);
    out += "," + fixed4(record.ro_norm);
    out += "," + fixed4(record.penalty);
    out += "," + (record.f ? fixed4(*record.f) : std::string());
    out += "," + csv_escape(record.discard_reason);
    out += std::string(",") + (record.chosen ? "true" : "false");
    out += "," + to_string(record.op);
    out += "\n";
  }
  return out;
}

std::string trace_summary_csv(const Trace& trace) {
  std::string out = "step,context_change,j_current,j_best,f_best,resched_op,status\n";
  for (const auto& step : trace) {
    out += "t" + std::to_string(step.step);
    out += "," + csv_escape(step.event_summary);
    out += "," + (step.j_current_before ? csv_escape(*step.j_current_before) : std::string());
    out += "," + (step.j_best ? csv_escape(*step.j_best) : std::string());
    out += "," + (step.f_best ? fixed4(*step.f_best) : std::string());
    out += "," + to_string(step.op);
    out += "," + to_string(step.status);
    out += "\n";
  }
  return out;
}

std::string trace_json(const Trace& trace) {
  using nlohmann::json;
  json steps = json::array();
  for (const auto& step : trace) {
    json candidates = json::array();
    for (const auto& score : step.candidates) {
      json constraints;
      for (const auto& [id, outcome] : score.verdict.per_constraint) {
        json entry{{"satisfied", outcome.satisfied}};
        if (!outcome.detail.empty()) {
          entry["detail"] = outcome.detail;
        }
        constraints[to_string(id)] = entry;
      }
      json candidate{{"placement", score.placement_id},
                     {"qos_norm", round4(score.qos_norm)},
                     {"cost_norm", round4(score.cost_norm)},
                     {"ro_norm", round4(score.ro_norm)},
                     {"penalty", round4(score.penalty)},
                     {"needs_scaling", score.needs_scaling},
                     {"discarded", score.verdict.discarded()},
                     {"constraints", constraints}};
      if (score.f) {
        candidate["f"] = round4(*score.f);
      } else {
        candidate["f"] = nullptr;
        candidate["discard_reason"] = discard_reason(score);
      }
      candidates.push_back(candidate);
    }

    json scaling = json::array();
    for (const auto& delta : step.scaling) {
      scaling.push_back(json{{"node", delta.node_id},
                             {"before", json{{"vcpu", delta.before.vcpu},
                                             {"ram_gb", delta.before.ram_gb},
                                             {"gpu", delta.before.gpu}}},
                             {"after", json{{"vcpu", delta.after.vcpu},
                                            {"ram_gb", delta.after.ram_gb},
                                            {"gpu", delta.after.gpu}}}});
    }

    json nodes = json::array();
    for (const auto& [id, assigned] : step.post_state.node_assigned) {
      nodes.push_back(json{{"id", id},
                           {"r_assigned", json{{"vcpu", assigned.vcpu},
                                               {"ram_gb", assigned.ram_gb},
                                               {"gpu", assigned.gpu}}}});
    }

    json entry{{"step", step.step},
               {"event", step.event_summary},
               {"j_current", step.j_current_before ? json(*step.j_current_before) : json()},
               {"j_best", step.j_best ? json(*step.j_best) : json()},
               {"f_best", step.f_best ? json(round4(*step.f_best)) : json()},
               {"resched_op", to_string(step.op)},
               {"status", to_string(step.status)},
               {"scaling", scaling},
               {"candidates", candidates},
               {"post_state", json{{"j_current", step.post_state.j_current
                                                     ? json(*step.post_state.j_current)
                                                     : json()},
                                   {"users", step.post_state.user_count},
                                   {"nodes", nodes}}}};
    if (!step.degraded_detail.empty()) {
      entry["degraded_detail"] = step.degraded_detail;
    }
    steps.push_back(entry);
  }
  json root{{"version", 1}, {"steps", steps}};
  return root.dump(2) + "\n";
}

TraceFiles write_trace(const Trace& trace, const std::filesystem::path& out_dir,
                       const TraceWriteOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + out_dir.string() + "'");
  }
  auto write_file = [&](const std::string& name, const std::string& content) {
    const auto path = out_dir / name;
    std::ofstream out(path);
    if (!out.good()) {
      throw ConfigError("cannot write '" + path.string() + "'");
    }
    out << content;
    return path;
  };

  TraceFiles files;
  if (options.csv) {
    files.written.push_back(write_file("candidates.csv", trace_candidates_csv(trace)));
    files.written.push_back(write_file("summary.csv", trace_summary_csv(trace)));
  }
  if (options.json) {
    files.written.push_back(write_file("trace.json", trace_json(trace)));
  }
  return files;
}

}  // namespace xrorch
