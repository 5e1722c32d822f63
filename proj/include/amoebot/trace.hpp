#pragma once
// Trace and metrics records. Traces are line-oriented JSON: a versioned
// header line, one line per committed action with its operation log, and a
// closing result line. Key order is fixed so identical runs serialize to
// identical bytes.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amoebot/engine.hpp"

namespace amoebot {

inline constexpr const char* kTraceFormat = "erosim-trace";
inline constexpr int kTraceVersion = 1;
inline constexpr const char* kMetricsFormat = "erosim-metrics";
inline constexpr int kMetricsVersion = 1;

enum class Concurrency : std::uint8_t { sequential, async };

inline const char* to_string(Concurrency m) {
  return m == Concurrency::sequential ? "sequential" : "async";
}

inline Concurrency concurrency_from_string(const std::string& s) {
  if (s == "sequential") return Concurrency::sequential;
  if (s == "async") return Concurrency::async;
  throw std::invalid_argument("unknown mode '" + s + "' (expected sequential or async)");
}

struct TraceEvent {
  std::int64_t step = 0;   // strictly increasing commit index
  int id = 0;
  ActionKind action = ActionKind::setup;
  ErosionRule rule = ErosionRule::none;  // set for erode events
  std::int64_t round = 0;  // round the commit belongs to
  std::vector<OpRecord> ops;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct TraceHeader {
  Dim dim = Dim::three;
  int n = 0;
  Concurrency mode = Concurrency::sequential;
  std::string policy;
  std::uint64_t seed = 0;
};

struct RunMetrics {
  int n = 0;
  Dim dim = Dim::three;
  Concurrency mode = Concurrency::sequential;
  std::string policy;
  std::uint64_t seed = 0;
  std::int64_t rounds = 0;
  int erosions = 0;
  int leader = -1;
  std::int64_t steps = 0;  // interleaver steps (async) / commits (sequential)
  std::array<int, 4> rule_counts{};  // indexed by ErosionRule value
  double wall_ms = 0.0;
};

// --- JSON encoding ----------------------------------------------------------

inline Json op_to_json(const OpRecord& op) {
  Json j;
  switch (op.op) {
    case OpKind::connected:
      j["op"] = "connected";
      j["port"] = op.port;
      j["result"] = op.value != 0;
      break;
    case OpKind::read:
      j["op"] = "read";
      j["port"] = op.port;
      j["var"] = op.var == OpVar::candidate ? "candidate" : op.var == OpVar::leader ? "leader" : "nbrcand";
      break;
    case OpKind::write:
      j["op"] = "write";
      if (op.port < 0) {
        j["target"] = "self";
        j["var"] = op.var == OpVar::candidate ? "candidate" : "leader";
        j["value"] = op.value != 0;
      } else {
        j["port"] = op.port;
        j["var"] = "nbrcand";
        j["index"] = op.index;
        j["value"] = op.value != 0;
      }
      break;
    case OpKind::move:
      j["op"] = "move";
      j["port"] = op.port;
      break;
  }
  return j;
}

inline OpRecord op_from_json(const Json& j) {
  OpRecord op;
  const std::string kind = j.at("op").get<std::string>();
  if (kind == "connected") {
    op.op = OpKind::connected;
    op.port = j.at("port").get<int>();
    op.value = j.at("result").get<bool>() ? 1 : 0;
  } else if (kind == "read") {
    op.op = OpKind::read;
    op.port = j.at("port").get<int>();
    const std::string var = j.at("var").get<std::string>();
    op.var = var == "candidate" ? OpVar::candidate : var == "leader" ? OpVar::leader : OpVar::nbrcand;
  } else if (kind == "write") {
    op.op = OpKind::write;
    if (j.contains("target")) {
      op.port = -1;
      op.var = j.at("var").get<std::string>() == "candidate" ? OpVar::candidate : OpVar::leader;
    } else {
      op.port = j.at("port").get<int>();
      op.var = OpVar::nbrcand;
      op.index = j.at("index").get<int>();
    }
    op.value = j.at("value").get<bool>() ? 1 : 0;
  } else if (kind == "move") {
    op.op = OpKind::move;
    op.port = j.at("port").get<int>();
  } else {
    throw std::invalid_argument("unknown op kind '" + kind + "'");
  }
  return op;
}

inline Json event_to_json(const TraceEvent& ev) {
  Json j;
  j["step"] = ev.step;
  j["id"] = ev.id;
  j["action"] = to_string(ev.action);
  if (ev.action == ActionKind::erode) {
    j["rule"] = static_cast<int>(ev.rule);
  } else {
    j["rule"] = nullptr;
  }
  j["round"] = ev.round;
  Json ops = Json::array();
  for (const OpRecord& op : ev.ops) ops.push_back(op_to_json(op));
  j["ops"] = std::move(ops);
  return j;
}

inline TraceEvent event_from_json(const Json& j) {
  TraceEvent ev;
  ev.step = j.at("step").get<std::int64_t>();
  ev.id = j.at("id").get<int>();
  ev.action = action_from_string(j.at("action").get<std::string>());
  if (!j.at("rule").is_null()) ev.rule = static_cast<ErosionRule>(j.at("rule").get<int>());
  ev.round = j.at("round").get<std::int64_t>();
  for (const auto& op : j.at("ops")) ev.ops.push_back(op_from_json(op));
  return ev;
}

inline Json metrics_to_json(const RunMetrics& m) {
  Json j;
  j["format"] = kMetricsFormat;
  j["version"] = kMetricsVersion;
  j["n"] = m.n;
  j["dim"] = to_string(m.dim);
  j["mode"] = to_string(m.mode);
  j["policy"] = m.policy;
  j["seed"] = m.seed;
  j["rounds"] = m.rounds;
  j["erosions"] = m.erosions;
  j["leader"] = m.leader;
  j["steps"] = m.steps;
  j["rule1"] = m.rule_counts[1];
  j["rule2"] = m.rule_counts[2];
  j["rule3"] = m.rule_counts[3];
  j["wall_ms"] = m.wall_ms;
  return j;
}

inline RunMetrics metrics_from_json(const Json& j) {
  if (!j.contains("format") || j.at("format") != kMetricsFormat) {
    throw std::invalid_argument("not an " + std::string(kMetricsFormat) + " document");
  }
  RunMetrics m;
  m.n = j.at("n").get<int>();
  m.dim = dim_from_string(j.at("dim").get<std::string>());
  m.mode = concurrency_from_string(j.at("mode").get<std::string>());
  m.policy = j.at("policy").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.rounds = j.at("rounds").get<std::int64_t>();
  m.erosions = j.at("erosions").get<int>();
  m.leader = j.at("leader").get<int>();
  m.steps = j.at("steps").get<std::int64_t>();
  m.rule_counts[1] = j.at("rule1").get<int>();
  m.rule_counts[2] = j.at("rule2").get<int>();
  m.rule_counts[3] = j.at("rule3").get<int>();
  m.wall_ms = j.at("wall_ms").get<double>();
  return m;
}

// --- trace files ------------------------------------------------------------

struct Trace {
  TraceHeader header;
  std::vector<TraceEvent> events;
  RunMetrics result;
};

inline std::string serialize_trace(const Trace& t) {
  std::ostringstream out;
  Json h;
  h["format"] = kTraceFormat;
  h["version"] = kTraceVersion;
  h["dim"] = to_string(t.header.dim);
  h["n"] = t.header.n;
  h["mode"] = to_string(t.header.mode);
  h["policy"] = t.header.policy;
  h["seed"] = t.header.seed;
  out << h.dump() << '\n';
  for (const TraceEvent& ev : t.events) out << event_to_json(ev).dump() << '\n';
  Json r;
  r["result"] = metrics_to_json(t.result);
  out << r.dump() << '\n';
  return out.str();
}

inline Trace parse_trace(std::istream& in) {
  Trace t;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty trace");
  const Json h = Json::parse(line);
  if (!h.contains("format") || h.at("format") != kTraceFormat) {
    throw std::invalid_argument("not an " + std::string(kTraceFormat) + " stream");
  }
  if (h.at("version").get<int>() != kTraceVersion) throw std::invalid_argument("unsupported trace version");
  t.header.dim = dim_from_string(h.at("dim").get<std::string>());
  t.header.n = h.at("n").get<int>();
  t.header.mode = concurrency_from_string(h.at("mode").get<std::string>());
  t.header.policy = h.at("policy").get<std::string>();
  t.header.seed = h.at("seed").get<std::uint64_t>();
  bool saw_result = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    if (j.contains("result")) {
      t.result = metrics_from_json(j.at("result"));
      saw_result = true;
    } else {
      t.events.push_back(event_from_json(j));
    }
  }
  if (!saw_result) throw std::invalid_argument("trace has no result line");
  return t;
}

inline Trace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_trace(in);
}

inline void save_trace(const Trace& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize_trace(t);
}

}  // namespace amoebot
