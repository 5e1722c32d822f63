// erosim: instance generation, simulation runs, trace replay, topology
// diagnostics, geometric oracles, and metrics aggregation for erosion-based
// leader election on the triangular / FCC lattices.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amoebot/config.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/oracles.hpp"
#include "amoebot/replay.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/stats.hpp"
#include "amoebot/trace.hpp"

namespace {

using namespace amoebot;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string dim = "3d";
  std::string policy = "uniform-random";
  std::string mode = "sequential";
  std::string limits;  // "max-steps=N,lock-attempts=N"
};

RunLimits parse_limits(const std::string& text) {
  RunLimits limits;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--limits entries must be key=value");
    const std::string key = item.substr(0, eq);
    const long long value = std::stoll(item.substr(eq + 1));
    if (key == "max-steps") {
      limits.max_steps = value;
    } else if (key == "lock-attempts") {
      limits.lock_attempt_budget = value;
    } else {
      throw CLI::ValidationError("unknown limit '" + key + "'");
    }
  }
  return limits;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

int cmd_gen(const GlobalOptions& g, const std::string& shape, int size,
            const std::string& orientations, const std::string& out_path) {
  Configuration cfg = generate(shape_from_string(shape), size, g.seed, dim_from_string(g.dim));
  if (orientations == "random") {
    cfg.orientation_mode = OrientationMode::random;
    cfg.orientation_seed = g.seed;
  } else if (orientations != "identity") {
    throw CLI::ValidationError("--orientations must be identity or random");
  }
  save_configuration(cfg, out_path);
  std::cout << "wrote " << out_path << ": " << to_string(cfg.dim) << " " << shape << " with "
            << cfg.size() << " amoebots\n";
  return 0;
}

int cmd_run(const GlobalOptions& g, const std::string& config_path, const std::string& trace_path,
            const std::string& metrics_path, bool check_safety, bool skip_validation) {
  const Configuration cfg = load_configuration(config_path);
  AdversaryPolicy policy{policy_from_string(g.policy), g.seed, {}};
  RunLimits limits = parse_limits(g.limits);
  limits.check_safety_each_erode = check_safety;

  const RunResult result =
      run(cfg, concurrency_from_string(g.mode), policy, limits, !skip_validation);

  if (!trace_path.empty()) save_trace(result.trace, trace_path);
  if (!metrics_path.empty()) write_file(metrics_path, metrics_to_json(result.trace.result).dump(2) + "\n");

  const RunMetrics& m = result.trace.result;
  std::cout << "n=" << m.n << " dim=" << to_string(m.dim) << " mode=" << to_string(m.mode)
            << " policy=" << m.policy << " seed=" << m.seed << " rounds=" << m.rounds
            << " erosions=" << m.erosions << " leader=" << m.leader << " rule3=" << m.rule_counts[3]
            << "\n";
  if (!result.ok) {
    std::cerr << "invariant violation at step " << result.violating_step << ": " << result.violation
              << "\n";
    return 1;
  }
  return 0;
}

int cmd_replay(const std::string& config_path, const std::string& trace_path,
               const std::string& mode, const std::string& report_path) {
  const Configuration cfg = load_configuration(config_path);
  const Trace trace = load_trace(trace_path);
  const ReplayReport report = replay_trace(cfg, trace, replay_mode_from_string(mode));

  Json j;
  j["ok"] = report.ok;
  j["events_replayed"] = report.events_replayed;
  j["erode_checks"] = report.erode_checks;
  j["rounds_checked"] = report.rounds_checked;
  if (!report.ok) {
    j["first_divergent_step"] = report.first_divergent_step;
    j["message"] = report.message;
  }
  if (!report_path.empty()) write_file(report_path, j.dump(2) + "\n");

  if (report.ok) {
    std::cout << "replay ok: " << report.events_replayed << " events";
    if (report.erode_checks > 0) std::cout << ", " << report.erode_checks << " topology checks";
    std::cout << "\n";
    return 0;
  }
  std::cerr << "replay diverged at step " << report.first_divergent_step << ": " << report.message
            << "\n";
  return 1;
}

int cmd_check_topology(const std::string& config_path) {
  const Configuration cfg = load_configuration(config_path);
  // Diagnostic command: inspects whatever the file holds, valid or not.
  for (const NodePos& p : cfg.nodes) require_valid_node(p);
  const bool connected = is_connected(cfg.nodes);
  const DualComplex cx = build_dual_complex(cfg.nodes, cfg.dim);
  const BettiNumbers b = betti(cx);
  std::cout << "n=" << cfg.size() << " dim=" << to_string(cfg.dim) << "\n";
  std::cout << "connected: " << (connected ? "yes" : "no") << "\n";
  std::cout << "betti: b0=" << b.b0 << " b1=" << b.b1 << " b2=" << b.b2 << "\n";
  std::cout << "contractible: " << (b == BettiNumbers{1, 0, 0} ? "yes" : "no") << "\n";
  if (cfg.dim == Dim::three) {
    std::cout << "boundary genus:";
    for (int gnum : boundary_genus(cx)) std::cout << ' ' << gnum;
    std::cout << "\n";
  } else {
    // 2D boundary components are closed curves; report their count.
    int loops = 0;
    std::unordered_map<int, int> edge_use;
    for (const DualFace& f : cx.faces) {
      for (int k = 0; k < f.arity; ++k) ++edge_use[f.edges[k]];
    }
    std::vector<std::array<int, 2>> bedges;
    for (const auto& [e, uses] : edge_use) {
      if (uses == 1) bedges.push_back(cx.edges[static_cast<std::size_t>(e)]);
    }
    std::unordered_map<int, std::vector<int>> adj;
    for (std::size_t i = 0; i < bedges.size(); ++i) {
      adj[bedges[i][0]].push_back(static_cast<int>(i));
      adj[bedges[i][1]].push_back(static_cast<int>(i));
    }
    std::vector<bool> seen(bedges.size(), false);
    for (std::size_t i = 0; i < bedges.size(); ++i) {
      if (seen[i]) continue;
      ++loops;
      std::vector<int> stack{static_cast<int>(i)};
      seen[i] = true;
      while (!stack.empty()) {
        const int e = stack.back();
        stack.pop_back();
        for (int v : {bedges[static_cast<std::size_t>(e)][0], bedges[static_cast<std::size_t>(e)][1]}) {
          for (int f : adj[v]) {
            if (!seen[static_cast<std::size_t>(f)]) {
              seen[static_cast<std::size_t>(f)] = true;
              stack.push_back(f);
            }
          }
        }
      }
    }
    std::cout << "boundary loops: " << loops << "\n";
  }
  return 0;
}

int cmd_verify_oracles(const GlobalOptions& g, const std::string& oracle, int samples, int min_size,
                       int max_size, const std::string& report_path) {
  Json j;
  bool ok = false;
  if (oracle == "small-neighborhoods") {
    const SmallNeighborhoodReport r = verify_small_neighborhoods_hole_free();
    ok = r.passed();
    j["oracle"] = oracle;
    j["subsets_checked"] = r.subsets_checked;
    j["mask_checksum"] = r.mask_checksum;
    j["violations"] = r.violations;
    j["inconsistencies"] = r.inconsistencies;
    std::cout << "small-neighborhoods: " << r.subsets_checked << " subsets, "
              << r.violations.size() << " violations\n";
  } else if (oracle == "vertex-angles") {
    const VertexAngleReport r = verify_vertex_angles();
    ok = r.passed();
    j["oracle"] = oracle;
    j["subsets_checked"] = r.subsets_checked;
    j["included"] = r.included;
    j["mask_checksum"] = r.mask_checksum;
    Json excluded = Json::array();
    for (const VertexAngleCase& c : r.excluded) {
      excluded.push_back({{"mask", c.mask}, {"triangles", c.triangles}});
    }
    j["excluded"] = std::move(excluded);
    Json violations = Json::array();
    for (const VertexAngleCase& c : r.violations) {
      violations.push_back({{"mask", c.mask}, {"triangles", c.triangles}});
    }
    j["violations"] = std::move(violations);
    std::cout << "vertex-angles: " << r.subsets_checked << " subsets, " << r.included
              << " vertices, " << r.excluded.size() << " excluded, " << r.violations.size()
              << " violations\n";
  } else if (oracle == "progress") {
    const ProgressSampleReport r = sample_progress_lemma(samples, min_size, max_size, g.seed);
    ok = r.passed();
    j["oracle"] = oracle;
    j["requested"] = r.requested;
    j["generated"] = r.generated;
    j["skipped"] = r.skipped;
    j["counterexample_seeds"] = r.counterexample_seeds;
    std::cout << "progress: " << r.generated << " configurations sampled, "
              << r.counterexample_seeds.size() << " counterexamples, " << r.skipped
              << " skipped\n";
  } else {
    throw CLI::ValidationError("--oracle must be small-neighborhoods, vertex-angles or progress");
  }
  j["passed"] = ok;
  if (!report_path.empty()) write_file(report_path, j.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_stats(const std::string& out_path, const std::vector<std::string>& metrics_paths) {
  std::vector<RunMetrics> rows;
  for (const std::string& path : metrics_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    rows.push_back(metrics_from_json(Json::parse(ss.str())));
  }
  const std::string csv = metrics_to_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  std::cout << summary_to_text(summarize(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"erosion-based leader election simulator for amoebot systems"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--dim", g.dim, "lattice mode: 2d or 3d")->check(CLI::IsMember({"2d", "3d"}));
  app.add_option("--policy", g.policy, "adversary policy")
      ->check(CLI::IsMember({"uniform-random", "fixed-priority", "round-stretcher"}));
  app.add_option("--mode", g.mode, "concurrency mode")
      ->check(CLI::IsMember({"sequential", "async"}));
  app.add_option("--limits", g.limits, "limits, e.g. max-steps=100000,lock-attempts=50000");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a configuration file");
  std::string gen_shape = "blob";
  int gen_size = 10;
  std::string gen_orientations = "identity";
  std::string gen_out;
  gen->add_option("--shape", gen_shape, "blob | line | plane-disk | sphere-ish | square-gadget");
  gen->add_option("--size", gen_size, "number of amoebots")->required();
  gen->add_option("--orientations", gen_orientations, "identity | random");
  gen->add_option("-o,--out", gen_out, "output file")->required();

  // run
  auto* runc = app.add_subcommand("run", "simulate a configuration to termination");
  std::string run_config, run_trace, run_metrics;
  bool run_check_safety = false;
  bool run_skip_validation = false;
  runc->add_option("--config", run_config, "configuration file")->required();
  runc->add_option("--trace", run_trace, "trace output file (JSON lines)");
  runc->add_option("--metrics", run_metrics, "metrics output file (JSON)");
  runc->add_flag("--check-safety", run_check_safety,
                 "check the candidate structure after every erosion");
  runc->add_flag("--skip-validation", run_skip_validation,
                 "skip the connectivity/contractibility precheck");

  // replay
  auto* rep = app.add_subcommand("replay", "re-execute a trace and check it");
  std::string rep_config, rep_trace, rep_report;
  std::string rep_mode = "check-guards";
  rep->add_option("--config", rep_config, "configuration file")->required();
  rep->add_option("--trace", rep_trace, "trace file")->required();
  rep->add_option("--mode", rep_mode, "check-guards | check-topology-each-erode")
      ->check(CLI::IsMember({"check-guards", "check-topology-each-erode"}));
  rep->add_option("--report", rep_report, "report output file (JSON)");

  // check-topology
  auto* topo = app.add_subcommand("check-topology", "betti numbers and boundary of a configuration");
  std::string topo_config;
  topo->add_option("--config", topo_config, "configuration file")->required();

  // verify-oracles
  auto* ora = app.add_subcommand("verify-oracles", "run the exhaustive geometric oracles");
  std::string ora_kind;
  int ora_samples = 1000;
  int ora_min = 2, ora_max = 200;
  std::string ora_report;
  ora->add_option("--oracle", ora_kind, "small-neighborhoods | vertex-angles | progress")
      ->required();
  ora->add_option("--samples", ora_samples, "sample count (progress oracle)");
  ora->add_option("--min-size", ora_min, "minimum configuration size (progress oracle)");
  ora->add_option("--max-size", ora_max, "maximum configuration size (progress oracle)");
  ora->add_option("--report", ora_report, "report output file (JSON)");

  // stats
  auto* st = app.add_subcommand("stats", "aggregate metrics files into a CSV table");
  std::string st_out;
  std::vector<std::string> st_inputs;
  st->add_option("-o,--out", st_out, "CSV output file (stdout if omitted)");
  st->add_option("files", st_inputs, "metrics JSON files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(g, gen_shape, gen_size, gen_orientations, gen_out);
    if (*runc) return cmd_run(g, run_config, run_trace, run_metrics, run_check_safety, run_skip_validation);
    if (*rep) return cmd_replay(rep_config, rep_trace, rep_mode, rep_report);
    if (*topo) return cmd_check_topology(topo_config);
    if (*ora) return cmd_verify_oracles(g, ora_kind, ora_samples, ora_min, ora_max, ora_report);
    if (*st) return cmd_stats(st_out, st_inputs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
