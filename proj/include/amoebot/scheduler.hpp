#pragma once
// Adversarial schedulers. The sequential engine commits one whole action per
// step; the async engine interleaves at operation granularity and wraps each
// action body in an atomically acquired neighborhood lock. Both share the
// round accountant: round i completes once every amoebot that was enabled or
// mid-action at the round's start has either committed an action or been
// observed disabled.

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "amoebot/engine.hpp"
#include "amoebot/topology.hpp"
#include "amoebot/trace.hpp"

namespace amoebot {

enum class PolicyKind : std::uint8_t { uniform_random, fixed_priority, round_stretcher, scripted };

inline const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::uniform_random: return "uniform-random";
    case PolicyKind::fixed_priority: return "fixed-priority";
    case PolicyKind::round_stretcher: return "round-stretcher";
    case PolicyKind::scripted: return "scripted";
  }
  return "?";
}

inline PolicyKind policy_from_string(const std::string& s) {
  if (s == "uniform-random") return PolicyKind::uniform_random;
  if (s == "fixed-priority") return PolicyKind::fixed_priority;
  if (s == "round-stretcher") return PolicyKind::round_stretcher;
  if (s == "scripted") return PolicyKind::scripted;
  throw std::invalid_argument("unknown policy '" + s + "'");
}

struct AdversaryPolicy {
  PolicyKind kind = PolicyKind::uniform_random;
  std::uint64_t seed = 0;
  std::vector<int> script;  // scripted kind only
};

struct RunLimits {
  std::int64_t max_steps = 0;            // 0 = derived from n
  std::int64_t lock_attempt_budget = 100000;  // consecutive failed acquisitions
  bool check_safety_each_erode = false;  // candidate structure stays connected+contractible
};

// ---------------------------------------------------------------------------

class RoundAccountant {
 public:
  template <typename Pred>
  void reset(int n, Pred enabled_or_executing) {
    round_ = 0;
    pending_.assign(static_cast<std::size_t>(n), 0);
    pending_count_ = 0;
    for (int id = 0; id < n; ++id) {
      if (enabled_or_executing(id)) {
        pending_[static_cast<std::size_t>(id)] = 1;
        ++pending_count_;
      }
    }
  }

  bool pending(int id) const { return pending_[static_cast<std::size_t>(id)] != 0; }
  int pending_count() const { return pending_count_; }
  std::int64_t round() const { return round_; }

  void satisfy(int id) {
    if (pending_[static_cast<std::size_t>(id)]) {
      pending_[static_cast<std::size_t>(id)] = 0;
      --pending_count_;
    }
  }

  // Completes the round and snapshots the next enabled set when every member
  // of the current snapshot has been satisfied.
  template <typename Pred>
  void maybe_advance(Pred enabled_or_executing) {
    if (pending_count_ != 0) return;
    ++round_;
    for (std::size_t id = 0; id < pending_.size(); ++id) {
      if (enabled_or_executing(static_cast<int>(id))) {
        pending_[id] = 1;
        ++pending_count_;
      }
    }
  }

 private:
  std::int64_t round_ = 0;
  std::vector<std::uint8_t> pending_;
  int pending_count_ = 0;
};

// ---------------------------------------------------------------------------

class PolicyDriver {
 public:
  explicit PolicyDriver(const AdversaryPolicy& policy)
      : kind_(policy.kind), rng_(policy.seed), script_(policy.script) {}

  // `preferred` are choices the round-stretcher ranks first (those whose
  // commit cannot close the current round).
  int choose(const std::vector<int>& choices, const RoundAccountant& acct) {
    if (choices.empty()) throw std::logic_error("policy invoked with no enabled amoebot");
    switch (kind_) {
      case PolicyKind::fixed_priority:
        return choices.front();
      case PolicyKind::uniform_random: {
        std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
        return choices[pick(rng_)];
      }
      case PolicyKind::round_stretcher:
        for (int id : choices) {
          if (!acct.pending(id)) return id;  // keep the round open
        }
        return choices.front();
      case PolicyKind::scripted: {
        if (script_pos_ >= script_.size()) {
          throw std::invalid_argument("scripted policy ran out of entries");
        }
        const int id = script_[script_pos_++];
        if (std::find(choices.begin(), choices.end(), id) == choices.end()) {
          throw std::invalid_argument("scripted policy picked amoebot " + std::to_string(id) +
                                      " which is not schedulable at step " +
                                      std::to_string(script_pos_ - 1));
        }
        return id;
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  PolicyKind kind_;
  std::mt19937_64 rng_;
  std::vector<int> script_;
  std::size_t script_pos_ = 0;
};

// ---------------------------------------------------------------------------
// Sequential engine. Copyable, so tests can branch over every adversary
// choice for exhaustive schedule enumeration.

class SequentialEngine {
 public:
  explicit SequentialEngine(System sys, bool check_safety = false)
      : sys_(std::move(sys)), check_safety_(check_safety) {
    cache_.resize(static_cast<std::size_t>(sys_.size()));
    for (int id = 0; id < sys_.size(); ++id) cache_[static_cast<std::size_t>(id)] = sys_.enabled_action(id);
    acct_.reset(sys_.size(), [&](int id) { return accountable(id); });
  }

  const System& system() const { return sys_; }
  std::int64_t rounds() const { return acct_.round(); }
  const RoundAccountant& accountant() const { return acct_; }
  int erosions() const { return erosions_; }
  int leader() const { return leader_; }
  std::int64_t steps() const { return steps_; }
  const std::array<int, 4>& rule_counts() const { return rule_counts_; }

  bool terminated() const { return leader_ >= 0 && enabled().empty(); }

  // A declared leader keeps a true declare guard forever; re-running it is an
  // idempotent no-op, so leaders are not offered to the adversary. On valid
  // inputs nothing else is enabled once a leader exists; on invalid inputs
  // execution continues until the engine catches the second declaration.
  std::vector<int> enabled() const {
    std::vector<int> out;
    for (int id = 0; id < sys_.size(); ++id) {
      if (cache_[static_cast<std::size_t>(id)] && !sys_.state(id).leader) out.push_back(id);
    }
    return out;
  }

  std::optional<std::pair<ActionKind, ErosionRule>> action_of(int id) const {
    return cache_[static_cast<std::size_t>(id)];
  }

  TraceEvent commit(int id) {
    const auto entry = cache_[static_cast<std::size_t>(id)];
    if (!entry) throw std::logic_error("activated amoebot has no enabled action");
    if (sys_.enabled_action(id) != entry) {
      throw std::logic_error("enabled-action cache out of date at commit");
    }
    const auto [kind, rule] = *entry;

    TraceEvent ev;
    ev.step = steps_++;
    ev.id = id;
    ev.action = kind;
    ev.rule = rule;
    ev.round = acct_.round();
    ev.ops = sys_.plan_action(id, kind);
    for (const OpRecord& op : ev.ops) sys_.apply_op(id, op);

    if (kind == ActionKind::erode) {
      ++erosions_;
      ++rule_counts_[static_cast<std::size_t>(rule)];
      if (check_safety_) check_structure_safety();
    } else if (kind == ActionKind::declare_leader) {
      if (sys_.leader_count() != 1) throw EngineViolation("more than one leader declared");
      leader_ = id;
    }
    check_local_mirrors(id);

    for (int d : sys_.guard_scope(id)) {
      cache_[static_cast<std::size_t>(d)] = sys_.enabled_action(d);
    }
    acct_.satisfy(id);
    for (int d : sys_.guard_scope(id)) {
      if (acct_.pending(d) && !accountable(d)) acct_.satisfy(d);
    }
    acct_.maybe_advance([&](int a) { return accountable(a); });
    return ev;
  }

 private:
  bool accountable(int id) const {
    return cache_[static_cast<std::size_t>(id)].has_value() && !sys_.state(id).leader;
  }

  // The writes of a commit may only touch the committer's neighborhood;
  // verify the mirror there instead of rescanning the whole system.
  void check_local_mirrors(int id) const {
    const bool self_cand = sys_.state(id).candidate == Candidacy::yes;
    for (int p = 0; p < sys_.ports(); ++p) {
      const int nbr = sys_.neighbor_id(id, p);
      if (nbr < 0) continue;
      const Vec3 toward = offset_of_port(sys_.state(id).orientation, p);
      const int slot = port_of(sys_.state(nbr).orientation, -toward);
      if (static_cast<bool>(sys_.state(nbr).nbrcand[static_cast<std::size_t>(slot)]) != self_cand) {
        throw EngineViolation("nbrcand mirror out of sync after commit by " + std::to_string(id));
      }
    }
  }

  void check_structure_safety() const {
    const std::vector<NodePos> structure = sys_.candidate_structure();
    if (!is_connected(structure)) {
      throw EngineViolation("candidate structure disconnected after erosion");
    }
    if (!is_contractible(structure, sys_.dim())) {
      throw EngineViolation("candidate structure has a hole after erosion");
    }
  }

  System sys_;
  bool check_safety_ = false;
  std::vector<std::optional<std::pair<ActionKind, ErosionRule>>> cache_;
  RoundAccountant acct_;
  std::int64_t steps_ = 0;
  int erosions_ = 0;
  int leader_ = -1;
  std::array<int, 4> rule_counts_{};
};

// ---------------------------------------------------------------------------

struct RunResult {
  bool ok = false;
  std::string violation;
  std::int64_t violating_step = -1;
  Trace trace;
};

namespace detail {

inline std::int64_t default_step_budget(int n, Concurrency mode) {
  // Sequential terminates in exactly 2n commits; async additionally spends
  // one step per operation and lock attempt.
  return mode == Concurrency::sequential ? 4 * static_cast<std::int64_t>(n) + 64
                                         : 512 * static_cast<std::int64_t>(n) + 4096;
}

inline void finish_metrics(RunMetrics& m, const std::chrono::steady_clock::time_point& t0) {
  m.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline RunResult run_sequential(const Configuration& cfg, const AdversaryPolicy& policy,
                                const RunLimits& limits = {}, bool validate = true) {
  const auto t0 = std::chrono::steady_clock::now();
  if (validate) validate_configuration(cfg);

  RunResult result;
  result.trace.header = {cfg.dim, cfg.size(), Concurrency::sequential, to_string(policy.kind),
                         policy.seed};
  RunMetrics& m = result.trace.result;
  m.n = cfg.size();
  m.dim = cfg.dim;
  m.mode = Concurrency::sequential;
  m.policy = to_string(policy.kind);
  m.seed = policy.seed;

  SequentialEngine engine(System::from_config(cfg), limits.check_safety_each_erode);
  PolicyDriver driver(policy);
  const std::int64_t budget =
      limits.max_steps > 0 ? limits.max_steps : detail::default_step_budget(cfg.size(), Concurrency::sequential);

  try {
    while (true) {
      const std::vector<int> enabled = engine.enabled();
      if (enabled.empty()) {
        if (engine.leader() >= 0) break;
        throw EngineViolation("no amoebot enabled before a leader was declared");
      }
      if (engine.steps() >= budget) throw EngineViolation("step budget exceeded");
      const int pick = driver.choose(enabled, engine.accountant());
      result.trace.events.push_back(engine.commit(pick));
    }
    engine.system().check_quiescent_consistency();
    if (engine.erosions() != cfg.size() - 1) {
      throw EngineViolation("erosion count " + std::to_string(engine.erosions()) +
                            " differs from n-1");
    }
    if (engine.rounds() > cfg.size() + 1) {
      throw EngineViolation("round count " + std::to_string(engine.rounds()) + " exceeds n+1");
    }
    result.ok = true;
  } catch (const EngineViolation& e) {
    result.ok = false;
    result.violation = e.what();
    result.violating_step = engine.steps();
  }

  m.rounds = engine.rounds();
  m.erosions = engine.erosions();
  m.leader = engine.leader();
  m.steps = engine.steps();
  m.rule_counts = engine.rule_counts();
  detail::finish_metrics(m, t0);
  return result;
}

// ---------------------------------------------------------------------------
// Async engine: operation-granular interleaving under neighborhood locks.

class AsyncEngine {
 public:
  explicit AsyncEngine(System sys, const RunLimits& limits)
      : sys_(std::move(sys)), limits_(limits) {
    cache_.resize(static_cast<std::size_t>(sys_.size()));
    for (int id = 0; id < sys_.size(); ++id) cache_[static_cast<std::size_t>(id)] = sys_.enabled_action(id);
    lock_holder_.assign(static_cast<std::size_t>(sys_.size()), -1);
    blocked_.assign(static_cast<std::size_t>(sys_.size()), 0);
    inflight_.resize(static_cast<std::size_t>(sys_.size()));
    acct_.reset(sys_.size(), [&](int id) { return enabled_or_executing(id); });
  }

  const System& system() const { return sys_; }
  const RoundAccountant& accountant() const { return acct_; }
  std::int64_t rounds() const { return acct_.round(); }
  int erosions() const { return erosions_; }
  int leader() const { return leader_; }
  std::int64_t steps() const { return steps_; }
  const std::array<int, 4>& rule_counts() const { return rule_counts_; }
  const std::vector<TraceEvent>& committed() const { return committed_; }

  bool terminated() const { return leader_ >= 0 && schedulable().empty(); }

  // Amoebots the adversary can advance: everything mid-action plus enabled
  // non-leaders that have not failed a lock attempt since the last release.
  // (An enabled-but-blocked amoebot implies a held lock, hence something
  // in flight, so this set is only empty at quiescent points.)
  std::vector<int> schedulable() const {
    std::vector<int> out;
    for (int id = 0; id < sys_.size(); ++id) {
      if (inflight_[static_cast<std::size_t>(id)].has_value()) {
        out.push_back(id);
      } else if (cache_[static_cast<std::size_t>(id)] && !blocked_[static_cast<std::size_t>(id)] &&
                 !sys_.state(id).leader) {
        out.push_back(id);
      }
    }
    return out;
  }

  // One interleaver step on behalf of `id`.
  void step(int id) {
    ++steps_;
    auto& fl = inflight_[static_cast<std::size_t>(id)];
    if (fl) {
      const OpRecord& op = fl->ops[fl->next];
      sys_.apply_op(id, op);
      refresh_after_op(id, op);
      if (++fl->next == fl->ops.size()) commit(id);
      return;
    }
    // Lock attempt: {id} union N(id), atomically or not at all.
    if (!try_lock(id)) {
      blocked_[static_cast<std::size_t>(id)] = 1;
      if (++failed_attempts_ > limits_.lock_attempt_budget) {
        throw EngineViolation("lock acquisition starved beyond the attempt budget");
      }
      return;
    }
    failed_attempts_ = 0;
    // Guard decision is authoritative only under the lock; the scheduling
    // hint may be stale.
    const auto entry = sys_.enabled_action(id);
    cache_[static_cast<std::size_t>(id)] = entry;
    if (!entry) {
      unlock(id);
      return;
    }
    InFlight start;
    start.kind = entry->first;
    start.rule = entry->second;
    start.ops = sys_.plan_action(id, start.kind);
    start.next = 0;
    fl = std::move(start);
    ++inflight_count_;
  }

 private:
  struct InFlight {
    ActionKind kind = ActionKind::setup;
    ErosionRule rule = ErosionRule::none;
    std::vector<OpRecord> ops;
    std::size_t next = 0;
  };

  bool enabled_or_executing(int id) const {
    return inflight_[static_cast<std::size_t>(id)].has_value() ||
           (cache_[static_cast<std::size_t>(id)].has_value() && !sys_.state(id).leader);
  }

  bool try_lock(int id) {
    if (lock_holder_[static_cast<std::size_t>(id)] >= 0) return false;
    for (int p = 0; p < sys_.ports(); ++p) {
      const int nbr = sys_.neighbor_id(id, p);
      if (nbr >= 0 && lock_holder_[static_cast<std::size_t>(nbr)] >= 0) return false;
    }
    lock_holder_[static_cast<std::size_t>(id)] = id;
    for (int p = 0; p < sys_.ports(); ++p) {
      const int nbr = sys_.neighbor_id(id, p);
      if (nbr >= 0) lock_holder_[static_cast<std::size_t>(nbr)] = id;
    }
    return true;
  }

  void unlock(int id) {
    lock_holder_[static_cast<std::size_t>(id)] = -1;
    for (int p = 0; p < sys_.ports(); ++p) {
      const int nbr = sys_.neighbor_id(id, p);
      if (nbr >= 0) lock_holder_[static_cast<std::size_t>(nbr)] = -1;
    }
    // A release may unblock previously failed acquisitions.
    std::fill(blocked_.begin(), blocked_.end(), 0);
  }

  // Refresh enabled hints and round bookkeeping for everyone whose guard can
  // see the state the op changed.
  void refresh_after_op(int actor, const OpRecord& op) {
    if (op.op != OpKind::write) return;
    const int target = op.port < 0 ? actor : sys_.neighbor_id(actor, op.port);
    refresh_ball(target);
    // The round can complete on a mid-action disable, not only on a commit.
    acct_.maybe_advance([&](int a) { return enabled_or_executing(a); });
  }

  void refresh_ball(int center) {
    cache_[static_cast<std::size_t>(center)] = sys_.enabled_action(center);
    if (acct_.pending(center) && !enabled_or_executing(center)) acct_.satisfy(center);
    for (int p = 0; p < sys_.ports(); ++p) {
      const int nbr = sys_.neighbor_id(center, p);
      if (nbr < 0) continue;
      cache_[static_cast<std::size_t>(nbr)] = sys_.enabled_action(nbr);
      if (acct_.pending(nbr) && !enabled_or_executing(nbr)) acct_.satisfy(nbr);
    }
  }

  void commit(int id) {
    auto& fl = inflight_[static_cast<std::size_t>(id)];
    TraceEvent ev;
    ev.step = steps_ - 1;
    ev.id = id;
    ev.action = fl->kind;
    ev.rule = fl->rule;
    ev.round = acct_.round();
    ev.ops = std::move(fl->ops);

    if (fl->kind == ActionKind::erode) {
      ++erosions_;
      ++rule_counts_[static_cast<std::size_t>(fl->rule)];
    } else if (fl->kind == ActionKind::declare_leader) {
      if (sys_.leader_count() != 1) throw EngineViolation("more than one leader declared");
      leader_ = id;
    }

    fl.reset();
    --inflight_count_;
    unlock(id);

    cache_[static_cast<std::size_t>(id)] = sys_.enabled_action(id);
    acct_.satisfy(id);
    acct_.maybe_advance([&](int a) { return enabled_or_executing(a); });
    committed_.push_back(std::move(ev));

    if (limits_.check_safety_each_erode && committed_.back().action == ActionKind::erode &&
        inflight_count_ == 0) {
      const std::vector<NodePos> structure = sys_.candidate_structure();
      if (!is_connected(structure) || !is_contractible(structure, sys_.dim())) {
        throw EngineViolation("candidate structure unsafe after erosion commit");
      }
    }
  }

  System sys_;
  RunLimits limits_;
  std::vector<std::optional<std::pair<ActionKind, ErosionRule>>> cache_;
  std::vector<std::optional<InFlight>> inflight_;
  std::vector<int> lock_holder_;
  std::vector<std::uint8_t> blocked_;
  RoundAccountant acct_;
  std::vector<TraceEvent> committed_;
  std::int64_t steps_ = 0;
  std::int64_t failed_attempts_ = 0;
  int inflight_count_ = 0;
  int erosions_ = 0;
  int leader_ = -1;
  std::array<int, 4> rule_counts_{};
};

inline RunResult run_async(const Configuration& cfg, const AdversaryPolicy& policy,
                           const RunLimits& limits = {}, bool validate = true) {
  const auto t0 = std::chrono::steady_clock::now();
  if (validate) validate_configuration(cfg);

  RunResult result;
  result.trace.header = {cfg.dim, cfg.size(), Concurrency::async, to_string(policy.kind), policy.seed};
  RunMetrics& m = result.trace.result;
  m.n = cfg.size();
  m.dim = cfg.dim;
  m.mode = Concurrency::async;
  m.policy = to_string(policy.kind);
  m.seed = policy.seed;

  AsyncEngine engine(System::from_config(cfg), limits);
  PolicyDriver driver(policy);
  const std::int64_t budget =
      limits.max_steps > 0 ? limits.max_steps : detail::default_step_budget(cfg.size(), Concurrency::async);

  try {
    while (true) {
      const std::vector<int> choices = engine.schedulable();
      if (choices.empty()) {
        if (engine.leader() >= 0) break;
        throw EngineViolation("no amoebot schedulable before a leader was declared");
      }
      if (engine.steps() >= budget) throw EngineViolation("step budget exceeded");
      const int pick = driver.choose(choices, engine.accountant());
      engine.step(pick);
    }
    engine.system().check_quiescent_consistency();
    if (engine.erosions() != cfg.size() - 1) {
      throw EngineViolation("erosion count " + std::to_string(engine.erosions()) +
                            " differs from n-1");
    }
    result.ok = true;
  } catch (const EngineViolation& e) {
    result.ok = false;
    result.violation = e.what();
    result.violating_step = engine.steps();
  }

  result.trace.events = engine.committed();
  m.rounds = engine.rounds();
  m.erosions = engine.erosions();
  m.leader = engine.leader();
  m.steps = engine.steps();
  m.rule_counts = engine.rule_counts();
  detail::finish_metrics(m, t0);
  return result;
}

inline RunResult run(const Configuration& cfg, Concurrency mode, const AdversaryPolicy& policy,
                     const RunLimits& limits = {}, bool validate = true) {
  return mode == Concurrency::sequential ? run_sequential(cfg, policy, limits, validate)
                                         : run_async(cfg, policy, limits, validate);
}

// ---------------------------------------------------------------------------
// Concurrency-framework conventions. The checks are mechanical, over guard
// side effects and operation logs: validity (enabled actions executed in
// isolation succeed and guards are pure), phase structure (a compute phase of
// connected/read/write operations, at most one trailing move), and
// monotonicity (trivial for stationary algorithms).

struct ActionSpec {
  std::string name;
  std::function<bool(System&, int)> guard;
  std::function<std::vector<OpRecord>(const System&, int)> plan;
};

inline std::vector<ActionSpec> algorithm_actions() {
  return {
      {"setup", [](System& s, int id) { return s.guard_setup(id); },
       [](const System& s, int id) { return s.plan_action(id, ActionKind::setup); }},
      {"erode", [](System& s, int id) { return s.erode_rule(id) != ErosionRule::none; },
       [](const System& s, int id) { return s.plan_action(id, ActionKind::erode); }},
      {"declare_leader", [](System& s, int id) { return s.guard_declare(id); },
       [](const System& s, int id) { return s.plan_action(id, ActionKind::declare_leader); }},
  };
}

struct ConventionsReport {
  bool validity = true;
  bool phase_structure = true;
  bool monotonicity = true;
  std::vector<std::string> notes;

  bool all_ok() const { return validity && phase_structure && monotonicity; }
};

namespace detail {

inline bool states_equal(const System& a, const System& b) {
  if (a.size() != b.size()) return false;
  for (int id = 0; id < a.size(); ++id) {
    const AmoebotState& x = a.state(id);
    const AmoebotState& y = b.state(id);
    if (x.candidate != y.candidate || x.leader != y.leader || x.nbrcand != y.nbrcand) return false;
  }
  return true;
}

}  // namespace detail

inline ConventionsReport check_conventions(const std::vector<ActionSpec>& actions,
                                           const std::vector<Configuration>& samples) {
  ConventionsReport report;
  bool any_move = false;

  for (const Configuration& cfg : samples) {
    SequentialEngine walker(System::from_config(cfg));
    while (true) {
      const System& here = walker.system();
      for (int id = 0; id < here.size(); ++id) {
        for (const ActionSpec& action : actions) {
          System probe = here;  // guards must not write
          bool enabled = false;
          try {
            enabled = action.guard(probe, id);
          } catch (const std::exception& e) {
            report.validity = false;
            report.notes.push_back("guard '" + action.name + "' failed: " + e.what());
            continue;
          }
          if (!detail::states_equal(probe, here)) {
            report.validity = false;
            report.notes.push_back("guard '" + action.name + "' wrote to public memory");
          }
          if (!enabled) continue;
          std::vector<OpRecord> ops;
          try {
            ops = action.plan(here, id);
          } catch (const std::exception& e) {
            report.validity = false;
            report.notes.push_back("plan '" + action.name + "' failed: " + e.what());
            continue;
          }
          int moves = 0;
          for (const OpRecord& op : ops) {
            if (op.op == OpKind::move) {
              ++moves;
              any_move = true;
            }
          }
          // Compute phase first, at most one trailing move.
          if (moves > 1 || (moves == 1 && ops.back().op != OpKind::move)) {
            report.phase_structure = false;
            report.notes.push_back("action '" + action.name + "' interleaves moves with communication");
          }
          if (moves > 0) {
            report.phase_structure = false;
            report.notes.push_back("action '" + action.name + "' issues a movement operation");
          }
          // Isolated execution must succeed.
          System scratch = here;
          try {
            for (const OpRecord& op : ops) scratch.apply_op(id, op);
          } catch (const std::exception& e) {
            report.validity = false;
            report.notes.push_back("action '" + action.name + "' failed in isolation: " + e.what());
          }
        }
      }
      if (walker.terminated()) break;
      const std::vector<int> enabled = walker.enabled();
      if (enabled.empty()) break;
      walker.commit(enabled.front());
    }
  }

  if (any_move) {
    report.monotonicity = false;
    report.notes.push_back("algorithm moves; monotonicity is not established by this checker");
  } else {
    report.notes.push_back("stationary algorithm: monotonicity holds trivially");
  }
  return report;
}

}  // namespace amoebot
