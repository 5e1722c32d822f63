#pragma once
// The amoebot state machine: per-amoebot public memory, the three actions
// (setup, erode, declare-leader) with their guards, and the erosion rules.
// Actions are expressed as straight-line operation plans so that the
// schedulers can execute them atomically (sequential mode) or one operation
// at a time under a neighborhood lock (async mode).

#include <array>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "amoebot/config.hpp"
#include "amoebot/geometry.hpp"

namespace amoebot {

enum class Candidacy : std::uint8_t { unset, yes, no };
enum class ActionKind : std::uint8_t { setup, erode, declare_leader };
enum class ErosionRule : std::uint8_t { none = 0, lone_neighbor = 1, connected_cluster = 2, square_diagonal = 3 };

inline const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::setup: return "setup";
    case ActionKind::erode: return "erode";
    case ActionKind::declare_leader: return "declare_leader";
  }
  return "?";
}

inline ActionKind action_from_string(const std::string& s) {
  if (s == "setup") return ActionKind::setup;
  if (s == "erode") return ActionKind::erode;
  if (s == "declare_leader") return ActionKind::declare_leader;
  throw std::invalid_argument("unknown action '" + s + "'");
}

// Raised when the simulation detects a violation of the algorithm's
// correctness guarantees (never expected on valid inputs).
struct EngineViolation : std::runtime_error {
  explicit EngineViolation(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Operations. `connected` records its result; writes carry the value written.
// Ports are the acting amoebot's own labels; nbrcand writes additionally name
// the slot in the *target's* label space. `move` exists only so that test
// mutants can be expressed; the algorithm itself is stationary.

enum class OpKind : std::uint8_t { connected, read, write, move };
enum class OpVar : std::uint8_t { none, candidate, leader, nbrcand };

struct OpRecord {
  OpKind op = OpKind::connected;
  int port = -1;                // -1 = own public memory
  OpVar var = OpVar::none;
  int index = -1;               // target-local nbrcand slot
  int value = 0;                // written value, or connected() result

  friend bool operator==(const OpRecord&, const OpRecord&) = default;
};

struct AmoebotState {
  NodePos pos;
  Orientation orientation;
  Candidacy candidate = Candidacy::unset;
  bool leader = false;
  std::array<std::uint8_t, kNumOffsets> nbrcand{};  // indexed by own port label
};

// ---------------------------------------------------------------------------

class System {
 public:
  static System from_config(const Configuration& cfg) {
    System sys;
    sys.dim_ = cfg.dim;
    const std::vector<Orientation> orientations = resolve_orientations(cfg);
    sys.bots_.reserve(cfg.nodes.size());
    for (std::size_t i = 0; i < cfg.nodes.size(); ++i) {
      require_valid_node(cfg.nodes[i]);
      if (cfg.dim == Dim::two && !in_home_plane(cfg.nodes[i])) {
        throw std::invalid_argument("2D node outside the home plane");
      }
      AmoebotState st;
      st.pos = cfg.nodes[i];
      st.orientation = orientations[i];
      if (cfg.dim == Dim::two) {
        const Vec3 img = st.orientation.apply({1, 1, 1});
        if (img != Vec3{1, 1, 1} && img != Vec3{-1, -1, -1}) {
          throw std::invalid_argument("2D amoebot orientation must preserve the home plane");
        }
      }
      if (!sys.occupancy_.emplace(st.pos, static_cast<int>(i)).second) {
        throw std::invalid_argument("duplicate node " + to_string(st.pos));
      }
      sys.bots_.push_back(st);
    }
    sys.build_adjacency();
    return sys;
  }

  Dim dim() const { return dim_; }
  int size() const { return static_cast<int>(bots_.size()); }
  int ports() const { return port_count(dim_); }
  const AmoebotState& state(int id) const { return bots_[static_cast<std::size_t>(id)]; }

  int id_at(const NodePos& p) const {
    auto it = occupancy_.find(p);
    return it == occupancy_.end() ? -1 : it->second;
  }

  // Neighbor on the amoebot's own port label, or -1.
  int neighbor_id(int id, PortLabel port) const {
    return nbr_ids_[static_cast<std::size_t>(id)][static_cast<std::size_t>(port)];
  }

  bool connected(int id, PortLabel port) const { return neighbor_id(id, port) >= 0; }

  // Ids whose guards can depend on `id`'s public memory: the two-hop ball.
  const std::vector<int>& guard_scope(int id) const {
    return two_hop_[static_cast<std::size_t>(id)];
  }

  // --- guards (pure reads of public memory) -------------------------------

  bool guard_setup(int id) const { return state(id).candidate == Candidacy::unset; }

  bool guard_declare(int id) const {
    const AmoebotState& a = state(id);
    if (a.candidate != Candidacy::yes) return false;
    for (int p = 0; p < ports(); ++p) {
      const int nbr = neighbor_id(id, p);
      if (nbr >= 0 && state(nbr).candidate != Candidacy::no) return false;
    }
    return true;
  }

  // Erode guard: a candidate, all neighbors past their first activation, and
  // one of the three erosion rules satisfied.
  ErosionRule erode_rule(int id) const {
    const AmoebotState& a = state(id);
    if (a.candidate != Candidacy::yes) return ErosionRule::none;

    std::array<int, kNumOffsets> cand_ports{};
    std::array<int, kNumOffsets> cand_offsets{};  // indices into kOffsets (world frame)
    int k = 0;
    for (int p = 0; p < ports(); ++p) {
      const int nbr = neighbor_id(id, p);
      if (nbr < 0) continue;
      const Candidacy c = state(nbr).candidate;
      if (c == Candidacy::unset) return ErosionRule::none;  // guard blocked
      if (c == Candidacy::yes) {
        cand_ports[static_cast<std::size_t>(k)] = p;
        cand_offsets[static_cast<std::size_t>(k)] =
            offset_index(offset_of_port(a.orientation, p));
        ++k;
      }
    }

    if (k == 1) return ErosionRule::lone_neighbor;
    if (k >= 2 && k <= 5 && offsets_induce_connected(cand_offsets, k)) {
      return ErosionRule::connected_cluster;
    }
    if (k == 2) {
      const int oa = cand_offsets[0];
      const int ob = cand_offsets[1];
      if (offsets_perpendicular(oa, ob) && square_catty_probe(id, cand_ports[0], cand_ports[1], oa, ob)) {
        return ErosionRule::square_diagonal;
      }
    }
    return ErosionRule::none;
  }

  std::optional<std::pair<ActionKind, ErosionRule>> enabled_action(int id) const {
    if (guard_setup(id)) return {{ActionKind::setup, ErosionRule::none}};
    const ErosionRule rule = erode_rule(id);
    if (rule != ErosionRule::none) return {{ActionKind::erode, rule}};
    if (guard_declare(id)) return {{ActionKind::declare_leader, ErosionRule::none}};
    return std::nullopt;
  }

  std::vector<ActionKind> enabled_actions(int id) const {
    std::vector<ActionKind> out;
    if (guard_setup(id)) out.push_back(ActionKind::setup);
    if (erode_rule(id) != ErosionRule::none) out.push_back(ActionKind::erode);
    if (guard_declare(id)) out.push_back(ActionKind::declare_leader);
    return out;
  }

  // --- operation plans ------------------------------------------------------

  std::vector<OpRecord> plan_action(int id, ActionKind kind) const {
    const AmoebotState& a = state(id);
    std::vector<OpRecord> ops;
    switch (kind) {
      case ActionKind::setup:
      case ActionKind::erode: {
        const int val = kind == ActionKind::setup ? 1 : 0;
        ops.push_back({OpKind::write, -1, OpVar::candidate, -1, val});
        for (int p = 0; p < ports(); ++p) {
          const int nbr = neighbor_id(id, p);
          ops.push_back({OpKind::connected, p, OpVar::none, -1, nbr >= 0 ? 1 : 0});
          if (nbr < 0) continue;
          // The neighbor's label for the edge back toward us.
          const Vec3 toward_nbr = offset_of_port(a.orientation, p);
          const int slot = port_of(state(nbr).orientation, -toward_nbr);
          ops.push_back({OpKind::write, p, OpVar::nbrcand, slot, val});
        }
        break;
      }
      case ActionKind::declare_leader:
        ops.push_back({OpKind::write, -1, OpVar::leader, -1, 1});
        break;
    }
    return ops;
  }

  // Applies one operation, enforcing the write monotonicity the algorithm
  // promises (candidacy unset->yes->no, leader false->true only).
  void apply_op(int id, const OpRecord& op) {
    AmoebotState& a = bots_[static_cast<std::size_t>(id)];
    switch (op.op) {
      case OpKind::connected: {
        const bool now = connected(id, op.port);
        if (now != (op.value != 0)) throw EngineViolation("connectivity changed in a static system");
        break;
      }
      case OpKind::read:
        break;  // reads have no state effect
      case OpKind::move:
        // Movement is not part of this algorithm; mutants use it only to be
        // caught by the convention checks.
        break;
      case OpKind::write: {
        if (op.port < 0) {
          if (op.var == OpVar::candidate) {
            const Candidacy next = op.value ? Candidacy::yes : Candidacy::no;
            if (op.value && a.candidate != Candidacy::unset) {
              throw EngineViolation("candidate set twice");
            }
            if (!op.value && a.candidate != Candidacy::yes) {
              throw EngineViolation("candidacy revoked without being held");
            }
            a.candidate = next;
          } else if (op.var == OpVar::leader) {
            if (!op.value) throw EngineViolation("leader flag is irreversible");
            a.leader = true;
          } else {
            throw EngineViolation("write to unknown own variable");
          }
        } else {
          const int nbr = neighbor_id(id, op.port);
          if (nbr < 0) throw EngineViolation("write through an unconnected port");
          if (op.var != OpVar::nbrcand) throw EngineViolation("unexpected remote variable");
          if (op.index < 0 || op.index >= ports()) throw EngineViolation("nbrcand slot out of range");
          bots_[static_cast<std::size_t>(nbr)].nbrcand[static_cast<std::size_t>(op.index)] =
              static_cast<std::uint8_t>(op.value != 0);
        }
        break;
      }
    }
  }

  void apply_action(int id, ActionKind kind) {
    for (const OpRecord& op : plan_action(id, kind)) apply_op(id, op);
  }

  // --- invariants ------------------------------------------------------------

  // At quiescent points every nbrcand slot mirrors whether the neighbor on
  // that port is a current (set-up, uneroded) candidate.
  void check_quiescent_consistency() const {
    for (int id = 0; id < size(); ++id) {
      const AmoebotState& a = state(id);
      for (int p = 0; p < ports(); ++p) {
        const int nbr = neighbor_id(id, p);
        const bool expect = nbr >= 0 && state(nbr).candidate == Candidacy::yes;
        if (static_cast<bool>(a.nbrcand[static_cast<std::size_t>(p)]) != expect) {
          throw EngineViolation("nbrcand mirror out of sync at amoebot " + std::to_string(id) +
                                " port " + std::to_string(p));
        }
      }
    }
  }

  int leader_count() const {
    int n = 0;
    for (const AmoebotState& a : bots_) n += a.leader ? 1 : 0;
    return n;
  }

  // Positions of amoebots that are still in the running (pre-setup or
  // candidate); this is the structure the safety argument tracks.
  std::vector<NodePos> candidate_structure() const {
    std::vector<NodePos> out;
    for (const AmoebotState& a : bots_) {
      if (a.candidate != Candidacy::no) out.push_back(a.pos);
    }
    return out;
  }

 private:
  void build_adjacency() {
    const int np = ports();
    nbr_ids_.assign(bots_.size(), {});
    for (std::size_t i = 0; i < bots_.size(); ++i) {
      nbr_ids_[i].fill(-1);
      for (int p = 0; p < np; ++p) {
        const Vec3 q = bots_[i].pos + offset_of_port(bots_[i].orientation, p);
        nbr_ids_[i][static_cast<std::size_t>(p)] = id_at(q);
      }
    }
    two_hop_.assign(bots_.size(), {});
    for (std::size_t i = 0; i < bots_.size(); ++i) {
      std::vector<int> ball{static_cast<int>(i)};
      for (int p = 0; p < np; ++p) {
        const int n1 = nbr_ids_[i][static_cast<std::size_t>(p)];
        if (n1 < 0) continue;
        ball.push_back(n1);
        for (int q = 0; q < np; ++q) {
          const int n2 = nbr_ids_[static_cast<std::size_t>(n1)][static_cast<std::size_t>(q)];
          if (n2 >= 0) ball.push_back(n2);
        }
      }
      std::sort(ball.begin(), ball.end());
      ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
      two_hop_[i] = std::move(ball);
    }
  }

  static bool offsets_induce_connected(const std::array<int, kNumOffsets>& offs, int k) {
    std::array<bool, kNumOffsets> seen{};
    std::array<int, kNumOffsets> stack{};
    int top = 0;
    stack[top++] = offs[0];
    seen[static_cast<std::size_t>(offs[0])] = true;
    int reached = 1;
    while (top > 0) {
      const int cur = stack[--top];
      for (int j = 0; j < k; ++j) {
        const int other = offs[static_cast<std::size_t>(j)];
        if (!seen[static_cast<std::size_t>(other)] && offsets_adjacent(cur, other)) {
          seen[static_cast<std::size_t>(other)] = true;
          stack[top++] = other;
          ++reached;
        }
      }
    }
    return reached == k;
  }

  // Rule 3 probe: with exactly two candidate neighbors across a square pair,
  // ask the lower-port neighbor (then the other) whether the catty-corner
  // node behind them holds a candidate. Reads the neighbor's nbrcand slot for
  // the edge toward the catty node, exactly as the amoebot itself would. At
  // quiescent points the two mirrors agree; mid-action they may briefly not,
  // so this is a disjunction rather than a cross-check.
  bool square_catty_probe(int id, PortLabel port_b, PortLabel port_d, int off_a, int off_b) const {
    const auto probe = [&](PortLabel via, int toward_offset) {
      const int nbr = neighbor_id(id, via);
      const int slot = port_of(state(nbr).orientation, kOffsets[static_cast<std::size_t>(toward_offset)]);
      return static_cast<bool>(state(nbr).nbrcand[static_cast<std::size_t>(slot)]);
    };
    // Neighbor behind port_b sits at offset off_a; from there the catty node
    // is one off_b step away (and vice versa).
    return probe(port_b, off_b) || probe(port_d, off_a);
  }

  Dim dim_ = Dim::three;
  std::vector<AmoebotState> bots_;
  std::unordered_map<Vec3, int, Vec3Hash> occupancy_;
  std::vector<std::array<int, kNumOffsets>> nbr_ids_;
  std::vector<std::vector<int>> two_hop_;
};

// ---------------------------------------------------------------------------
// Geometric twin of the erosion rules: evaluates them from node positions and
// a candidate predicate alone, with no ports or mirrored flags involved. Used
// by the instance generators and the progress sampler; tests hold it against
// the port-based evaluation above.

template <typename CandidatePred>
ErosionRule erosion_rule_geometric(const std::unordered_set<Vec3, Vec3Hash>& occupied,
                                   const NodePos& p, CandidatePred is_candidate) {
  std::array<int, kNumOffsets> cand{};
  int k = 0;
  for (int d = 0; d < kNumOffsets; ++d) {
    const Vec3 q = p + kOffsets[static_cast<std::size_t>(d)];
    if (occupied.contains(q) && is_candidate(q)) cand[static_cast<std::size_t>(k++)] = d;
  }
  if (k == 1) return ErosionRule::lone_neighbor;
  if (k >= 2 && k <= 5) {
    std::array<bool, kNumOffsets> seen{};
    std::array<int, kNumOffsets> stack{};
    int top = 0, reached = 1;
    stack[top++] = cand[0];
    seen[static_cast<std::size_t>(cand[0])] = true;
    while (top > 0) {
      const int cur = stack[--top];
      for (int j = 0; j < k; ++j) {
        const int other = cand[static_cast<std::size_t>(j)];
        if (!seen[static_cast<std::size_t>(other)] && offsets_adjacent(cur, other)) {
          seen[static_cast<std::size_t>(other)] = true;
          stack[top++] = other;
          ++reached;
        }
      }
    }
    if (reached == k) return ErosionRule::connected_cluster;
  }
  if (k == 2 && offsets_perpendicular(cand[0], cand[1])) {
    const Vec3 catty = p + kOffsets[static_cast<std::size_t>(cand[0])] + kOffsets[static_cast<std::size_t>(cand[1])];
    if (occupied.contains(catty) && is_candidate(catty)) return ErosionRule::square_diagonal;
  }
  return ErosionRule::none;
}

inline ErosionRule erosion_rule_geometric(const std::unordered_set<Vec3, Vec3Hash>& occupied,
                                          const NodePos& p) {
  return erosion_rule_geometric(occupied, p, [](const Vec3&) { return true; });
}

}  // namespace amoebot
