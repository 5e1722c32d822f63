#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <unordered_set>

#include "amoebot/engine.hpp"
#include "amoebot/generate.hpp"

using namespace amoebot;

namespace {

Configuration make_config(std::vector<NodePos> nodes, Dim dim = Dim::three) {
  Configuration cfg;
  cfg.dim = dim;
  cfg.nodes = std::move(nodes);
  return cfg;
}

Configuration with_random_orientations(Configuration cfg, std::uint64_t seed) {
  cfg.orientation_mode = OrientationMode::random;
  cfg.orientation_seed = seed;
  return cfg;
}

int count_remote_writes(const std::vector<OpRecord>& ops) {
  int n = 0;
  for (const OpRecord& op : ops) {
    if (op.op == OpKind::write && op.port >= 0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("connected operation") {
  SECTION("isolated amoebot: false on all ports") {
    const System sys = System::from_config(make_config({{0, 0, 0}}));
    for (int p = 0; p < sys.ports(); ++p) REQUIRE_FALSE(sys.connected(0, p));
  }

  SECTION("a pair sees each other on exactly one port each") {
    const System sys =
        System::from_config(with_random_orientations(make_config({{0, 0, 0}, {1, 1, 0}}), 5));
    for (int id : {0, 1}) {
      int hits = 0, port = -1;
      for (int p = 0; p < sys.ports(); ++p) {
        if (sys.connected(id, p)) {
          ++hits;
          port = p;
        }
      }
      REQUIRE(hits == 1);
      // The connecting ports name the same edge from both ends.
      const Vec3 toward = offset_of_port(sys.state(id).orientation, port);
      REQUIRE(sys.state(id).pos + toward == sys.state(1 - id).pos);
    }
  }

  SECTION("a full neighborhood: true on all ports") {
    std::vector<NodePos> nodes = neighbors({0, 0, 0});
    nodes.push_back({0, 0, 0});
    const System sys = System::from_config(make_config(std::move(nodes)));
    const int center = sys.id_at({0, 0, 0});
    for (int p = 0; p < sys.ports(); ++p) REQUIRE(sys.connected(center, p));
  }
}

TEST_CASE("setup action") {
  SECTION("guard sequencing") {
    System sys = System::from_config(make_config({{0, 0, 0}}));
    REQUIRE(sys.guard_setup(0));
    sys.apply_action(0, ActionKind::setup);
    REQUIRE_FALSE(sys.guard_setup(0));
    REQUIRE(sys.state(0).candidate == Candidacy::yes);
  }

  SECTION("a singleton setup issues no remote writes") {
    System sys = System::from_config(make_config({{0, 0, 0}}));
    const auto ops = sys.plan_action(0, ActionKind::setup);
    REQUIRE(count_remote_writes(ops) == 0);
    int probes = 0;
    for (const OpRecord& op : ops) {
      if (op.op == OpKind::connected) {
        ++probes;
        REQUIRE(op.value == 0);
      }
    }
    REQUIRE(probes == 12);
  }

  SECTION("setup informs each neighbor on the translated port") {
    System sys =
        System::from_config(with_random_orientations(make_config({{0, 0, 0}, {1, 1, 0}}), 17));
    const int a = sys.id_at({0, 0, 0});
    const int b = sys.id_at({1, 1, 0});
    sys.apply_action(a, ActionKind::setup);
    REQUIRE(sys.state(a).candidate == Candidacy::yes);
    REQUIRE(sys.state(b).candidate == Candidacy::unset);
    const int slot = port_of(sys.state(b).orientation, Vec3{-1, -1, 0});
    REQUIRE(sys.state(b).nbrcand[static_cast<std::size_t>(slot)] == 1);
    for (int p = 0; p < sys.ports(); ++p) {
      if (p != slot) REQUIRE(sys.state(b).nbrcand[static_cast<std::size_t>(p)] == 0);
    }
  }

  SECTION("a full neighborhood setup issues twelve remote writes") {
    std::vector<NodePos> nodes = neighbors({0, 0, 0});
    nodes.push_back({0, 0, 0});
    System sys = System::from_config(with_random_orientations(make_config(std::move(nodes)), 3));
    const int center = sys.id_at({0, 0, 0});
    REQUIRE(count_remote_writes(sys.plan_action(center, ActionKind::setup)) == 12);
  }
}

TEST_CASE("erosion rules through the engine") {
  const auto setup_all = [](System& sys) {
    for (int id = 0; id < sys.size(); ++id) sys.apply_action(id, ActionKind::setup);
  };

  SECTION("one candidate neighbor: the lone-neighbor rule") {
    System sys = System::from_config(make_config({{0, 0, 0}, {1, 1, 0}}));
    setup_all(sys);
    REQUIRE(sys.erode_rule(0) == ErosionRule::lone_neighbor);
    REQUIRE(sys.erode_rule(1) == ErosionRule::lone_neighbor);
  }

  SECTION("two adjacent candidate neighbors: the cluster rule") {
    System sys = System::from_config(make_config({{0, 0, 0}, {1, 1, 0}, {0, 1, 1}}));
    setup_all(sys);
    const int center = sys.id_at({0, 0, 0});
    REQUIRE(sys.erode_rule(center) == ErosionRule::connected_cluster);
  }

  SECTION("two perpendicular candidate neighbors need the catty-corner candidate") {
    // Without the catty node the pair is not erodable...
    System without =
        System::from_config(make_config({{0, 0, 0}, {1, 1, 0}, {1, -1, 0}}));
    setup_all(without);
    REQUIRE(without.erode_rule(without.id_at({0, 0, 0})) == ErosionRule::none);

    // ...with it, the square rule fires for every corner.
    System with = System::from_config(
        with_random_orientations(make_config({{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {2, 0, 0}}), 23));
    setup_all(with);
    for (int id = 0; id < with.size(); ++id) {
      REQUIRE(with.erode_rule(id) == ErosionRule::square_diagonal);
    }
  }

  SECTION("six connected candidate neighbors exceed the rule bound") {
    std::vector<NodePos> nodes = plane_neighbors({0, 0, 0});
    nodes.push_back({0, 0, 0});
    System sys = System::from_config(make_config(std::move(nodes)));
    setup_all(sys);
    REQUIRE(sys.erode_rule(sys.id_at({0, 0, 0})) == ErosionRule::none);
  }

  SECTION("a neighbor before its first activation blocks erosion") {
    // Triangle of mutually adjacent nodes.
    System sys = System::from_config(make_config({{0, 0, 0}, {1, 1, 0}, {1, 0, -1}}));
    sys.apply_action(sys.id_at({0, 0, 0}), ActionKind::setup);
    sys.apply_action(sys.id_at({1, 1, 0}), ActionKind::setup);
    // (1,0,-1) has not set up; its neighbors must not erode yet.
    REQUIRE(sys.erode_rule(sys.id_at({0, 0, 0})) == ErosionRule::none);
    REQUIRE(sys.erode_rule(sys.id_at({1, 1, 0})) == ErosionRule::none);
    sys.apply_action(sys.id_at({1, 0, -1}), ActionKind::setup);
    REQUIRE(sys.erode_rule(sys.id_at({0, 0, 0})) == ErosionRule::connected_cluster);
    REQUIRE(sys.erode_rule(sys.id_at({1, 1, 0})) == ErosionRule::connected_cluster);
  }
}

TEST_CASE("erode and declare") {
  SECTION("pair: one erodes, the other declares") {
    System sys = System::from_config(make_config({{0, 0, 0}, {1, 1, 0}}));
    sys.apply_action(0, ActionKind::setup);
    sys.apply_action(1, ActionKind::setup);
    REQUIRE_FALSE(sys.guard_declare(1));
    sys.apply_action(0, ActionKind::erode);
    REQUIRE(sys.state(0).candidate == Candidacy::no);
    for (int p = 0; p < sys.ports(); ++p) REQUIRE(sys.state(1).nbrcand[static_cast<std::size_t>(p)] == 0);
    REQUIRE(sys.guard_declare(1));
    sys.apply_action(1, ActionKind::declare_leader);
    REQUIRE(sys.state(1).leader);
    REQUIRE(sys.leader_count() == 1);
  }

  SECTION("a singleton declares after setup") {
    System sys = System::from_config(make_config({{0, 0, 0}}));
    REQUIRE_FALSE(sys.guard_declare(0));
    sys.apply_action(0, ActionKind::setup);
    REQUIRE(sys.guard_declare(0));  // vacuous neighborhood
  }

  SECTION("enabled actions over a lifetime") {
    System sys = System::from_config(make_config({{0, 0, 0}, {1, 1, 0}}));
    REQUIRE(sys.enabled_actions(0) == std::vector<ActionKind>{ActionKind::setup});
    sys.apply_action(0, ActionKind::setup);
    REQUIRE(sys.enabled_actions(0).empty());  // neighbor still unset
    sys.apply_action(1, ActionKind::setup);
    REQUIRE(sys.enabled_actions(0) == std::vector<ActionKind>{ActionKind::erode});
    sys.apply_action(0, ActionKind::erode);
    REQUIRE(sys.enabled_actions(0).empty());
    REQUIRE(sys.enabled_actions(1) == std::vector<ActionKind>{ActionKind::declare_leader});
  }

  SECTION("at most one action is ever enabled") {
    std::mt19937_64 rng(31);
    const Configuration cfg =
        with_random_orientations(generate(Shape::blob, 30, 1234, Dim::three), 9);
    System sys = System::from_config(cfg);
    for (int id = 0; id < sys.size(); ++id) REQUIRE(sys.enabled_actions(id).size() <= 1);
    for (int id = 0; id < sys.size(); ++id) sys.apply_action(id, ActionKind::setup);
    for (int id = 0; id < sys.size(); ++id) REQUIRE(sys.enabled_actions(id).size() <= 1);
  }
}

TEST_CASE("write monotonicity is enforced") {
  System sys = System::from_config(make_config({{0, 0, 0}}));
  sys.apply_action(0, ActionKind::setup);
  REQUIRE_THROWS_AS(sys.apply_op(0, {OpKind::write, -1, OpVar::candidate, -1, 1}),
                    EngineViolation);
  sys.apply_op(0, {OpKind::write, -1, OpVar::leader, -1, 1});
  REQUIRE_THROWS_AS(sys.apply_op(0, {OpKind::write, -1, OpVar::leader, -1, 0}), EngineViolation);
  REQUIRE_THROWS_AS(sys.apply_op(0, {OpKind::write, 0, OpVar::nbrcand, 0, 1}), EngineViolation);
}

TEST_CASE("quiescent consistency of the nbrcand mirror") {
  const Configuration cfg =
      with_random_orientations(generate(Shape::blob, 25, 555, Dim::three), 31);
  System sys = System::from_config(cfg);
  sys.check_quiescent_consistency();
  std::mt19937_64 rng(8);
  // Drive the system with arbitrary enabled actions; the mirror must hold at
  // every quiescent point.
  while (true) {
    std::vector<std::pair<int, ActionKind>> enabled;
    for (int id = 0; id < sys.size(); ++id) {
      if (const auto a = sys.enabled_action(id)) enabled.push_back({id, a->first});
    }
    if (enabled.empty()) break;
    const auto [id, kind] = enabled[rng() % enabled.size()];
    sys.apply_action(id, kind);
    sys.check_quiescent_consistency();
    if (kind == ActionKind::declare_leader) break;
  }
}

TEST_CASE("engine rules agree with the geometric evaluation") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const Dim dim = trial % 2 ? Dim::two : Dim::three;
    const Configuration cfg =
        with_random_orientations(generate(Shape::blob, 20 + trial, rng(), dim), rng());
    System sys = System::from_config(cfg);
    for (int id = 0; id < sys.size(); ++id) sys.apply_action(id, ActionKind::setup);

    std::unordered_set<Vec3, Vec3Hash> occupied(cfg.nodes.begin(), cfg.nodes.end());
    // Erode a few at random, keeping the candidate predicate in sync.
    std::unordered_set<Vec3, Vec3Hash> eroded;
    const auto candidate = [&](const Vec3& p) { return !eroded.contains(p); };
    for (int step = 0; step < sys.size() / 2; ++step) {
      for (int id = 0; id < sys.size(); ++id) {
        if (eroded.contains(sys.state(id).pos)) continue;
        const ErosionRule by_ports = sys.erode_rule(id);
        const ErosionRule by_geometry =
            erosion_rule_geometric(occupied, sys.state(id).pos, candidate);
        REQUIRE(by_ports == by_geometry);
      }
      std::vector<int> erodable;
      for (int id = 0; id < sys.size(); ++id) {
        if (!eroded.contains(sys.state(id).pos) && sys.erode_rule(id) != ErosionRule::none) {
          erodable.push_back(id);
        }
      }
      if (erodable.empty()) break;
      const int pick = erodable[rng() % erodable.size()];
      sys.apply_action(pick, ActionKind::erode);
      eroded.insert(sys.state(pick).pos);
    }
  }
}

TEST_CASE("rule evaluation is orientation independent") {
  std::mt19937_64 rng(606);
  const Configuration base = generate(Shape::blob, 24, 777, Dim::three);
  // Fix which amoebots have eroded, then compare rule outcomes across ten
  // random orientation assignments.
  std::vector<ErosionRule> reference;
  for (int round = 0; round < 10; ++round) {
    const Configuration cfg = with_random_orientations(base, rng());
    System sys = System::from_config(cfg);
    for (int id = 0; id < sys.size(); ++id) sys.apply_action(id, ActionKind::setup);
    for (int id = 0; id < sys.size(); id += 3) sys.apply_action(id, ActionKind::erode);

    std::vector<ErosionRule> outcome;
    for (int id = 0; id < sys.size(); ++id) outcome.push_back(sys.erode_rule(id));
    if (round == 0) {
      reference = outcome;
    } else {
      REQUIRE(outcome == reference);
    }
  }
}

TEST_CASE("the square rule never fires in 2D") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 6; ++trial) {
    const Configuration cfg =
        with_random_orientations(generate(Shape::blob, 40, rng(), Dim::two), rng());
    System sys = System::from_config(cfg);
    for (int id = 0; id < sys.size(); ++id) sys.apply_action(id, ActionKind::setup);
    while (true) {
      std::vector<int> erodable;
      for (int id = 0; id < sys.size(); ++id) {
        const ErosionRule r = sys.erode_rule(id);
        REQUIRE(r != ErosionRule::square_diagonal);
        if (r != ErosionRule::none) erodable.push_back(id);
      }
      if (erodable.empty()) break;
      sys.apply_action(erodable[rng() % erodable.size()], ActionKind::erode);
    }
  }
}

TEST_CASE("duplicate nodes and bad orientations are rejected") {
  REQUIRE_THROWS_AS(System::from_config(make_config({{0, 0, 0}, {0, 0, 0}})),
                    std::invalid_argument);
  Configuration planar = make_config({{0, 0, 0}}, Dim::two);
  planar.orientation_mode = OrientationMode::explicit_list;
  // Orientation 1 in canonical order does not preserve the home plane.
  bool found_bad = false;
  for (int idx = 0; idx < 24 && !found_bad; ++idx) {
    const Vec3 img = Orientation::from_index(idx).apply({1, 1, 1});
    if (img != Vec3{1, 1, 1} && img != Vec3{-1, -1, -1}) {
      planar.orientation_indices = {idx};
      found_bad = true;
    }
  }
  REQUIRE(found_bad);
  REQUIRE_THROWS_AS(System::from_config(planar), std::invalid_argument);
}
