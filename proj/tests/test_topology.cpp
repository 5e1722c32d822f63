#include <catch2/catch_amalgamated.hpp>

#include <queue>
#include <random>
#include <unordered_set>

#include "amoebot/engine.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/topology.hpp"

using namespace amoebot;

namespace {

// Reference Betti numbers, independent of the boundary-matrix elimination:
// b0 by flood fill over cells that touch (sharing a face or, in 3D, a pinch
// vertex between axis-distance-2 cells), b2 by counting bounded components of
// the vacant complement inside an inflated bounding box, and b1 from the
// Euler characteristic of the complex (2D: from the complement directly).
bool cells_touch(const Vec3& a, const Vec3& b, Dim dim) {
  const Vec3 d = a - b;
  if (is_offset(d)) return true;
  if (dim == Dim::three && d.dot(d) == 4 &&
      std::abs(d.x) + std::abs(d.y) + std::abs(d.z) == 2) {
    return true;  // axis-type difference: the cells share one vertex
  }
  return false;
}

int space_components(const std::vector<Vec3>& cells, Dim dim) {
  std::vector<int> parent(cells.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (cells_touch(cells[i], cells[j], dim)) {
        parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));
      }
    }
  }
  int comps = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
  }
  return comps;
}

int bounded_complement_components(const std::vector<Vec3>& cells, Dim dim) {
  int lo[3] = {cells[0].x, cells[0].y, cells[0].z};
  int hi[3] = {cells[0].x, cells[0].y, cells[0].z};
  for (const Vec3& p : cells) {
    lo[0] = std::min(lo[0], p.x); hi[0] = std::max(hi[0], p.x);
    lo[1] = std::min(lo[1], p.y); hi[1] = std::max(hi[1], p.y);
    lo[2] = std::min(lo[2], p.z); hi[2] = std::max(hi[2], p.z);
  }
  for (int k = 0; k < 3; ++k) {
    lo[k] -= 3;
    hi[k] += 3;
  }

  std::unordered_set<Vec3, Vec3Hash> occupied(cells.begin(), cells.end());
  const auto in_box = [&](const Vec3& p) {
    if (dim == Dim::two && !in_home_plane(p)) return false;
    return p.x >= lo[0] && p.x <= hi[0] && p.y >= lo[1] && p.y <= hi[1] && p.z >= lo[2] &&
           p.z <= hi[2];
  };
  const auto on_rim = [&](const Vec3& p) {
    return p.x == lo[0] || p.x == hi[0] || p.y == lo[1] || p.y == hi[1] || p.z == lo[2] ||
           p.z == hi[2];
  };
  const int nports = port_count(dim);

  std::unordered_set<Vec3, Vec3Hash> seen;
  int bounded = 0;
  for (int x = lo[0]; x <= hi[0]; ++x) {
    for (int y = lo[1]; y <= hi[1]; ++y) {
      for (int z = lo[2]; z <= hi[2]; ++z) {
        const Vec3 start{x, y, z};
        if (!valid_node(start) || !in_box(start) || occupied.contains(start) ||
            seen.contains(start)) {
          continue;
        }
        bool touches_rim = false;
        std::queue<Vec3> queue;
        queue.push(start);
        seen.insert(start);
        while (!queue.empty()) {
          const Vec3 p = queue.front();
          queue.pop();
          if (on_rim(p)) touches_rim = true;
          for (int d = 0; d < nports; ++d) {
            const Vec3 q = p + kOffsets[static_cast<std::size_t>(d)];
            if (in_box(q) && !occupied.contains(q) && seen.insert(q).second) queue.push(q);
          }
        }
        if (!touches_rim) ++bounded;
      }
    }
  }
  return bounded;
}

BettiNumbers reference_betti(const std::vector<NodePos>& cells, Dim dim) {
  const DualComplex cx = build_dual_complex(cells, dim);
  BettiNumbers b;
  b.b0 = space_components(cx.cells, dim);
  if (dim == Dim::two) {
    b.b1 = bounded_complement_components(cx.cells, dim);
    b.b2 = 0;
  } else {
    b.b2 = bounded_complement_components(cx.cells, dim);
    b.b1 = b.b0 + b.b2 - cx.euler_characteristic();
  }
  return b;
}

std::vector<NodePos> hollow_shell() { return neighbors({0, 0, 0}); }
std::vector<NodePos> plane_ring() { return plane_neighbors({0, 0, 0}); }

}  // namespace

TEST_CASE("node-set connectivity") {
  REQUIRE(is_connected({{0, 0, 0}}));
  REQUIRE_FALSE(is_connected({}));
  REQUIRE_FALSE(is_connected({{0, 0, 0}, {4, 0, 0}}));
  REQUIRE(is_connected({{0, 0, 0}, {1, 1, 0}, {2, 0, 0}}));
  REQUIRE_FALSE(is_connected({{0, 0, 0}, {2, 0, 0}}));  // vertex contact is not graph adjacency
  REQUIRE_THROWS_AS(is_connected({{1, 0, 0}}), std::invalid_argument);
}

TEST_CASE("dual complex construction") {
  SECTION("a single cell is a rhombic dodecahedron") {
    const DualComplex cx = build_dual_complex({{0, 0, 0}}, Dim::three);
    REQUIRE(cx.vert_count() == 14);
    REQUIRE(cx.edge_count() == 24);
    REQUIRE(cx.face_count() == 12);
    REQUIRE(cx.cell3_count() == 1);
    REQUIRE(cx.euler_characteristic() == 1);
    for (const DualFace& f : cx.faces) REQUIRE(f.incident_occupied == 1);
  }

  SECTION("two adjacent cells share one face") {
    const DualComplex cx = build_dual_complex({{0, 0, 0}, {1, 1, 0}}, Dim::three);
    REQUIRE(cx.face_count() == 23);
    REQUIRE(cx.vert_count() == 24);
    REQUIRE(cx.edge_count() == 44);
    REQUIRE(cx.euler_characteristic() == 1);
    int shared = 0;
    for (const DualFace& f : cx.faces) {
      if (f.incident_occupied == 2) ++shared;
    }
    REQUIRE(shared == 1);
  }

  SECTION("a single hexagon in 2D") {
    const DualComplex cx = build_dual_complex({{0, 0, 0}}, Dim::two);
    REQUIRE(cx.vert_count() == 6);
    REQUIRE(cx.edge_count() == 6);
    REQUIRE(cx.face_count() == 1);
    REQUIRE(cx.euler_characteristic() == 1);
  }

  SECTION("bad input is rejected") {
    REQUIRE_THROWS_AS(build_dual_complex({}, Dim::three), std::invalid_argument);
    REQUIRE_THROWS_AS(build_dual_complex({{1, 0, 0}}, Dim::three), std::invalid_argument);
    REQUIRE_THROWS_AS(build_dual_complex({{1, 1, 0}}, Dim::two), std::invalid_argument);
  }
}

TEST_CASE("betti numbers of landmark instances") {
  SECTION("single cell") {
    REQUIRE(betti(build_dual_complex({{0, 0, 0}}, Dim::three)) == BettiNumbers{1, 0, 0});
  }

  SECTION("hollow shell: a cavity is a hole") {
    REQUIRE(betti(build_dual_complex(hollow_shell(), Dim::three)) == BettiNumbers{1, 0, 1});
  }

  SECTION("in-plane ring of six cells: a tunnel") {
    REQUIRE(betti(build_dual_complex(plane_ring(), Dim::three)) == BettiNumbers{1, 1, 0});
    REQUIRE(betti(build_dual_complex(plane_ring(), Dim::two)) == BettiNumbers{1, 1, 0});
  }

  SECTION("square configuration: four cells pinched at one vertex stay contractible") {
    const std::vector<NodePos> square = {{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {2, 0, 0}};
    REQUIRE(betti(build_dual_complex(square, Dim::three)) == BettiNumbers{1, 0, 0});
  }

  SECTION("two cells meeting only at a vertex: one component, no hole") {
    REQUIRE(betti(build_dual_complex({{0, 0, 0}, {2, 0, 0}}, Dim::three)) ==
            BettiNumbers{1, 0, 0});
  }

  SECTION("two bars joined at two pinch vertices close a loop") {
    const std::vector<NodePos> loop = {{-1, 0, 1}, {-1, 1, 0}, {1, 1, 0}, {1, 0, 1}};
    REQUIRE(betti(build_dual_complex(loop, Dim::three)) == BettiNumbers{1, 1, 0});
    REQUIRE(reference_betti(loop, Dim::three) == BettiNumbers{1, 1, 0});
  }
}

TEST_CASE("betti agrees with the independent reference route") {
  SECTION("landmark instances") {
    for (const auto& cells :
         {std::vector<NodePos>{{0, 0, 0}}, hollow_shell(), plane_ring(),
          std::vector<NodePos>{{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {2, 0, 0}},
          std::vector<NodePos>{{0, 0, 0}, {4, 0, 0}}}) {
      REQUIRE(betti(build_dual_complex(cells, Dim::three)) == reference_betti(cells, Dim::three));
    }
  }

  SECTION("random blobs and random thinnings of them") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 24; ++trial) {
      const Dim dim = trial % 2 ? Dim::two : Dim::three;
      const Configuration cfg = generate(Shape::blob, 24 + trial, rng(), dim);
      REQUIRE(betti(build_dual_complex(cfg.nodes, dim)) == BettiNumbers{1, 0, 0});

      // Thinning makes disconnections, pinches and holes possible; the two
      // routes must keep agreeing.
      std::vector<NodePos> subset;
      for (const NodePos& p : cfg.nodes) {
        if (rng() % 3 != 0) subset.push_back(p);
      }
      if (subset.empty()) continue;
      REQUIRE(betti(build_dual_complex(subset, dim)) == reference_betti(subset, dim));
    }
  }

  SECTION("euler characteristic equals the alternating sum of betti numbers") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      const Configuration cfg = generate(Shape::blob, 40, rng(), Dim::three);
      std::vector<NodePos> subset;
      for (const NodePos& p : cfg.nodes) {
        if (rng() % 4 != 0) subset.push_back(p);
      }
      if (subset.empty()) continue;
      const DualComplex cx = build_dual_complex(subset, Dim::three);
      const BettiNumbers b = betti(cx);
      REQUIRE(cx.euler_characteristic() == b.b0 - b.b1 + b.b2);
    }
  }
}

TEST_CASE("contractibility verdicts") {
  REQUIRE(is_contractible({{0, 0, 0}}, Dim::three));
  REQUIRE_FALSE(is_contractible(hollow_shell(), Dim::three));
  REQUIRE_FALSE(is_contractible(plane_ring(), Dim::two));
  REQUIRE_THROWS_AS(is_contractible({}, Dim::three), std::invalid_argument);
  REQUIRE_THROWS_AS(is_contractible({{0, 0, 0}, {4, 0, 0}}, Dim::three), std::invalid_argument);

  SECTION("inverse-erosion growth output is always contractible") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
      const Dim dim = trial % 2 ? Dim::two : Dim::three;
      const Configuration cfg = generate(Shape::blob, 10 + 13 * trial, rng(), dim);
      REQUIRE(is_connected(cfg.nodes));
      REQUIRE(is_contractible(cfg.nodes, dim));
    }
  }
}

TEST_CASE("boundary genus") {
  SECTION("single cell: a sphere") {
    REQUIRE(boundary_genus({{0, 0, 0}}) == std::vector<int>{0});
  }

  SECTION("hollow shell: inner and outer spheres") {
    REQUIRE(boundary_genus(hollow_shell()) == std::vector<int>{0, 0});
  }

  SECTION("ring of six cells: one torus") {
    REQUIRE(boundary_genus(plane_ring()) == std::vector<int>{1});
  }

  SECTION("pinched square: the split surface is a sphere") {
    REQUIRE(boundary_genus({{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {2, 0, 0}}) == std::vector<int>{0});
  }

  SECTION("genus matches b1 on the tunnel instance") {
    const BettiNumbers b = betti(build_dual_complex(plane_ring(), Dim::three));
    int genus_sum = 0;
    for (int g : boundary_genus(plane_ring())) genus_sum += g;
    REQUIRE(genus_sum == b.b1);
  }

  SECTION("2D complexes are rejected") {
    REQUIRE_THROWS_AS(boundary_genus(build_dual_complex({{0, 0, 0}}, Dim::two)),
                      std::invalid_argument);
  }

  SECTION("genus is blind to pinch-vertex loops") {
    const std::vector<NodePos> loop = {{-1, 0, 1}, {-1, 1, 0}, {1, 1, 0}, {1, 0, 1}};
    REQUIRE(betti(build_dual_complex(loop, Dim::three)).b1 == 1);
    for (int g : boundary_genus(loop)) REQUIRE(g == 0);
  }
}

TEST_CASE("betti b0 versus flood-fill components") {
  // On pinch-free sets the homological and graph component counts coincide;
  // cells that touch only at a vertex are one component as a space but two in
  // the adjacency graph.
  const std::vector<NodePos> pinched = {{0, 0, 0}, {2, 0, 0}};
  REQUIRE_FALSE(is_connected(pinched));
  REQUIRE(betti(build_dual_complex(pinched, Dim::three)).b0 == 1);

  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 8; ++trial) {
    const Configuration cfg = generate(Shape::blob, 30, rng(), Dim::three);
    REQUIRE(is_connected(cfg.nodes));
    REQUIRE(betti(build_dual_complex(cfg.nodes, Dim::three)).b0 == 1);
  }
}

TEST_CASE("characterization: rule-legal erosion can open a pinch loop") {
  // A contractible six-cell instance whose center satisfies the cluster rule;
  // removing the center leaves a connected set whose dual union carries a
  // 1-cycle through two pinch vertices. Boundary genus stays zero, which is
  // why a genus check alone cannot see the loop.
  const std::vector<NodePos> nbrs = {{0, -1, 1}, {-1, 0, 1}, {-1, 1, 0}, {1, 1, 0}, {1, 0, 1}};
  std::vector<NodePos> full = nbrs;
  full.push_back({0, 0, 0});

  REQUIRE(is_connected(full));
  REQUIRE(betti(build_dual_complex(full, Dim::three)) == BettiNumbers{1, 0, 0});

  const std::unordered_set<Vec3, Vec3Hash> occ(full.begin(), full.end());
  REQUIRE(erosion_rule_geometric(occ, {0, 0, 0}) == ErosionRule::connected_cluster);

  REQUIRE(is_connected(nbrs));
  REQUIRE(betti(build_dual_complex(nbrs, Dim::three)) == BettiNumbers{1, 1, 0});
  REQUIRE(reference_betti(nbrs, Dim::three) == BettiNumbers{1, 1, 0});
  for (int g : boundary_genus(nbrs)) REQUIRE(g == 0);
}
