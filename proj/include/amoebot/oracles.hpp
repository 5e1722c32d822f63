#pragma once
// Exhaustive geometric oracles over the 12-offset neighbor shell, plus a
// randomized sampler for the progress property of the erosion rules.
//
// The hole-free oracle enumerates every neighbor subset of size one to five,
// builds the dual union of the neighbor cells alone (center vacant), and
// checks that it carries no 1- or 2-dimensional homology and that every
// boundary component is a sphere. The vertex-angle oracle enumerates sizes
// six to eleven and checks that every subset passing the polyhedron-vertex
// filter has nonpositive external angle. All angle arithmetic is integral:
// with unit equilateral surface triangles the external angle at the center
// is 2*pi - k*pi/3 for k incident triangles, so the sign is decided by k.

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "amoebot/engine.hpp"
#include "amoebot/generate.hpp"
#include "amoebot/topology.hpp"

namespace amoebot {

inline std::vector<NodePos> nodes_of_mask(std::uint32_t mask) {
  std::vector<NodePos> out;
  for (int d = 0; d < kNumOffsets; ++d) {
    if (mask & (1u << d)) out.push_back(kOffsets[static_cast<std::size_t>(d)]);
  }
  return out;
}

// --- footnote oracle 1: small neighborhoods are hole-free -------------------

struct SmallNeighborhoodReport {
  int subsets_checked = 0;
  std::uint64_t mask_checksum = 0;       // sum of visited masks
  std::vector<std::uint32_t> violations;      // nonzero b1/b2 or nonzero genus
  std::vector<std::uint32_t> inconsistencies; // betti and genus verdicts disagree

  bool passed() const {
    return subsets_checked == 1585 && violations.empty() && inconsistencies.empty();
  }
};

inline SmallNeighborhoodReport verify_small_neighborhoods_hole_free() {
  SmallNeighborhoodReport report;
  for (std::uint32_t mask = 1; mask < (1u << kNumOffsets); ++mask) {
    const int size = std::popcount(mask);
    if (size < 1 || size > 5) continue;
    ++report.subsets_checked;
    report.mask_checksum += mask;

    const DualComplex cx = build_dual_complex(nodes_of_mask(mask), Dim::three);
    const BettiNumbers b = betti(cx);
    const std::vector<int> genus = boundary_genus(cx);
    const bool betti_clean = b.b1 == 0 && b.b2 == 0;
    const bool genus_clean = std::all_of(genus.begin(), genus.end(), [](int g) { return g == 0; });
    if (!betti_clean || !genus_clean) report.violations.push_back(mask);
    if (betti_clean != genus_clean) report.inconsistencies.push_back(mask);
  }
  return report;
}

// --- footnote oracle 2: vertex angles of large neighborhoods ----------------

struct VertexAngleCase {
  std::uint32_t mask = 0;
  int triangles = 0;  // external angle = 2*pi - triangles*pi/3
};

struct VertexAngleReport {
  int subsets_checked = 0;
  int included = 0;
  std::uint64_t mask_checksum = 0;
  std::vector<VertexAngleCase> excluded;    // failed the polyhedron-vertex filter
  std::vector<VertexAngleCase> violations;  // included with positive external angle

  bool passed() const { return subsets_checked == 2509 && violations.empty(); }
};

namespace detail {

// Polyhedron-vertex filter: the surface triangles at the center are the
// adjacent pairs within the subset. The center counts as a polyhedron vertex
// when triangles exist and their fans close up around every occupied edge,
// i.e. every member of the subset lies on a cycle of the induced offset
// adjacency graph. (A member lies on a cycle exactly when two of its
// neighbors are connected while avoiding it.)
inline bool polyhedron_vertex_filter(std::uint32_t mask) {
  std::vector<int> members;
  for (int d = 0; d < kNumOffsets; ++d) {
    if (mask & (1u << d)) members.push_back(d);
  }
  bool any_triangle = false;
  for (std::size_t i = 0; i < members.size() && !any_triangle; ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (offsets_adjacent(members[i], members[j])) {
        any_triangle = true;
        break;
      }
    }
  }
  if (!any_triangle) return false;

  for (int x : members) {
    std::vector<int> nbrs;
    for (int y : members) {
      if (y != x && offsets_adjacent(x, y)) nbrs.push_back(y);
    }
    if (nbrs.size() < 2) return false;
    // Components of the induced graph minus x; some component must hold two
    // of x's neighbors.
    std::array<int, kNumOffsets> comp{};
    comp.fill(-1);
    int ncomp = 0;
    for (int s : members) {
      if (s == x || comp[static_cast<std::size_t>(s)] >= 0) continue;
      const int c = ncomp++;
      std::vector<int> stack{s};
      comp[static_cast<std::size_t>(s)] = c;
      while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        for (int y : members) {
          if (y == x || comp[static_cast<std::size_t>(y)] >= 0 || !offsets_adjacent(cur, y)) continue;
          comp[static_cast<std::size_t>(y)] = c;
          stack.push_back(y);
        }
      }
    }
    std::array<int, kNumOffsets> seen_in_comp{};
    seen_in_comp.fill(0);
    bool on_cycle = false;
    for (int y : nbrs) {
      if (++seen_in_comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(y)])] == 2) {
        on_cycle = true;
        break;
      }
    }
    if (!on_cycle) return false;
  }
  return true;
}

}  // namespace detail

inline VertexAngleReport verify_vertex_angles() {
  VertexAngleReport report;
  for (std::uint32_t mask = 1; mask < (1u << kNumOffsets); ++mask) {
    const int size = std::popcount(mask);
    if (size < 6 || size > 11) continue;
    ++report.subsets_checked;
    report.mask_checksum += mask;

    int triangles = 0;
    for (int i = 0; i < kNumOffsets; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = i + 1; j < kNumOffsets; ++j) {
        if ((mask & (1u << j)) && offsets_adjacent(i, j)) ++triangles;
      }
    }
    const VertexAngleCase c{mask, triangles};
    if (!detail::polyhedron_vertex_filter(mask)) {
      report.excluded.push_back(c);
      continue;
    }
    ++report.included;
    if (triangles < 6) report.violations.push_back(c);  // 2*pi - k*pi/3 > 0 iff k <= 5
  }
  return report;
}

// --- progress sampler --------------------------------------------------------

struct ProgressSampleReport {
  int requested = 0;
  int generated = 0;
  int skipped = 0;
  std::vector<std::uint64_t> counterexample_seeds;

  bool passed() const { return generated > 0 && counterexample_seeds.empty(); }
};

// Generates random connected, contractible configurations and checks that at
// least one member satisfies an erosion rule when everyone is a candidate.
inline ProgressSampleReport sample_progress_lemma(int count, int min_size, int max_size,
                                                  std::uint64_t seed, bool include_2d = true) {
  if (min_size < 2) min_size = 2;
  if (max_size < min_size) throw std::invalid_argument("empty size range");
  ProgressSampleReport report;
  report.requested = count;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(min_size, max_size);

  for (int i = 0; i < count; ++i) {
    const Dim dim = include_2d && (i % 2 == 1) ? Dim::two : Dim::three;
    const int size = size_dist(rng);
    const std::uint64_t instance_seed = rng();
    Configuration cfg;
    try {
      cfg = generate(Shape::blob, size, instance_seed, dim);
    } catch (const std::exception&) {
      ++report.skipped;
      continue;
    }
    ++report.generated;
    std::unordered_set<Vec3, Vec3Hash> occupied(cfg.nodes.begin(), cfg.nodes.end());
    bool found = false;
    for (const NodePos& p : cfg.nodes) {
      if (erosion_rule_geometric(occupied, p) != ErosionRule::none) {
        found = true;
        break;
      }
    }
    if (!found) report.counterexample_seeds.push_back(instance_seed);
  }
  return report;
}

}  // namespace amoebot
