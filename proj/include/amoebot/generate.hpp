#pragma once
// Instance generators. Shapes grow by inverse erosion: starting from a seed,
// repeatedly attach a vacant node that, with respect to the grown set,
// satisfies an erosion rule. Removing the new node would be a legal erosion,
// so every prefix (and hence every generated configuration) stays connected
// and contractible.

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "amoebot/config.hpp"
#include "amoebot/engine.hpp"

namespace amoebot {

enum class Shape : std::uint8_t { blob, line, plane_disk, sphere_ish, square_gadget };

inline const char* to_string(Shape s) {
  switch (s) {
    case Shape::blob: return "blob";
    case Shape::line: return "line";
    case Shape::plane_disk: return "plane-disk";
    case Shape::sphere_ish: return "sphere-ish";
    case Shape::square_gadget: return "square-gadget";
  }
  return "?";
}

inline Shape shape_from_string(const std::string& s) {
  if (s == "blob") return Shape::blob;
  if (s == "line") return Shape::line;
  if (s == "plane-disk") return Shape::plane_disk;
  if (s == "sphere-ish") return Shape::sphere_ish;
  if (s == "square-gadget") return Shape::square_gadget;
  throw std::invalid_argument("unknown shape '" + s + "'");
}

// The contact complex of a vacant node's cell against an occupied set: the
// shared rhombic faces toward face-adjacent occupied cells plus the shared
// pinch vertices toward axis-distance-2 occupied cells. Attaching the cell
// preserves trivial homology exactly when this complex is nonempty, connected
// and has Euler characteristic 1 (Mayer-Vietoris with a contractible cell).
// Rule legality alone does not guarantee this: a cell whose neighbors wrap
// around two unfilled pinch vertices closes a loop through them.
inline bool attachment_link_contractible(const std::unordered_set<Vec3, Vec3Hash>& occupied,
                                         const NodePos& q) {
  std::unordered_map<Vec3, int, Vec3Hash> verts;
  std::set<std::pair<int, int>> edges;
  int faces = 0;
  const auto vert = [&](const Vec3& key) {
    return verts.try_emplace(key, static_cast<int>(verts.size())).first->second;
  };

  const Vec3 c2 = q * 2;
  for (const Vec3& off : kOffsets) {
    if (!occupied.contains(q + off)) continue;
    ++faces;
    const int axis_k = off.x == 0 ? 0 : (off.y == 0 ? 1 : 2);
    const Vec3 ek{axis_k == 0, axis_k == 1, axis_k == 2};
    Vec3 a6_i{}, a6_j{};
    if (axis_k == 0) {
      a6_i = c2 + Vec3{0, 2 * off.y, 0};
      a6_j = c2 + Vec3{0, 0, 2 * off.z};
    } else if (axis_k == 1) {
      a6_i = c2 + Vec3{2 * off.x, 0, 0};
      a6_j = c2 + Vec3{0, 0, 2 * off.z};
    } else {
      a6_i = c2 + Vec3{2 * off.x, 0, 0};
      a6_j = c2 + Vec3{0, 2 * off.y, 0};
    }
    const std::array<int, 4> cyc = {vert(a6_i), vert(c2 + off + ek), vert(a6_j), vert(c2 + off - ek)};
    for (int k = 0; k < 4; ++k) {
      int a = cyc[static_cast<std::size_t>(k)];
      int b = cyc[static_cast<std::size_t>((k + 1) % 4)];
      if (a > b) std::swap(a, b);
      edges.insert({a, b});
    }
  }
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign : {-1, 1}) {
      Vec3 u{};
      (axis == 0 ? u.x : axis == 1 ? u.y : u.z) = sign;
      if (occupied.contains(q + u * 2)) vert(c2 + u * 2);  // shared pinch vertex
    }
  }

  if (verts.empty()) return false;
  const int chi = static_cast<int>(verts.size()) - static_cast<int>(edges.size()) + faces;
  if (chi != 1) return false;

  std::vector<int> parent(verts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& [a, b] : edges) parent[static_cast<std::size_t>(find(a))] = find(b);
  int comps = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
  }
  return comps == 1;
}

namespace detail {

struct GrowthFrontier {
  std::unordered_set<Vec3, Vec3Hash> occupied;
  std::unordered_set<Vec3, Vec3Hash> frontier;
  Dim dim;

  explicit GrowthFrontier(Dim d) : dim(d) {}

  void add(const NodePos& p) {
    occupied.insert(p);
    frontier.erase(p);
    for_each_neighbor(p, [&](const Vec3& q) {
      if (!occupied.contains(q)) frontier.insert(q);
    });
  }

  template <typename Fn>
  void for_each_neighbor(const NodePos& p, Fn&& fn) const {
    const int np = port_count(dim);
    for (int d = 0; d < np; ++d) fn(p + kOffsets[static_cast<std::size_t>(d)]);
  }

  bool attachable(const NodePos& q) const {
    // Attaching must be a reversible erosion step and must keep the dual
    // union contractible; the rules alone miss pinch-vertex loops.
    return erosion_rule_geometric(occupied, q) != ErosionRule::none &&
           attachment_link_contractible(occupied, q);
  }
};

inline std::vector<NodePos> grow(std::vector<NodePos> seed, int target, Dim dim,
                                 std::mt19937_64& rng, bool ball_preference) {
  GrowthFrontier g(dim);
  for (const NodePos& p : seed) g.add(p);

  std::vector<Vec3> candidates;
  while (static_cast<int>(g.occupied.size()) < target) {
    candidates.assign(g.frontier.begin(), g.frontier.end());
    std::sort(candidates.begin(), candidates.end());
    if (ball_preference) {
      std::stable_sort(candidates.begin(), candidates.end(),
                       [](const Vec3& a, const Vec3& b) { return a.dot(a) < b.dot(b); });
    } else {
      std::shuffle(candidates.begin(), candidates.end(), rng);
    }
    bool grew = false;
    for (const Vec3& q : candidates) {
      if (g.attachable(q)) {
        g.add(q);
        grew = true;
        break;
      }
    }
    if (!grew) {
      // Cannot happen: the lexicographically extreme frontier node always has
      // a lone or adjacent-pair occupied neighborhood.
      throw std::runtime_error("inverse-erosion growth stalled");
    }
  }
  std::vector<NodePos> out(g.occupied.begin(), g.occupied.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline Configuration generate(Shape shape, int size, std::uint64_t seed, Dim dim) {
  if (size < 1) throw std::invalid_argument("size must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<NodePos> nodes;

  switch (shape) {
    case Shape::blob: {
      nodes = detail::grow({{0, 0, 0}}, size, dim, rng, /*ball_preference=*/false);
      break;
    }
    case Shape::line: {
      const Vec3 step = dim == Dim::two ? Vec3{1, -1, 0} : Vec3{1, 1, 0};
      for (int k = 0; k < size; ++k) nodes.push_back(step * k);
      break;
    }
    case Shape::plane_disk: {
      // A round 2D patch; valid as a 3D configuration as well.
      nodes = detail::grow({{0, 0, 0}}, size, Dim::two, rng, /*ball_preference=*/true);
      break;
    }
    case Shape::sphere_ish: {
      if (dim == Dim::two) throw std::invalid_argument("sphere-ish requires 3D");
      nodes = detail::grow({{0, 0, 0}}, size, dim, rng, /*ball_preference=*/true);
      break;
    }
    case Shape::square_gadget: {
      if (dim == Dim::two) throw std::invalid_argument("square-gadget requires 3D");
      if (size < 4) throw std::invalid_argument("square-gadget needs size >= 4");
      // A chordless square with its two diagonals vacant; the fourth node
      // attaches by the square rule.
      std::vector<NodePos> square = {{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {2, 0, 0}};
      nodes = detail::grow(std::move(square), size, dim, rng, /*ball_preference=*/false);
      break;
    }
  }

  Configuration cfg;
  cfg.dim = dim;
  cfg.nodes = std::move(nodes);
  // Generated instances are connected and contractible by construction;
  // verify rather than trust the construction.
  validate_configuration(cfg);
  return cfg;
}

// True if some chordless square of the configuration is fully occupied
// together with its catty-corner node (rule-3 coverage scan).
inline bool contains_occupied_square(const Configuration& cfg) {
  std::unordered_set<Vec3, Vec3Hash> set(cfg.nodes.begin(), cfg.nodes.end());
  for (const NodePos& p : cfg.nodes) {
    for (const SquareThrough& sq : squares_through(p)) {
      if (set.contains(p + kOffsets[static_cast<std::size_t>(sq.offset_a)]) &&
          set.contains(p + kOffsets[static_cast<std::size_t>(sq.offset_b)]) && set.contains(sq.catty)) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace amoebot
