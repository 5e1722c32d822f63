#pragma once
// Lattice-dual cell complexes of occupied node sets and their homology over
// GF(2). In 3D the dual cell of a node is a rhombic dodecahedron; in 2D it is
// a hexagon. Vertex coordinates are doubled (3D) or tripled (2D) so that all
// tessellation vertices have integer coordinates.

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amoebot/geometry.hpp"

namespace amoebot {

struct BettiNumbers {
  int b0 = 0;
  int b1 = 0;
  int b2 = 0;

  friend constexpr bool operator==(const BettiNumbers&, const BettiNumbers&) = default;
};

inline std::string to_string(const BettiNumbers& b) {
  return "(b0=" + std::to_string(b.b0) + ", b1=" + std::to_string(b.b1) +
         ", b2=" + std::to_string(b.b2) + ")";
}

// One codimension-1 cell of the tessellation: a rhombus between two adjacent
// lattice nodes (3D, arity 4) or a full hexagon (2D, arity 6, where it is the
// top-dimensional cell).
struct DualFace {
  int arity = 0;
  std::array<int, 6> verts{};  // first `arity` entries used, in cyclic order
  std::array<int, 6> edges{};  // edges[k] joins verts[k] and verts[(k+1)%arity]
  int incident_occupied = 0;   // occupied lattice cells this face bounds (3D: 1 or 2)
};

struct DualComplex {
  Dim dim = Dim::three;
  std::vector<Vec3> cells;  // occupied lattice nodes, sorted
  std::vector<Vec3> verts;  // doubled (3D) / tripled (2D) coordinates
  std::vector<std::array<int, 2>> edges;
  std::vector<DualFace> faces;
  std::vector<std::array<int, 12>> cell_faces;  // 3D only: 12 face indices per cell

  int vert_count() const { return static_cast<int>(verts.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  int cell3_count() const { return dim == Dim::three ? static_cast<int>(cells.size()) : 0; }

  // V - E + F - C of the solid union.
  int euler_characteristic() const {
    return vert_count() - edge_count() + face_count() - cell3_count();
  }
};

// ---------------------------------------------------------------------------

inline bool is_connected(const std::vector<NodePos>& occupied) {
  if (occupied.empty()) return false;
  std::unordered_set<Vec3, Vec3Hash> set;
  for (const NodePos& p : occupied) {
    require_valid_node(p);
    set.insert(p);
  }
  std::unordered_set<Vec3, Vec3Hash> seen{occupied.front()};
  std::queue<Vec3> queue;
  queue.push(occupied.front());
  while (!queue.empty()) {
    const Vec3 p = queue.front();
    queue.pop();
    for (const Vec3& d : kOffsets) {
      const Vec3 q = p + d;
      if (set.contains(q) && seen.insert(q).second) queue.push(q);
    }
  }
  return seen.size() == set.size();
}

namespace detail {

class ComplexBuilder {
 public:
  int vert(const Vec3& key) {
    auto [it, fresh] = vert_ids_.try_emplace(key, static_cast<int>(out_.verts.size()));
    if (fresh) out_.verts.push_back(key);
    return it->second;
  }

  int edge(int a, int b) {
    if (a > b) std::swap(a, b);
    auto [it, fresh] =
        edge_ids_.try_emplace(std::pair{a, b}, static_cast<int>(out_.edges.size()));
    if (fresh) out_.edges.push_back({a, b});
    return it->second;
  }

  // Returns the face index; creates the face (with its verts/edges) on first
  // sight, otherwise just bumps the occupied-incidence count.
  int face(const Vec3& key, const std::vector<Vec3>& cycle) {
    auto [it, fresh] = face_ids_.try_emplace(key, static_cast<int>(out_.faces.size()));
    if (fresh) {
      DualFace f;
      f.arity = static_cast<int>(cycle.size());
      for (int k = 0; k < f.arity; ++k) f.verts[k] = vert(cycle[static_cast<std::size_t>(k)]);
      for (int k = 0; k < f.arity; ++k) f.edges[k] = edge(f.verts[k], f.verts[(k + 1) % f.arity]);
      f.incident_occupied = 1;
      out_.faces.push_back(f);
    } else {
      ++out_.faces[static_cast<std::size_t>(it->second)].incident_occupied;
    }
    return it->second;
  }

  DualComplex take() { return std::move(out_); }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<int, int>& p) const noexcept {
      return Vec3Hash{}(Vec3{p.first, p.second, 0});
    }
  };
  DualComplex out_;
  std::unordered_map<Vec3, int, Vec3Hash> vert_ids_;
  std::unordered_map<std::pair<int, int>, int, PairHash> edge_ids_;
  std::unordered_map<Vec3, int, Vec3Hash> face_ids_;
};

// In-plane offsets in hexagon cycle order (consecutive entries adjacent).
inline constexpr std::array<int, 6> kPlaneRing = {0, 5, 4, 3, 2, 1};

}  // namespace detail

inline DualComplex build_dual_complex(std::vector<NodePos> occupied, Dim dim) {
  if (occupied.empty()) throw std::invalid_argument("dual complex of an empty node set");
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
  for (const NodePos& p : occupied) {
    require_valid_node(p);
    if (dim == Dim::two && !in_home_plane(p)) {
      throw std::invalid_argument("2D node " + to_string(p) + " is outside the x+y+z=0 plane");
    }
  }

  detail::ComplexBuilder b;
  DualComplex result;
  if (dim == Dim::three) {
    std::vector<std::array<int, 12>> cell_faces;
    for (const NodePos& p : occupied) {
      const Vec3 c2 = p * 2;  // doubled cell center
      std::array<int, 12> fids{};
      for (int d = 0; d < kNumOffsets; ++d) {
        const Vec3& off = kOffsets[d];
        // Axes: i, j carry the nonzero components of the offset, k is zero.
        int axis_k = off.x == 0 ? 0 : (off.y == 0 ? 1 : 2);
        Vec3 ek{axis_k == 0, axis_k == 1, axis_k == 2};
        // Two degree-6 vertices (doubled axis points) and two degree-4
        // vertices (odd triples), alternating around the rhombus.
        Vec3 a6_i, a6_j;
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
        const Vec3 q_top = c2 + off + ek;
        const Vec3 q_bot = c2 + off - ek;
        fids[static_cast<std::size_t>(d)] = b.face(c2 + off, {a6_i, q_top, a6_j, q_bot});
      }
      cell_faces.push_back(fids);
    }
    result = b.take();
    result.cell_faces = std::move(cell_faces);
  } else {
    for (const NodePos& p : occupied) {
      const Vec3 c3 = p * 3;  // tripled cell center
      std::vector<Vec3> corners;
      corners.reserve(6);
      for (int k = 0; k < 6; ++k) {
        const Vec3& u = kOffsets[static_cast<std::size_t>(detail::kPlaneRing[static_cast<std::size_t>(k)])];
        const Vec3& v = kOffsets[static_cast<std::size_t>(detail::kPlaneRing[static_cast<std::size_t>((k + 1) % 6)])];
        corners.push_back(c3 + u + v);
      }
      b.face(c3, corners);
    }
    result = b.take();
  }
  result.dim = dim;
  result.cells = std::move(occupied);
  return result;
}

// ---------------------------------------------------------------------------
// GF(2) rank by sparse column reduction (pivot = largest remaining row index).

inline int gf2_rank(std::vector<std::vector<int>> cols, int nrows) {
  std::vector<int> pivot_owner(static_cast<std::size_t>(nrows), -1);
  int rank = 0;
  std::vector<int> merged;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto& col = cols[j];
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      const int p = col.back();
      const int owner = pivot_owner[static_cast<std::size_t>(p)];
      if (owner < 0) {
        pivot_owner[static_cast<std::size_t>(p)] = static_cast<int>(j);
        ++rank;
        break;
      }
      // col ^= cols[owner] (symmetric difference of sorted index lists)
      const auto& other = cols[static_cast<std::size_t>(owner)];
      merged.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(merged));
      col.swap(merged);
    }
  }
  return rank;
}

inline BettiNumbers betti(const DualComplex& cx) {
  std::vector<std::vector<int>> d1;
  d1.reserve(cx.edges.size());
  for (const auto& e : cx.edges) d1.push_back({e[0], e[1]});
  const int r1 = gf2_rank(std::move(d1), cx.vert_count());

  std::vector<std::vector<int>> d2;
  d2.reserve(cx.faces.size());
  for (const DualFace& f : cx.faces) {
    std::vector<int> col(f.edges.begin(), f.edges.begin() + f.arity);
    d2.push_back(std::move(col));
  }
  const int r2 = gf2_rank(std::move(d2), cx.edge_count());

  int r3 = 0;
  if (cx.dim == Dim::three) {
    std::vector<std::vector<int>> d3;
    d3.reserve(cx.cell_faces.size());
    for (const auto& fs : cx.cell_faces) d3.push_back(std::vector<int>(fs.begin(), fs.end()));
    r3 = gf2_rank(std::move(d3), cx.face_count());
    // A finite union always has an exposed face, so there are no 3-cycles.
    if (r3 != cx.cell3_count()) throw std::logic_error("unexpected closed 3-cycle in dual complex");
  }

  BettiNumbers b;
  b.b0 = cx.vert_count() - r1;
  b.b1 = (cx.edge_count() - r1) - r2;
  b.b2 = (cx.face_count() - r2) - r3;
  return b;
}

inline bool is_contractible(const std::vector<NodePos>& occupied, Dim dim) {
  if (occupied.empty()) throw std::invalid_argument("is_contractible: empty node set");
  if (!is_connected(occupied)) {
    throw std::invalid_argument("is_contractible requires a connected node set; check connectivity first");
  }
  return betti(build_dual_complex(occupied, dim)) == BettiNumbers{1, 0, 0};
}

// ---------------------------------------------------------------------------
// Boundary surface genus (3D). The boundary faces (incident to exactly one
// occupied cell) form a closed surface: every tessellation edge has three
// incident faces pairing the three cells around it, so a boundary edge always
// bounds exactly two boundary faces. The surface can still be pinched at
// square-configuration vertices; those are split into one vertex copy per
// corner cycle so each component is a closed 2-manifold.

inline std::vector<int> boundary_genus(const DualComplex& cx) {
  if (cx.dim != Dim::three) {
    throw std::invalid_argument("boundary_genus is defined for 3D complexes only");
  }
  std::vector<int> bfaces;
  std::vector<int> face_pos(static_cast<std::size_t>(cx.face_count()), -1);
  for (int f = 0; f < cx.face_count(); ++f) {
    if (cx.faces[static_cast<std::size_t>(f)].incident_occupied == 1) {
      face_pos[static_cast<std::size_t>(f)] = static_cast<int>(bfaces.size());
      bfaces.push_back(f);
    }
  }
  if (bfaces.empty()) return {};

  // edge -> the two boundary faces along it
  std::unordered_map<int, std::array<int, 2>> edge_faces;
  for (int f : bfaces) {
    const DualFace& face = cx.faces[static_cast<std::size_t>(f)];
    for (int k = 0; k < face.arity; ++k) {
      auto [it, fresh] = edge_faces.try_emplace(face.edges[k], std::array<int, 2>{f, -1});
      if (!fresh) {
        if (it->second[1] != -1) throw std::logic_error("boundary edge with more than two faces");
        it->second[1] = f;
      }
    }
  }
  for (const auto& [e, fs] : edge_faces) {
    if (fs[1] == -1) throw std::logic_error("boundary surface is not closed along an edge");
  }

  // Connected components of the face adjacency graph.
  std::vector<int> comp(bfaces.size(), -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < bfaces.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int c = ncomp++;
    std::queue<int> queue;
    queue.push(bfaces[s]);
    comp[s] = c;
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop();
      const DualFace& face = cx.faces[static_cast<std::size_t>(f)];
      for (int k = 0; k < face.arity; ++k) {
        for (int g : edge_faces.at(face.edges[k])) {
          const int pos = face_pos[static_cast<std::size_t>(g)];
          if (comp[static_cast<std::size_t>(pos)] < 0) {
            comp[static_cast<std::size_t>(pos)] = c;
            queue.push(g);
          }
        }
      }
    }
  }

  std::vector<std::unordered_set<int>> comp_edges(static_cast<std::size_t>(ncomp));
  std::vector<int> comp_face_count(static_cast<std::size_t>(ncomp), 0);
  // (vertex, component) -> incident boundary faces
  std::map<std::pair<int, int>, std::vector<int>> vert_faces;
  for (std::size_t s = 0; s < bfaces.size(); ++s) {
    const int f = bfaces[s];
    const int c = comp[s];
    const DualFace& face = cx.faces[static_cast<std::size_t>(f)];
    ++comp_face_count[static_cast<std::size_t>(c)];
    for (int k = 0; k < face.arity; ++k) {
      comp_edges[static_cast<std::size_t>(c)].insert(face.edges[k]);
      vert_faces[{face.verts[k], c}].push_back(f);
    }
  }

  // Count vertex copies: corner cycles of faces around each vertex within a
  // component. Two faces are corner-adjacent at v when they share an edge
  // incident to v; the local graph is 2-regular, so its components are cycles.
  std::vector<int> comp_vert_copies(static_cast<std::size_t>(ncomp), 0);
  for (const auto& [key, faces_at_v] : vert_faces) {
    const auto& [v, c] = key;
    std::unordered_map<int, std::vector<int>> local;  // edge at v -> faces
    for (int f : faces_at_v) {
      const DualFace& face = cx.faces[static_cast<std::size_t>(f)];
      for (int k = 0; k < face.arity; ++k) {
        const int a = face.verts[k];
        const int bv = face.verts[(k + 1) % face.arity];
        if (a == v || bv == v) local[face.edges[k]].push_back(f);
      }
    }
    std::unordered_map<int, std::vector<int>> adj;
    for (const auto& [e, fs] : local) {
      if (fs.size() != 2) throw std::logic_error("non-manifold corner edge at boundary vertex");
      adj[fs[0]].push_back(fs[1]);
      adj[fs[1]].push_back(fs[0]);
    }
    std::unordered_set<int> seen;
    int cycles = 0;
    for (int f : faces_at_v) {
      if (!seen.insert(f).second) continue;
      ++cycles;
      std::queue<int> queue;
      queue.push(f);
      while (!queue.empty()) {
        const int g = queue.front();
        queue.pop();
        for (int h : adj[g]) {
          if (seen.insert(h).second) queue.push(h);
        }
      }
    }
    comp_vert_copies[static_cast<std::size_t>(c)] += cycles;
  }

  std::vector<int> genus;
  genus.reserve(static_cast<std::size_t>(ncomp));
  for (int c = 0; c < ncomp; ++c) {
    const int chi = comp_vert_copies[static_cast<std::size_t>(c)] -
                    static_cast<int>(comp_edges[static_cast<std::size_t>(c)].size()) +
                    comp_face_count[static_cast<std::size_t>(c)];
    if (chi % 2 != 0 || chi > 2) throw std::logic_error("boundary component with invalid Euler characteristic");
    genus.push_back((2 - chi) / 2);
  }
  std::sort(genus.begin(), genus.end());
  return genus;
}

inline std::vector<int> boundary_genus(const std::vector<NodePos>& occupied) {
  return boundary_genus(build_dual_complex(occupied, Dim::three));
}

}  // namespace amoebot
