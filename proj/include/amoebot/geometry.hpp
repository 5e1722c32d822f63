#pragma once
// Geometry of the triangular (2D) and face-centered cubic (3D) lattices:
// integer node coordinates, the 12-offset neighbor shell, the 24 proper
// rotations used as amoebot orientations, and the port-label algebra.
//
// Nodes are integer triples with even coordinate sum (the FCC lattice as the
// even sublattice of the cubic lattice); neighbor offsets are the signed
// permutations of (1,1,0). The 2D lattice is the x+y+z = 0 plane of the same
// coordinate system.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace amoebot {

enum class Dim : std::uint8_t { two = 2, three = 3 };

inline const char* to_string(Dim d) { return d == Dim::two ? "2d" : "3d"; }

struct Vec3 {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
  friend constexpr auto operator<=>(const Vec3&, const Vec3&) = default;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(int k) const { return {k * x, k * y, k * z}; }
  constexpr int dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr int coord_sum() const { return x + y + z; }
};

using NodePos = Vec3;

struct Vec3Hash {
  std::size_t operator()(const Vec3& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int c : {v.x, v.y, v.z}) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)) + 0x9e3779b97f4a7c15ull +
           (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

inline std::string to_string(const Vec3& v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + "," + std::to_string(v.z) + ")";
}

inline constexpr int kNumOffsets = 12;
inline constexpr int kNumPlaneOffsets = 6;

// Reference port order: the six offsets of the x+y+z = 0 home plane, clockwise
// as seen from +(1,1,1), then the three offsets with coordinate sum +2
// ("top"), then the three with sum -2 ("bottom"), both clockwise.
inline constexpr std::array<Vec3, kNumOffsets> kOffsets = {{
    {1, -1, 0},
    {0, -1, 1},
    {-1, 0, 1},
    {-1, 1, 0},
    {0, 1, -1},
    {1, 0, -1},
    {1, 1, 0},
    {1, 0, 1},
    {0, 1, 1},
    {-1, -1, 0},
    {-1, 0, -1},
    {0, -1, -1},
}};

// Any integer vector of squared norm 2 is a signed permutation of (1,1,0).
constexpr bool is_offset(const Vec3& v) { return v.dot(v) == 2; }

constexpr int offset_index(const Vec3& v) {
  for (int i = 0; i < kNumOffsets; ++i) {
    if (kOffsets[i] == v) return i;
  }
  return -1;
}

constexpr bool valid_node(const Vec3& p) { return ((p.x + p.y + p.z) & 1) == 0; }
constexpr bool in_home_plane(const Vec3& p) { return p.coord_sum() == 0; }

inline void require_valid_node(const Vec3& p) {
  if (!valid_node(p)) {
    throw std::invalid_argument("node " + to_string(p) + " violates lattice parity (x+y+z must be even)");
  }
}

// For distinct non-opposite offsets, |a-b|^2 = 4 - 2 a.b, so the difference
// is itself an offset exactly when a.b = 1.
constexpr bool offsets_adjacent(int i, int j) {
  return i != j && kOffsets[i].dot(kOffsets[j]) == 1;
}

// a.b = 0 pairs are the diagonals of the chordless squares; a+b then has
// squared norm 4 and is never an offset.
constexpr bool offsets_perpendicular(int i, int j) {
  return i != j && kOffsets[i].dot(kOffsets[j]) == 0;
}

inline std::vector<NodePos> neighbors(const NodePos& p) {
  require_valid_node(p);
  std::vector<NodePos> out;
  out.reserve(kNumOffsets);
  for (const Vec3& d : kOffsets) out.push_back(p + d);
  return out;
}

// The six in-plane neighbors; ports 0..5 of the reference order.
inline std::vector<NodePos> plane_neighbors(const NodePos& p) {
  require_valid_node(p);
  std::vector<NodePos> out;
  out.reserve(kNumPlaneOffsets);
  for (int i = 0; i < kNumPlaneOffsets; ++i) out.push_back(p + kOffsets[i]);
  return out;
}

inline int port_count(Dim dim) { return dim == Dim::two ? kNumPlaneOffsets : kNumOffsets; }

// ---------------------------------------------------------------------------
// Orientations: the 24 proper rotations of the cubic axes, stored as signed
// permutations with determinant +1. An orientation maps the reference frame
// onto the amoebot's local frame; it permutes the offset shell bijectively.

class Orientation {
 public:
  constexpr Orientation() = default;  // identity

  static Orientation from_parts(const std::array<std::int8_t, 3>& perm,
                                const std::array<std::int8_t, 3>& sgn) {
    Orientation o;
    o.perm_ = perm;
    o.sgn_ = sgn;
    if (o.determinant() != 1) throw std::invalid_argument("orientation must be a proper rotation");
    return o;
  }

  constexpr Vec3 apply(const Vec3& v) const {
    const int in[3] = {v.x, v.y, v.z};
    int out[3] = {0, 0, 0};
    for (int k = 0; k < 3; ++k) out[perm_[k]] = sgn_[k] * in[k];
    return {out[0], out[1], out[2]};
  }

  constexpr Orientation compose(const Orientation& rhs) const {
    // (this o rhs)(v) = this(rhs(v))
    Orientation o;
    for (int k = 0; k < 3; ++k) {
      o.perm_[k] = perm_[rhs.perm_[k]];
      o.sgn_[k] = static_cast<std::int8_t>(rhs.sgn_[k] * sgn_[rhs.perm_[k]]);
    }
    return o;
  }

  constexpr Orientation inverse() const {
    Orientation o;
    for (int k = 0; k < 3; ++k) {
      o.perm_[perm_[k]] = static_cast<std::int8_t>(k);
      o.sgn_[perm_[k]] = sgn_[k];
    }
    return o;
  }

  constexpr int determinant() const {
    int parity = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (perm_[i] > perm_[j]) parity = -parity;
    return parity * sgn_[0] * sgn_[1] * sgn_[2];
  }

  friend constexpr bool operator==(const Orientation&, const Orientation&) = default;

  static const std::array<Orientation, 24>& all();
  // The rotations that map the x+y+z = 0 plane to itself; these are the
  // orientations available to amoebots in 2D mode.
  static const std::vector<Orientation>& plane_preserving();

  int index() const {
    const auto& tab = all();
    for (int i = 0; i < 24; ++i)
      if (tab[i] == *this) return i;
    throw std::logic_error("orientation not in canonical table");
  }

  static const Orientation& from_index(int i) {
    if (i < 0 || i >= 24) throw std::invalid_argument("orientation index out of range [0,24)");
    return all()[static_cast<std::size_t>(i)];
  }

 private:
  std::array<std::int8_t, 3> perm_{0, 1, 2};
  std::array<std::int8_t, 3> sgn_{1, 1, 1};
};

inline const std::array<Orientation, 24>& Orientation::all() {
  static const std::array<Orientation, 24> table = [] {
    std::array<Orientation, 24> out{};
    constexpr std::int8_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    int n = 0;
    for (const auto& p : perms) {
      for (int bits = 0; bits < 8; ++bits) {
        Orientation o;
        o.perm_ = {p[0], p[1], p[2]};
        o.sgn_ = {static_cast<std::int8_t>((bits & 1) ? -1 : 1),
                  static_cast<std::int8_t>((bits & 2) ? -1 : 1),
                  static_cast<std::int8_t>((bits & 4) ? -1 : 1)};
        if (o.determinant() == 1) out[n++] = o;
      }
    }
    if (n != 24) throw std::logic_error("expected 24 proper rotations");
    return out;
  }();
  return table;
}

inline const std::vector<Orientation>& Orientation::plane_preserving() {
  static const std::vector<Orientation> table = [] {
    std::vector<Orientation> out;
    const Vec3 n{1, 1, 1};
    for (const Orientation& o : all()) {
      const Vec3 img = o.apply(n);
      if (img == n || img == -n) out.push_back(o);
    }
    if (out.size() != 6) throw std::logic_error("expected 6 plane-preserving rotations");
    return out;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// View / spin / rotation: the 4 x 2 x 3 decomposition of the 24 orientations.
// The view is the family of triangular-lattice planes the orientation maps
// the reference home plane into, the spin picks one of the two signed normals
// of that family, and the rotation is one of the three turns about it.

struct ViewSpinRotation {
  int view = 0;      // 0..3
  int spin = 0;      // 0..1
  int rotation = 0;  // 0..2

  friend constexpr bool operator==(const ViewSpinRotation&, const ViewSpinRotation&) = default;
};

// Representatives of the four {1,1,1}-type plane-normal families, each with
// positive coordinate sum.
inline constexpr std::array<Vec3, 4> kViewNormals = {{{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}}};

namespace detail {

// 120-degree turn about (1,1,1): cycles the coordinate axes.
inline const Orientation& axis_cycle() {
  static const Orientation c = Orientation::from_parts({1, 2, 0}, {1, 1, 1});
  return c;
}

// First orientation (in canonical order) mapping (1,1,1) to each signed
// view normal.
inline const std::array<std::array<Orientation, 2>, 4>& view_spin_reps() {
  static const std::array<std::array<Orientation, 2>, 4> reps = [] {
    std::array<std::array<Orientation, 2>, 4> out{};
    std::array<std::array<bool, 2>, 4> seen{};
    for (const Orientation& o : Orientation::all()) {
      const Vec3 img = o.apply({1, 1, 1});
      for (int v = 0; v < 4; ++v) {
        for (int s = 0; s < 2; ++s) {
          const Vec3 target = s == 0 ? kViewNormals[v] : -kViewNormals[v];
          if (img == target && !seen[v][s]) {
            out[v][s] = o;
            seen[v][s] = true;
          }
        }
      }
    }
    return out;
  }();
  return reps;
}

}  // namespace detail

inline ViewSpinRotation decompose(const Orientation& o) {
  const Vec3 img = o.apply({1, 1, 1});
  for (int v = 0; v < 4; ++v) {
    for (int s = 0; s < 2; ++s) {
      const Vec3 target = s == 0 ? kViewNormals[v] : -kViewNormals[v];
      if (img != target) continue;
      const Orientation rem = detail::view_spin_reps()[v][s].inverse().compose(o);
      Orientation c;  // identity
      for (int r = 0; r < 3; ++r) {
        if (rem == c) return {v, s, r};
        c = detail::axis_cycle().compose(c);
      }
      throw std::logic_error("orientation remainder not a turn about (1,1,1)");
    }
  }
  throw std::logic_error("orientation image of (1,1,1) not a view normal");
}

inline Orientation recompose(const ViewSpinRotation& vsr) {
  if (vsr.view < 0 || vsr.view > 3 || vsr.spin < 0 || vsr.spin > 1 || vsr.rotation < 0 ||
      vsr.rotation > 2) {
    throw std::invalid_argument("view/spin/rotation components out of range");
  }
  Orientation c;
  for (int r = 0; r < vsr.rotation; ++r) c = detail::axis_cycle().compose(c);
  return detail::view_spin_reps()[vsr.view][vsr.spin].compose(c);
}

// ---------------------------------------------------------------------------
// Port labels. An amoebot with orientation R labels the incident edge toward
// world offset d with the reference index of R^-1 d.

using PortLabel = int;

inline PortLabel port_of(const Orientation& o, const Vec3& world_offset) {
  const int idx = offset_index(o.inverse().apply(world_offset));
  if (idx < 0) {
    throw std::invalid_argument("port_of: " + to_string(world_offset) + " is not a neighbor offset");
  }
  return idx;
}

inline Vec3 offset_of_port(const Orientation& o, PortLabel port) {
  if (port < 0 || port >= kNumOffsets) throw std::invalid_argument("port label out of range");
  return o.apply(kOffsets[port]);
}

// Re-expresses the offset named by my_port in the neighbor's label space.
inline PortLabel translate_port(const Orientation& mine, const Orientation& theirs,
                                PortLabel my_port) {
  return port_of(theirs, offset_of_port(mine, my_port));
}

// ---------------------------------------------------------------------------
// Chordless squares. For perpendicular offsets a, b the four nodes
// p, p+a, p+a+b, p+b form a 4-cycle whose diagonals (p, p+a+b) and
// (p+a, p+b) are at squared distance 4 and hence non-adjacent.

struct SquareThrough {
  int offset_a = 0;  // index into kOffsets, offset_a < offset_b
  int offset_b = 0;
  NodePos catty;     // p + a + b, the diagonal partner of p
};

inline std::vector<SquareThrough> squares_through(const NodePos& p) {
  std::vector<SquareThrough> out;
  for (int i = 0; i < kNumOffsets; ++i) {
    for (int j = i + 1; j < kNumOffsets; ++j) {
      if (offsets_perpendicular(i, j)) out.push_back({i, j, p + kOffsets[i] + kOffsets[j]});
    }
  }
  return out;
}

}  // namespace amoebot
