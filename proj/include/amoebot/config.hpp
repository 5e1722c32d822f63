#pragma once
// Configuration files: the occupied node set, lattice mode, and per-amoebot
// orientations (explicit, identity, or seeded-random). Stored as a single
// JSON document with a versioned header.

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "amoebot/geometry.hpp"
#include "amoebot/topology.hpp"

namespace amoebot {

using Json = nlohmann::ordered_json;

inline constexpr const char* kConfigFormat = "erosim-config";
inline constexpr int kConfigVersion = 1;

enum class OrientationMode : std::uint8_t { identity, random, explicit_list };

struct Configuration {
  Dim dim = Dim::three;
  std::vector<NodePos> nodes;
  OrientationMode orientation_mode = OrientationMode::identity;
  std::uint64_t orientation_seed = 0;     // random mode
  std::vector<int> orientation_indices;   // explicit mode, canonical indices 0..23

  int size() const { return static_cast<int>(nodes.size()); }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

inline Dim dim_from_string(const std::string& s) {
  if (s == "2d") return Dim::two;
  if (s == "3d") return Dim::three;
  throw std::invalid_argument("unknown dim '" + s + "' (expected 2d or 3d)");
}

inline Json to_json(const Configuration& cfg) {
  Json j;
  j["format"] = kConfigFormat;
  j["version"] = kConfigVersion;
  j["dim"] = to_string(cfg.dim);
  Json nodes = Json::array();
  for (const NodePos& p : cfg.nodes) nodes.push_back(Json::array({p.x, p.y, p.z}));
  j["nodes"] = std::move(nodes);
  Json ori;
  switch (cfg.orientation_mode) {
    case OrientationMode::identity:
      ori["mode"] = "identity";
      break;
    case OrientationMode::random:
      ori["mode"] = "random";
      ori["seed"] = cfg.orientation_seed;
      break;
    case OrientationMode::explicit_list:
      ori["mode"] = "explicit";
      ori["values"] = cfg.orientation_indices;
      break;
  }
  j["orientations"] = std::move(ori);
  return j;
}

inline Configuration configuration_from_json(const Json& j) {
  if (!j.contains("format") || j.at("format") != kConfigFormat) {
    throw std::invalid_argument("not an " + std::string(kConfigFormat) + " document");
  }
  if (j.at("version").get<int>() != kConfigVersion) {
    throw std::invalid_argument("unsupported config version");
  }
  Configuration cfg;
  cfg.dim = dim_from_string(j.at("dim").get<std::string>());
  for (const auto& n : j.at("nodes")) {
    if (!n.is_array() || n.size() != 3) throw std::invalid_argument("node entries must be integer triples");
    cfg.nodes.push_back({n[0].get<int>(), n[1].get<int>(), n[2].get<int>()});
  }
  const Json& ori = j.at("orientations");
  const std::string mode = ori.at("mode").get<std::string>();
  if (mode == "identity") {
    cfg.orientation_mode = OrientationMode::identity;
  } else if (mode == "random") {
    cfg.orientation_mode = OrientationMode::random;
    cfg.orientation_seed = ori.at("seed").get<std::uint64_t>();
  } else if (mode == "explicit") {
    cfg.orientation_mode = OrientationMode::explicit_list;
    cfg.orientation_indices = ori.at("values").get<std::vector<int>>();
  } else {
    throw std::invalid_argument("unknown orientation mode '" + mode + "'");
  }
  return cfg;
}

inline std::string serialize_configuration(const Configuration& cfg) {
  return to_json(cfg).dump(2) + "\n";
}

inline Configuration parse_configuration(const std::string& text) {
  return configuration_from_json(Json::parse(text));
}

inline void save_configuration(const Configuration& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize_configuration(cfg);
}

inline Configuration load_configuration(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_configuration(ss.str());
}

// ---------------------------------------------------------------------------

struct ValidationOptions {
  bool check_topology = true;  // connectivity + contractibility of the node set
};

inline void validate_configuration(const Configuration& cfg, const ValidationOptions& opts = {}) {
  if (cfg.nodes.empty()) throw std::invalid_argument("configuration has no nodes");
  std::unordered_set<Vec3, Vec3Hash> seen;
  for (const NodePos& p : cfg.nodes) {
    require_valid_node(p);
    if (cfg.dim == Dim::two && !in_home_plane(p)) {
      throw std::invalid_argument("2D configuration node " + to_string(p) +
                                  " is outside the x+y+z=0 plane");
    }
    if (!seen.insert(p).second) throw std::invalid_argument("duplicate node " + to_string(p));
  }
  if (cfg.orientation_mode == OrientationMode::explicit_list) {
    if (cfg.orientation_indices.size() != cfg.nodes.size()) {
      throw std::invalid_argument("orientation list length does not match node count");
    }
    for (int idx : cfg.orientation_indices) {
      const Orientation& o = Orientation::from_index(idx);  // range-checks
      if (cfg.dim == Dim::two) {
        const Vec3 img = o.apply({1, 1, 1});
        if (img != Vec3{1, 1, 1} && img != Vec3{-1, -1, -1}) {
          throw std::invalid_argument("2D amoebot orientation must preserve the home plane");
        }
      }
    }
  }
  if (opts.check_topology) {
    if (!is_connected(cfg.nodes)) throw std::invalid_argument("configuration is not connected");
    if (!is_contractible(cfg.nodes, cfg.dim)) {
      throw std::invalid_argument("configuration is not contractible (its dual union has a hole)");
    }
  }
}

// Materializes one orientation per amoebot, in node order. Random mode draws
// from the 24 rotations (3D) or the 6 plane-preserving ones (2D).
inline std::vector<Orientation> resolve_orientations(const Configuration& cfg) {
  std::vector<Orientation> out;
  out.reserve(cfg.nodes.size());
  switch (cfg.orientation_mode) {
    case OrientationMode::identity:
      out.assign(cfg.nodes.size(), Orientation{});
      break;
    case OrientationMode::explicit_list:
      if (cfg.orientation_indices.size() != cfg.nodes.size()) {
        throw std::invalid_argument("orientation list length does not match node count");
      }
      for (int idx : cfg.orientation_indices) out.push_back(Orientation::from_index(idx));
      break;
    case OrientationMode::random: {
      std::mt19937_64 rng(cfg.orientation_seed);
      if (cfg.dim == Dim::two) {
        const auto& pool = Orientation::plane_preserving();
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (std::size_t i = 0; i < cfg.nodes.size(); ++i) out.push_back(pool[pick(rng)]);
      } else {
        std::uniform_int_distribution<int> pick(0, 23);
        for (std::size_t i = 0; i < cfg.nodes.size(); ++i)
          out.push_back(Orientation::from_index(pick(rng)));
      }
      break;
    }
  }
  return out;
}

}  // namespace amoebot
