#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tas/core/geometry.hpp"

namespace tas {

using GlueId = int32_t;   // 0 is the null glue
using TileId = int32_t;   // dense 0..|T|-1
inline constexpr GlueId kNullGlue = 0;
inline constexpr TileId kNoTile = -1;

struct Glue {
  GlueId label = kNullGlue;
  int32_t strength = 0;
};

struct TileType {
  std::string name;
  TileId id = kNoTile;
  std::array<Glue, 6> glues{};  // indexed by Dir

  const Glue& glue(Dir d) const { return glues[static_cast<size_t>(d)]; }
  Glue& glue(Dir d) { return glues[static_cast<size_t>(d)]; }
};

// Interns glue label strings to dense ids. Label 0 is reserved for the null
// glue (empty label, strength irrelevant).
class GlueBook {
 public:
  GlueBook() {
    names_.push_back("");
    ids_.emplace("", 0);
  }

  GlueId intern(const std::string& name) {
    if (name.empty()) return kNullGlue;
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    GlueId id = static_cast<GlueId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
  }

  const std::string& name(GlueId id) const { return names_[id]; }
  size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, GlueId> ids_;
};

// A tile set owns its tile types plus the match index used by the frontier:
// for (direction d, glue g), the tiles whose face on opposite(d) carries g.
class TileSet {
 public:
  TileId add(TileType t) {
    t.id = static_cast<TileId>(tiles_.size());
    tiles_.push_back(std::move(t));
    index_ready_ = false;
    return tiles_.back().id;
  }

  const TileType& tile(TileId id) const { return tiles_[id]; }
  size_t size() const { return tiles_.size(); }
  bool empty() const { return tiles_.empty(); }
  const std::vector<TileType>& tiles() const { return tiles_; }

  // Tiles that present glue g on face opposite(d); i.e. candidates to sit at
  // the d-neighbor of a tile whose d face carries g.
  const std::vector<TileId>& candidates(Dir d, GlueId g) const {
    build_index();
    const auto& m = match_[static_cast<size_t>(d)];
    if (static_cast<size_t>(g) >= m.size()) return kEmpty_;
    return m[g];
  }

  void build_index() const {
    if (index_ready_) return;
    GlueId max_glue = 0;
    for (const TileType& t : tiles_) {
      for (Dir d : kAllDirs) max_glue = std::max(max_glue, t.glue(d).label);
    }
    for (auto& m : match_) {
      m.clear();
      m.resize(static_cast<size_t>(max_glue) + 1);
    }
    for (const TileType& t : tiles_) {
      for (Dir d : kAllDirs) {
        const Glue& g = t.glue(opposite(d));
        if (g.label != kNullGlue && g.strength > 0) {
          match_[static_cast<size_t>(d)][g.label].push_back(t.id);
        }
      }
    }
    index_ready_ = true;
  }

 private:
  std::vector<TileType> tiles_;
  mutable std::array<std::vector<std::vector<TileId>>, 6> match_;
  mutable bool index_ready_ = false;
  static const std::vector<TileId> kEmpty_;
};

inline const std::vector<TileId> TileSet::kEmpty_{};

}  // namespace tas
