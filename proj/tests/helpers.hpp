#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tas/core/dynamics.hpp"
#include "tas/core/system.hpp"

namespace tas::test {

// Compact builder for small hand-written systems.
struct SystemBuilder {
  TileSystem sys;

  SystemBuilder(int dim, int tau, Diffusion diff = Diffusion::None) {
    sys.dimension = dim;
    sys.temperature = tau;
    sys.diffusion = diff;
    sys.seed = Assembly(dim);
  }

  // faces: list of (dir, label, strength)
  TileId tile(const std::string& name,
              std::vector<std::tuple<Dir, std::string, int>> faces) {
    TileType t;
    t.name = name;
    for (auto& [d, label, s] : faces) {
      t.glue(d) = Glue{sys.glues.intern(label), s};
    }
    return sys.tiles.add(std::move(t));
  }

  void seed_at(const Coord& c, TileId t) { sys.seed.place(c, t); }
};

// Literal re-implementation of the frontier definition: every empty cell
// adjacent to the assembly, every tile type, matched strengths summed.
inline std::vector<std::pair<Coord, TileId>> naive_frontier(
    const TileSystem& sys, const Assembly& a) {
  std::set<Coord> border;
  a.for_each([&](const Coord& c, TileId) {
    for (Dir d : kAllDirs) {
      Coord nb = neighbor(c, d);
      if (!a.occupied(nb)) border.insert(nb);
    }
  });
  std::vector<std::pair<Coord, TileId>> out;
  for (const Coord& c : border) {
    for (const TileType& t : sys.tiles.tiles()) {
      int total = 0;
      for (Dir d : kAllDirs) {
        TileId nb = a.at(neighbor(c, d));
        if (nb == kNoTile) continue;
        const Glue& mine = t.glue(d);
        const Glue& theirs = sys.tiles.tile(nb).glue(opposite(d));
        if (mine.label != kNullGlue && mine.label == theirs.label &&
            mine.strength == theirs.strength && mine.strength > 0) {
          total += mine.strength;
        }
      }
      if (total >= sys.temperature) out.emplace_back(c, t.id);
    }
  }
  return out;
}

// Brute-force stability: enumerate all 2-partitions of the placements and
// check every cut weight. Only for tiny assemblies.
inline bool brute_force_stable(const TileSet& ts, const Assembly& a,
                               int tau) {
  auto cells = a.sorted_placements();
  const size_t n = cells.size();
  if (n == 0) return false;
  if (n == 1) return true;
  if (n > 20) throw std::runtime_error("too big for brute force");
  for (uint64_t mask = 1; mask < (uint64_t{1} << n) - 1; ++mask) {
    int64_t cut = 0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        bool side_i = (mask >> i) & 1;
        bool side_j = (mask >> j) & 1;
        if (side_i == side_j) continue;
        Coord diff = cells[j].first - cells[i].first;
        int64_t manhattan =
            std::abs(diff.x) + std::abs(diff.y) + std::abs(diff.z);
        if (manhattan != 1) continue;
        Dir d;
        if (diff.x == 1) d = Dir::E;
        else if (diff.x == -1) d = Dir::W;
        else if (diff.y == 1) d = Dir::N;
        else if (diff.y == -1) d = Dir::S;
        else if (diff.z == 1) d = Dir::U;
        else d = Dir::D;
        const Glue& g1 = ts.tile(cells[i].second).glue(d);
        const Glue& g2 = ts.tile(cells[j].second).glue(opposite(d));
        if (g1.label != kNullGlue && g1.label == g2.label &&
            g1.strength == g2.strength && g1.strength > 0) {
          cut += g1.strength;
        }
      }
    }
    if (cut < tau) return false;
  }
  return true;
}

// Random small systems for property sweeps: |T|<=max_tiles, tau in {1,2},
// single-tile seed, glue labels from a small pool with consistent strengths.
inline TileSystem random_system(uint64_t seed, int max_tiles = 5) {
  uint64_t s = seed;
  auto rnd = [&](uint64_t mod) {
    s = splitmix64(s);
    return s % mod;
  };
  int dim = 2 + static_cast<int>(rnd(2));
  int tau = 1 + static_cast<int>(rnd(2));
  SystemBuilder b(dim, tau);
  int ntiles = 1 + static_cast<int>(rnd(max_tiles));
  int nglue = 2 + static_cast<int>(rnd(4));
  std::vector<int> strength(nglue);
  for (int i = 0; i < nglue; ++i) {
    strength[i] = 1 + static_cast<int>(rnd(tau));
  }
  int nd = dim == 3 ? 6 : 4;
  for (int i = 0; i < ntiles; ++i) {
    std::vector<std::tuple<Dir, std::string, int>> faces;
    for (int f = 0; f < nd; ++f) {
      if (rnd(3) == 0) continue;  // null face
      int g = static_cast<int>(rnd(nglue));
      faces.emplace_back(kAllDirs[f], "g" + std::to_string(g), strength[g]);
    }
    b.tile("t" + std::to_string(i), std::move(faces));
  }
  b.seed_at({0, 0, 0}, 0);
  return std::move(b.sys);
}

}  // namespace tas::test
