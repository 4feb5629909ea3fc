#include "tas/diffusion/diffusion.hpp"

#include <queue>
#include <unordered_map>

#include "tas/core/dynamics.hpp"

namespace tas {

namespace {

inline int move_count(int dimension) {
  return dimension == 3 ? 6 : (dimension == 2 ? 4 : 2);
}

inline Dir move_dir(int dimension, int i) {
  if (dimension == 1) return i == 0 ? Dir::E : Dir::W;
  return kAllDirs[i];
}

inline int64_t escape_distance(const Aabb& box, const Coord& c,
                               int dimension) {
  // Steps to the nearest cell outside the box, per available axes.
  int64_t best = (box.hi.x + 1) - c.x;
  best = std::min(best, c.x - (box.lo.x - 1));
  if (dimension >= 2) {
    best = std::min(best, (box.hi.y + 1) - c.y);
    best = std::min(best, c.y - (box.lo.y - 1));
  }
  if (dimension >= 3) {
    best = std::min(best, (box.hi.z + 1) - c.z);
    best = std::min(best, c.z - (box.lo.z - 1));
  }
  return best;
}

struct SearchOutcome {
  bool escaped = false;
  std::vector<uint64_t> visited;  // all visited cells (inside bbox)
};

// Best-first search through empty cells. Terminates on first cell outside
// the bbox or when the reachable empty set inside it is exhausted.
SearchOutcome empty_space_search(const Assembly& a, const Coord& start,
                                 int dimension, bool collect) {
  SearchOutcome out;
  const Aabb& box = a.bbox();
  if (!box.contains(start)) {
    out.escaped = true;
    return out;
  }
  using Item = std::pair<int64_t, uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  CellMap seen;
  seen.insert(pack_coord(start), 0);
  heap.emplace(escape_distance(box, start, dimension), pack_coord(start));
  if (collect) out.visited.push_back(pack_coord(start));
  const int moves = move_count(dimension);
  while (!heap.empty()) {
    auto [dist, key] = heap.top();
    heap.pop();
    Coord c = unpack_coord(key);
    for (int i = 0; i < moves; ++i) {
      Coord nb = neighbor(c, move_dir(dimension, i));
      if (a.occupied(nb)) continue;
      if (!box.contains(nb)) {
        out.escaped = true;
        return out;
      }
      uint64_t nk = pack_coord(nb);
      if (seen.insert(nk, 0)) {
        if (collect) out.visited.push_back(nk);
        heap.emplace(escape_distance(box, nb, dimension), nk);
      }
    }
  }
  return out;
}

}  // namespace

bool has_diffusion_path(const Assembly& a, const Coord& location,
                        int dimension) {
  if (a.occupied(location)) return false;
  return empty_space_search(a, location, dimension, false).escaped;
}

bool DiffusionIndex::open(const Assembly& a, const Coord& location) {
  uint64_t key = pack_coord(location);
  if (blocked_.contains(key)) return false;
  SearchOutcome out = empty_space_search(a, location, dimension_, true);
  if (out.escaped) return true;
  int32_t region = next_region_++;
  for (uint64_t k : out.visited) blocked_.insert(k, region);
  return false;
}

void DiffusionIndex::on_attach(const Coord& c) {
  // Blocked cells stay blocked under attachment; the filled cell itself is
  // never queried again. Nothing to invalidate.
  (void)c;
}

std::vector<std::pair<Coord, TileId>> restricted_frontier(
    const TileSystem& sys, const Assembly& a) {
  auto full = frontier(sys, a);
  if (sys.diffusion == Diffusion::None) return full;
  std::vector<std::pair<Coord, TileId>> out;
  out.reserve(full.size());
  CellMap verdict;  // 1 = open, 0 = blocked
  for (auto& [c, t] : full) {
    uint64_t key = pack_coord(c);
    TileId v = verdict.find(key);
    bool ok;
    if (v == kNoTile) {
      ok = has_diffusion_path(a, c, sys.dimension);
      verdict.insert(key, ok ? 1 : 0);
    } else {
      ok = (v == 1);
    }
    if (ok) out.emplace_back(c, t);
  }
  return out;
}

std::vector<ConstrainedRegion> constrained_regions(const Assembly& a,
                                                   int dimension) {
  std::vector<ConstrainedRegion> out;
  CellMap assigned;  // empty cell -> 1 when already in some region
  const int moves = move_count(dimension);
  std::vector<std::pair<Coord, TileId>> tiles = a.sorted_placements();
  for (auto& [tc, tt] : tiles) {
    for (int i = 0; i < moves; ++i) {
      Coord c = neighbor(tc, move_dir(dimension, i));
      if (a.occupied(c)) continue;
      uint64_t key = pack_coord(c);
      if (assigned.contains(key)) continue;
      SearchOutcome sr = empty_space_search(a, c, dimension, true);
      if (sr.escaped) {
        assigned.insert(key, 1);  // open; remember to skip re-search
        continue;
      }
      ConstrainedRegion region;
      for (uint64_t k : sr.visited) {
        assigned.insert(k, 1);
        region.region.push_back(unpack_coord(k));
      }
      std::sort(region.region.begin(), region.region.end());
      // Constraining subassembly: tiles face-adjacent to the region.
      CellMap picked;
      for (const Coord& rc : region.region) {
        for (int j = 0; j < moves; ++j) {
          Coord nb = neighbor(rc, move_dir(dimension, j));
          if (a.occupied(nb) && picked.insert(pack_coord(nb), 1)) {
            region.constraining_subassembly.push_back(nb);
          }
        }
      }
      std::sort(region.constraining_subassembly.begin(),
                region.constraining_subassembly.end());
      out.push_back(std::move(region));
    }
  }
  return out;
}

}  // namespace tas
