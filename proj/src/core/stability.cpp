#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "tas/core/system.hpp"

namespace tas {

bool Assembly::connected() const {
  if (size() == 0) return false;
  Coord start{};
  bool have = false;
  for_each([&](const Coord& c, TileId) {
    if (!have) {
      start = c;
      have = true;
    }
  });
  CellMap seen;
  std::vector<Coord> stack{start};
  seen.insert(pack_coord(start), 0);
  size_t count = 1;
  while (!stack.empty()) {
    Coord c = stack.back();
    stack.pop_back();
    for (Dir d : kAllDirs) {
      Coord nb = neighbor(c, d);
      if (occupied(nb) && seen.insert(pack_coord(nb), 0)) {
        ++count;
        stack.push_back(nb);
      }
    }
  }
  return count == size();
}

namespace {

struct BondGraph {
  std::vector<Coord> coords;
  std::unordered_map<uint64_t, int> index;
  // adjacency: (neighbor vertex, bond strength)
  std::vector<std::vector<std::pair<int, int>>> adj;
};

BondGraph build_bond_graph(const TileSet& ts, const Assembly& a) {
  BondGraph g;
  g.coords.reserve(a.size());
  a.for_each([&](const Coord& c, TileId) {
    g.index.emplace(pack_coord(c), static_cast<int>(g.coords.size()));
    g.coords.push_back(c);
  });
  g.adj.resize(g.coords.size());
  for (size_t i = 0; i < g.coords.size(); ++i) {
    const Coord& c = g.coords[i];
    TileId t = a.at(c);
    for (Dir d : {Dir::N, Dir::E, Dir::U}) {  // each edge once
      Coord nc = neighbor(c, d);
      auto it = g.index.find(pack_coord(nc));
      if (it == g.index.end()) continue;
      TileId u = a.at(nc);
      const Glue& mine = ts.tile(t).glue(d);
      const Glue& theirs = ts.tile(u).glue(opposite(d));
      if (mine.label != kNullGlue && mine.label == theirs.label &&
          mine.strength == theirs.strength && mine.strength > 0) {
        g.adj[i].emplace_back(it->second, mine.strength);
        g.adj[it->second].emplace_back(static_cast<int>(i), mine.strength);
      }
    }
  }
  return g;
}

bool bond_connected(const BondGraph& g) {
  if (g.coords.empty()) return false;
  std::vector<char> seen(g.coords.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [u, s] : g.adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.coords.size();
}

// Any bridge of weight < tau disqualifies stability at tau=2 (a cut through
// a single weight-1 bond). Iterative Tarjan bridge search.
bool has_weak_bridge(const BondGraph& g, int tau) {
  const int n = static_cast<int>(g.coords.size());
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> stack;  // (vertex, edge index)
  std::vector<int> parent_edge(n, -1);     // index into adj of parent link
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    stack.emplace_back(root, 0);
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [v, ei] = stack.back();
      if (ei < static_cast<int>(g.adj[v].size())) {
        int e = ei++;
        if (e == parent_edge[v]) continue;
        auto [u, s] = g.adj[v][e];
        if (disc[u] == -1) {
          disc[u] = low[u] = timer++;
          // record the reverse edge index as u's parent link
          for (size_t k = 0; k < g.adj[u].size(); ++k) {
            if (g.adj[u][k].first == v &&
                parent_edge[u] == -1) {  // first matching back edge
              parent_edge[u] = static_cast<int>(k);
              break;
            }
          }
          stack.emplace_back(u, 0);
        } else {
          low[v] = std::min(low[v], disc[u]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().first;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) {
            // tree edge p-v is a bridge; find its weight (parallel grid
            // edges cannot occur, so the first match is the edge)
            for (auto [u, s] : g.adj[p]) {
              if (u == v && s < tau) return true;
            }
          }
        }
      }
    }
  }
  return false;
}

// Exact global min cut (Stoer-Wagner) for small assemblies.
int64_t stoer_wagner_min_cut(const BondGraph& g) {
  const int n = static_cast<int>(g.coords.size());
  if (n < 2) return std::numeric_limits<int64_t>::max();
  std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, 0));
  for (int v = 0; v < n; ++v) {
    for (auto [u, s] : g.adj[v]) w[v][u] = s;
  }
  std::vector<int> vertices(n);
  for (int i = 0; i < n; ++i) vertices[i] = i;
  int64_t best = std::numeric_limits<int64_t>::max();
  int m = n;
  while (m > 1) {
    std::vector<int64_t> conn(m, 0);
    std::vector<char> added(m, 0);
    int s = -1, t = -1;
    int64_t cut_of_phase = 0;
    for (int it = 0; it < m; ++it) {
      int sel = -1;
      for (int i = 0; i < m; ++i) {
        if (!added[i] && (sel == -1 || conn[i] > conn[sel])) sel = i;
      }
      added[sel] = 1;
      s = t;
      t = sel;
      cut_of_phase = conn[sel];
      for (int i = 0; i < m; ++i) {
        if (!added[i]) conn[i] += w[vertices[sel]][vertices[i]];
      }
    }
    best = std::min(best, cut_of_phase);
    // merge t into s
    int va = vertices[s], vb = vertices[t];
    for (int i = 0; i < m; ++i) {
      int vi = vertices[i];
      if (i != s && i != t) {
        w[va][vi] += w[vb][vi];
        w[vi][va] += w[vi][vb];
      }
    }
    vertices.erase(vertices.begin() + t);
    --m;
  }
  return best;
}

}  // namespace

bool is_stable(const TileSet& ts, const Assembly& a, int tau) {
  if (a.size() == 0) return false;
  if (a.size() == 1) return true;
  BondGraph g = build_bond_graph(ts, a);
  if (!bond_connected(g)) return false;
  if (tau <= 1) return true;
  if (tau == 2) return !has_weak_bridge(g, tau);
  return stoer_wagner_min_cut(g) >= tau;
}

const TileSystem& validate_system(const TileSystem& sys) {
  if (sys.dimension < 1 || sys.dimension > 3) {
    throw SystemError(ValidationError::BadDimension,
                      "dimension must be 1, 2 or 3");
  }
  if (sys.diffusion == Diffusion::Planar && sys.dimension > 2) {
    throw SystemError(ValidationError::BadDimension,
                      "planar diffusion requires dimension <= 2");
  }
  if (sys.diffusion == Diffusion::Spatial && sys.dimension != 3) {
    throw SystemError(ValidationError::BadDimension,
                      "spatial diffusion requires dimension = 3");
  }
  if (sys.temperature < 1) {
    throw SystemError(ValidationError::BadDimension, "temperature must be >= 1");
  }
  // Same label always carries the same strength.
  std::unordered_map<GlueId, int32_t> strength_of;
  for (const TileType& t : sys.tiles.tiles()) {
    for (Dir d : kAllDirs) {
      const Glue& g = t.glue(d);
      if (g.label == kNullGlue) continue;
      auto [it, fresh] = strength_of.emplace(g.label, g.strength);
      if (!fresh && it->second != g.strength) {
        throw SystemError(ValidationError::DuplicateLabelStrength,
                          "glue '" + sys.glues.name(g.label) +
                              "' used with strengths " +
                              std::to_string(it->second) + " and " +
                              std::to_string(g.strength));
      }
    }
  }
  if (sys.seed.size() == 0) {
    throw SystemError(ValidationError::SeedDisconnected, "seed is empty");
  }
  bool bad_tile = false;
  bool bad_coord = false;
  sys.seed.for_each([&](const Coord& c, TileId t) {
    if (t < 0 || static_cast<size_t>(t) >= sys.tiles.size()) bad_tile = true;
    if (sys.dimension < 3 && c.z != 0) bad_coord = true;
    if (sys.dimension < 2 && c.y != 0) bad_coord = true;
  });
  if (bad_tile) {
    throw SystemError(ValidationError::UnknownTileInSeed,
                      "seed references a tile id outside the tile set");
  }
  if (bad_coord) {
    throw SystemError(ValidationError::BadDimension,
                      "seed uses coordinates outside the system dimension");
  }
  if (!sys.seed.connected()) {
    throw SystemError(ValidationError::SeedDisconnected,
                      "seed domain is not connected");
  }
  if (!is_stable(sys.tiles, sys.seed, sys.temperature)) {
    throw SystemError(ValidationError::SeedUnstable,
                      "seed is not tau-stable");
  }
  return sys;
}

}  // namespace tas
