#include "tas/core/dynamics.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "tas/diffusion/diffusion.hpp"

namespace tas {

std::vector<std::pair<Coord, TileId>> frontier(const TileSystem& sys,
                                               const Assembly& a) {
  std::vector<std::pair<Coord, TileId>> out;
  CellMap seen_cells;
  const int tau = sys.temperature;
  a.for_each([&](const Coord& c, TileId) {
    for (Dir d : kAllDirs) {
      Coord nb = neighbor(c, d);
      if (a.occupied(nb)) continue;
      if (!seen_cells.insert(pack_coord(nb), 0)) continue;
      // candidate tiles via any incident glue
      std::vector<TileId> cands;
      for (Dir dd : kAllDirs) {
        TileId src = a.at(neighbor(nb, dd));
        if (src == kNoTile) continue;
        const Glue& g = sys.tiles.tile(src).glue(opposite(dd));
        if (g.label == kNullGlue || g.strength <= 0) continue;
        for (TileId t : sys.tiles.candidates(opposite(dd), g.label)) {
          cands.push_back(t);
        }
      }
      std::sort(cands.begin(), cands.end());
      cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
      for (TileId t : cands) {
        if (a.bound_strength(sys.tiles, nb, t) >= tau) {
          out.emplace_back(nb, t);
        }
      }
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

// ---- FrontierSet ----------------------------------------------------------

size_t FrontierSet::probe(uint64_t cell, TileId tile) const {
  return splitmix64(cell ^ (static_cast<uint64_t>(tile) * 0x100000001b3ULL)) &
         mask_;
}

void FrontierSet::rehash(size_t cap) {
  std::vector<Slot> old = std::move(slots_);
  slots_.assign(cap, Slot{});
  mask_ = cap - 1;
  slot_count_ = 0;
  for (const Slot& s : old) {
    if (s.cell != kEmptyCell && s.cell != kTombCell) {
      size_t i = probe(s.cell, s.tile);
      while (slots_[i].cell != kEmptyCell) i = (i + 1) & mask_;
      slots_[i] = s;
      ++slot_count_;
    }
  }
}

void FrontierSet::maybe_grow() {
  if (slots_.empty()) {
    slots_.assign(256, Slot{});
    mask_ = 255;
    slot_count_ = 0;
    return;
  }
  if ((slot_count_ + 1) * 5 >= slots_.size() * 4) {
    size_t cap = slots_.size();
    // grow only when live entries dominate; otherwise just purge tombstones
    if (live_ * 3 >= slots_.size()) cap *= 2;
    rehash(cap);
  }
}

bool FrontierSet::contains(uint64_t cell, TileId tile) const {
  if (slots_.empty()) return false;
  size_t i = probe(cell, tile);
  while (true) {
    const Slot& s = slots_[i];
    if (s.cell == kEmptyCell) return false;
    if (s.cell == cell && s.tile == tile) return true;
    i = (i + 1) & mask_;
  }
}

bool FrontierSet::insert(uint64_t cell, TileId tile) {
  maybe_grow();
  size_t i = probe(cell, tile);
  size_t slot = SIZE_MAX;
  while (true) {
    Slot& s = slots_[i];
    if (s.cell == cell && s.tile == tile) return false;
    if (s.cell == kTombCell && slot == SIZE_MAX) slot = i;
    if (s.cell == kEmptyCell) {
      if (slot == SIZE_MAX) {
        slot = i;
        ++slot_count_;
      }
      break;
    }
    i = (i + 1) & mask_;
  }
  slots_[slot] = Slot{cell, tile, static_cast<uint32_t>(entries_.size())};
  entries_.push_back(Entry{cell, tile});
  ++live_;
  if (insert_log) insert_log->push_back(Entry{cell, tile});
  return true;
}

void FrontierSet::erase_pair(uint64_t cell, TileId tile) {
  if (slots_.empty()) return;
  size_t i = probe(cell, tile);
  while (true) {
    Slot& s = slots_[i];
    if (s.cell == kEmptyCell) return;
    if (s.cell == cell && s.tile == tile) {
      uint32_t pos = s.pos;
      s.cell = kTombCell;
      --live_;
      // swap-pop entries_
      if (pos != entries_.size() - 1) {
        Entry moved = entries_.back();
        entries_[pos] = moved;
        size_t j = probe(moved.cell, moved.tile);
        while (true) {
          Slot& ms = slots_[j];
          if (ms.cell == moved.cell && ms.tile == moved.tile) {
            ms.pos = pos;
            break;
          }
          j = (j + 1) & mask_;
        }
      }
      entries_.pop_back();
      return;
    }
    i = (i + 1) & mask_;
  }
}

void FrontierSet::erase_at(size_t i) {
  erase_pair(entries_[i].cell, entries_[i].tile);
}

void FrontierSet::init(const TileSystem& sys, const Assembly& a) {
  entries_.clear();
  slots_.clear();
  live_ = 0;
  for (auto& [c, t] : frontier(sys, a)) insert(pack_coord(c), t);
}

void FrontierSet::on_attach(const TileSystem& sys, const Assembly& a,
                            const Coord& c, TileId placed) {
  on_attach_key(sys, a, pack_coord(c), placed);
}

void FrontierSet::on_attach_key(const TileSystem& sys, const Assembly& a,
                                uint64_t ck, TileId placed) {
  // Remove every entry at the filled cell: candidates can only have come in
  // via a neighbor glue, so recomputing the candidate set finds them all.
  for (Dir dd : kAllDirs) {
    TileId src = a.at_key(packed_neighbor(ck, dd));
    if (src == kNoTile) continue;
    const Glue& g = sys.tiles.tile(src).glue(opposite(dd));
    if (g.label == kNullGlue || g.strength <= 0) continue;
    for (TileId t : sys.tiles.candidates(opposite(dd), g.label)) {
      erase_pair(ck, t);
    }
  }
  // New legality can only arrive through the new tile's glues.
  const TileType& tt = sys.tiles.tile(placed);
  const int tau = sys.temperature;
  for (Dir d : kAllDirs) {
    const Glue& g = tt.glue(d);
    if (g.label == kNullGlue || g.strength <= 0) continue;
    uint64_t nk = packed_neighbor(ck, d);
    if (a.at_key(nk) != kNoTile) continue;
    for (TileId t : sys.tiles.candidates(d, g.label)) {
      if (contains(nk, t)) continue;
      if (a.bound_strength_key(sys.tiles, nk, t) >= tau) insert(nk, t);
    }
  }
}

// ---- Simulation -----------------------------------------------------------

Simulation::Simulation(const TileSystem& sys, const RunOptions& opt)
    : sys_(sys), opt_(opt), assembly_(sys.seed), rng_(opt.seed * 2 + 1) {
  sys_.tiles.build_index();
  if (opt_.scheduler == SchedulerKind::Fifo) {
    frontier_.insert_log = &fifo_queue_;
  }
  frontier_.init(sys_, assembly_);
  if (sys_.diffusion != Diffusion::None) {
    diffusion_ = std::make_unique<DiffusionIndex>(sys_.dimension);
  }
}

Simulation::~Simulation() = default;

bool Simulation::diffusion_ok(const Coord& c) {
  if (!diffusion_) return true;
  return diffusion_->open(assembly_, c);
}

std::optional<AttachmentEvent> Simulation::step() {
  if (opt_.scheduler == SchedulerKind::Fifo) return step_fifo();
  while (!frontier_.empty()) {
    rng_ = splitmix64(rng_);
    size_t pick = static_cast<size_t>(rng_ % frontier_.size());
    FrontierSet::Entry e = frontier_.entry(pick);
    if (diffusion_) {
      Coord c = unpack_coord(e.cell);
      if (!diffusion_ok(c)) {
        frontier_.erase_at(pick);  // blocked cells never unblock
        continue;
      }
    }
    return commit_key(e.cell, e.tile);
  }
  return std::nullopt;
}

std::optional<AttachmentEvent> Simulation::step_fifo() {
  while (fifo_head_ < fifo_queue_.size()) {
    FrontierSet::Entry e = fifo_queue_[fifo_head_];
    if (!frontier_.contains(e.cell, e.tile)) {  // stale (cell filled)
      ++fifo_head_;
      continue;
    }
    Coord c = unpack_coord(e.cell);
    if (!diffusion_ok(c)) {
      frontier_.erase_pair(e.cell, e.tile);
      ++fifo_head_;
      continue;
    }
    ++fifo_head_;
    return commit_key(e.cell, e.tile);
  }
  return std::nullopt;
}

AttachmentEvent Simulation::commit_key(uint64_t key, TileId tile) {
  int strength = assembly_.bound_strength_key(sys_.tiles, key, tile);
  Coord c = unpack_coord(key);
  assembly_.place(c, tile);
  frontier_.on_attach_key(sys_, assembly_, key, tile);
  if (diffusion_) diffusion_->on_attach(c);
  AttachmentEvent ev{c, tile, steps_, strength};
  ++steps_;
  return ev;
}

bool Simulation::try_scripted(const Coord& c, TileId t) {
  if (assembly_.occupied(c)) return false;
  if (t < 0 || static_cast<size_t>(t) >= sys_.tiles.size()) return false;
  if (assembly_.bound_strength(sys_.tiles, c, t) < sys_.temperature) {
    return false;
  }
  if (!diffusion_ok(c)) return false;
  assembly_.place(c, t);
  frontier_.on_attach(sys_, assembly_, c, t);
  ++steps_;
  return true;
}

RunResult Simulation::run() {
  RunResult res;
  while (opt_.max_steps < 0 || steps_ < opt_.max_steps) {
    auto ev = step();
    if (!ev) {
      res.terminal = true;
      break;
    }
    if (opt_.record_events) res.events.push_back(*ev);
    if (opt_.on_event) opt_.on_event(*ev);
    if (opt_.stop_when && opt_.stop_when(assembly_, *ev)) break;
  }
  res.steps = steps_;
  if (!res.terminal && frontier_.empty()) res.terminal = true;
  return res;
}

RunResult run(const TileSystem& sys, const RunOptions& opt) {
  Simulation sim(sys, opt);
  return sim.run();
}

// ---- Bounded exploration --------------------------------------------------

namespace {

struct CanonState {
  std::vector<std::pair<Coord, TileId>> placements;  // sorted

  bool operator==(const CanonState& o) const {
    return placements == o.placements;
  }
};

struct CanonHash {
  size_t operator()(const CanonState& s) const {
    uint64_t h = 0x12345;
    for (auto& [c, t] : s.placements) {
      h = splitmix64(h ^ pack_coord(c) ^ (static_cast<uint64_t>(t) << 40));
    }
    return static_cast<size_t>(h);
  }
};

Assembly to_assembly(const CanonState& s, int dimension) {
  Assembly a(dimension);
  for (auto& [c, t] : s.placements) a.place(c, t);
  return a;
}

}  // namespace

ExploreResult explore_bounded(const TileSystem& sys, int depth,
                              size_t max_assemblies) {
  sys.tiles.build_index();
  ExploreResult res;
  std::unordered_set<CanonState, CanonHash> seen;
  CanonState seed{sys.seed.sorted_placements()};
  seen.insert(seed);
  std::vector<CanonState> layer{seed};
  res.assemblies.push_back(sys.seed);
  res.exhausted = true;
  for (int d = 0; d < depth && !layer.empty(); ++d) {
    std::vector<CanonState> next;
    for (const CanonState& st : layer) {
      Assembly a = to_assembly(st, sys.dimension);
      auto fr = sys.diffusion == Diffusion::None
                    ? frontier(sys, a)
                    : restricted_frontier(sys, a);
      for (auto& [c, t] : fr) {
        CanonState succ = st;
        succ.placements.emplace_back(c, t);
        std::sort(succ.placements.begin(), succ.placements.end());
        if (seen.insert(succ).second) {
          if (seen.size() > max_assemblies) {
            throw BudgetExceeded(seen.size() - 1);
          }
          res.assemblies.push_back(to_assembly(succ, sys.dimension));
          next.push_back(std::move(succ));
        }
      }
    }
    layer = std::move(next);
  }
  if (!layer.empty()) {
    // depth reached with unexpanded layer: only exhausted if that layer has
    // no successors at all
    for (const CanonState& st : layer) {
      Assembly a = to_assembly(st, sys.dimension);
      auto fr = sys.diffusion == Diffusion::None
                    ? frontier(sys, a)
                    : restricted_frontier(sys, a);
      if (!fr.empty()) {
        res.exhausted = false;
        break;
      }
    }
  }
  return res;
}

DirectednessReport is_directed_bounded(const TileSystem& sys, int depth,
                                       size_t max_assemblies) {
  ExploreResult ex = explore_bounded(sys, depth, max_assemblies);
  DirectednessReport rep;
  CellMap first_tile;   // cell -> tile id of first sighting
  CellMap first_owner;  // cell -> index of assembly of first sighting
  for (size_t i = 0; i < ex.assemblies.size(); ++i) {
    const Assembly& a = ex.assemblies[i];
    bool conflict = false;
    Coord where{};
    TileId mine = kNoTile;
    a.for_each([&](const Coord& c, TileId t) {
      if (conflict) return;
      uint64_t k = pack_coord(c);
      TileId prev = first_tile.find(k);
      if (prev == kNoTile) {
        first_tile.insert(k, t);
        first_owner.insert(k, static_cast<TileId>(i));
      } else if (prev != t) {
        conflict = true;
        where = c;
        mine = t;
      }
    });
    if (conflict) {
      DirectednessWitness w;
      w.location = where;
      w.tile_b = mine;
      w.tile_a = first_tile.find(pack_coord(where));
      w.b = a;
      w.a = ex.assemblies[first_owner.find(pack_coord(where))];
      rep.directed_so_far = false;
      rep.witness = std::move(w);
      return rep;
    }
  }
  return rep;
}

}  // namespace tas
