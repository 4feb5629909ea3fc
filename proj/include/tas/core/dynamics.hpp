#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "tas/core/assembly.hpp"
#include "tas/core/system.hpp"

namespace tas {

struct AttachmentEvent {
  Coord location;
  TileId tile = kNoTile;
  int64_t step = 0;
  int32_t bound_strength = 0;
};

// Frontier of a τ-stable assembly: every (empty location, tile) pair whose
// matched incident glue strengths sum to at least τ. Diffusion is NOT
// applied here; see diffusion.hpp.
std::vector<std::pair<Coord, TileId>> frontier(const TileSystem& sys,
                                               const Assembly& a);

// Incrementally maintained frontier. Legality is monotone under attachment
// (matched strengths only grow), so entries are only added by new neighbors
// and removed when their cell fills.
class FrontierSet {
 public:
  struct Entry {
    uint64_t cell;
    TileId tile;
  };

  void init(const TileSystem& sys, const Assembly& a);
  // When set, every successful insert is also appended here (FIFO feed).
  std::vector<Entry>* insert_log = nullptr;
  // Call after `a` has tile t placed at c (the map already updated).
  void on_attach(const TileSystem& sys, const Assembly& a, const Coord& c,
                 TileId t);
  void on_attach_key(const TileSystem& sys, const Assembly& a, uint64_t key,
                     TileId t);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& entry(size_t i) const { return entries_[i]; }
  void erase_at(size_t i);

 private:
  friend class Simulation;
  bool insert(uint64_t cell, TileId tile);
  bool contains(uint64_t cell, TileId tile) const;
  void erase_pair(uint64_t cell, TileId tile);

  // open addressing over (cell,tile) -> position in entries_
  struct Slot {
    uint64_t cell = kEmptyCell;
    TileId tile = 0;
    uint32_t pos = 0;
  };
  static constexpr uint64_t kEmptyCell = ~uint64_t{0};
  static constexpr uint64_t kTombCell = ~uint64_t{0} - 1;

  size_t probe(uint64_t cell, TileId tile) const;
  void rehash(size_t cap);
  void maybe_grow();

  std::vector<Entry> entries_;
  std::vector<Slot> slots_;
  size_t slot_count_ = 0;  // live + tombstones
  size_t live_ = 0;
  size_t mask_ = 0;
};

enum class SchedulerKind { Random, Fifo };

class DiffusionIndex;  // diffusion.hpp

struct RunOptions {
  SchedulerKind scheduler = SchedulerKind::Random;
  uint64_t seed = 1;
  int64_t max_steps = -1;  // -1: until terminal
  bool record_events = true;
  std::function<void(const AttachmentEvent&)> on_event;  // streaming sink
  std::function<bool(const Assembly&, const AttachmentEvent&)> stop_when;
};

struct RunResult {
  std::vector<AttachmentEvent> events;
  int64_t steps = 0;
  bool terminal = false;  // frontier (after diffusion filter) empty
};

// Owns one growth trajectory: assembly copy of the seed plus incremental
// frontier (and diffusion index when the system restricts diffusion).
class Simulation {
 public:
  explicit Simulation(const TileSystem& sys, const RunOptions& opt = {});
  ~Simulation();

  // Performs one attachment; nullopt at terminal.
  std::optional<AttachmentEvent> step();
  RunResult run();

  const Assembly& assembly() const { return assembly_; }
  Assembly& assembly() { return assembly_; }
  const TileSystem& system() const { return sys_; }
  int64_t steps_done() const { return steps_; }

  // Places a tile with full legality checks (used by scripted replays).
  bool try_scripted(const Coord& c, TileId t);

 private:
  bool diffusion_ok(const Coord& c);
  std::optional<AttachmentEvent> step_fifo();
  AttachmentEvent commit_key(uint64_t key, TileId tile);

  const TileSystem& sys_;
  RunOptions opt_;
  Assembly assembly_;
  FrontierSet frontier_;
  std::unique_ptr<DiffusionIndex> diffusion_;
  uint64_t rng_;
  int64_t steps_ = 0;
  std::vector<FrontierSet::Entry> fifo_queue_;
  size_t fifo_head_ = 0;
};

// One run with the given options (convenience wrapper).
RunResult run(const TileSystem& sys, const RunOptions& opt = {});

struct ExploreResult {
  std::vector<Assembly> assemblies;  // deduplicated, includes seed
  bool exhausted = false;            // reachable set fully enumerated
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(size_t partial)
      : std::runtime_error("BudgetExceeded: explored " +
                           std::to_string(partial) + " assemblies"),
        partial_count(partial) {}
  size_t partial_count;
};

// All producible assemblies within `depth` attachments of the seed,
// deduplicated by exact placement equality.
ExploreResult explore_bounded(const TileSystem& sys, int depth,
                              size_t max_assemblies = 200'000);

struct DirectednessWitness {
  Coord location;
  TileId tile_a = kNoTile;
  TileId tile_b = kNoTile;
  Assembly a;
  Assembly b;
};

struct DirectednessReport {
  bool directed_so_far = true;
  std::optional<DirectednessWitness> witness;
};

DirectednessReport is_directed_bounded(const TileSystem& sys, int depth,
                                       size_t max_assemblies = 2'000'000);

}  // namespace tas
