#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tas/core/dynamics.hpp"
#include "tas/simrel/codec.hpp"

namespace tas {

// One-step transition graph over canonical producible assemblies.
struct ProductionGraph {
  std::vector<Assembly> nodes;  // node 0 = seed
  std::vector<std::vector<int>> succ;
  bool exhausted = false;
};

ProductionGraph explore_graph(const TileSystem& sys, int depth,
                              size_t max_assemblies = 200'000);

struct RelationWitness {
  std::string what;
  Assembly from;
  Assembly to;
};

struct RelationResult {
  bool ok = true;
  bool at_depth_only = false;  // bounded answer, not a proof
  std::optional<RelationWitness> witness;
};

// T follows S: every explored one-step pair a'->b' in the simulator maps to
// R*(a') ->T R*(b').
RelationResult verify_follows(const TileSystem& simulator,
                              const TileSystem& simulated,
                              const MacrotileCodec& codec, int depth,
                              size_t budget = 200'000);

// S models T: witness-set check over the explored graphs. Exact when both
// explorations exhaust their reachable sets, otherwise reported at-depth.
RelationResult verify_models(const TileSystem& simulator,
                             const TileSystem& simulated,
                             const MacrotileCodec& codec, int sim_depth,
                             int simd_depth, size_t budget = 200'000);

struct SimulationReport {
  bool clean_ok = true;
  bool follows_ok = true;
  bool models_ok = true;
  bool productions_ok = true;
  bool at_depth_only = false;
  std::vector<std::string> notes;
  std::optional<RelationWitness> witness;
  std::vector<std::pair<Coord, FuzzKind>> fuzz;

  bool ok() const {
    return clean_ok && follows_ok && models_ok && productions_ok;
  }
};

// Full Def-2.4-style bounded report: clean mapping over all explored
// simulator assemblies, follows, models, and bounded production equivalence.
SimulationReport verify_simulation(const TileSystem& simulator,
                                   const TileSystem& simulated,
                                   const MacrotileCodec& codec, int sim_depth,
                                   int simd_depth, size_t budget = 200'000);

}  // namespace tas
