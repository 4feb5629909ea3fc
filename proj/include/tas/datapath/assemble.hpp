#pragma once

#include <stdexcept>

#include "tas/core/dynamics.hpp"
#include "tas/datapath/tape.hpp"

namespace tas {

inline constexpr int kMaxProgramWidth = 8192;

class ProgramTooWide : public std::runtime_error {
 public:
  explicit ProgramTooWide(int width)
      : std::runtime_error("ProgramTooWide: " + std::to_string(width)) {}
};

class InvalidOperand : public std::runtime_error {
 public:
  explicit InvalidOperand(const std::string& what)
      : std::runtime_error("InvalidOperand: " + what) {}
};

struct GadgetTiles {
  std::vector<std::pair<Coord, TileId>> seed;
  Pose predicted;
  int64_t expected_tiles = 0;
  std::vector<Coord> pair_cells;
  ProgramShape shape;
  Frame frame;
  Coord origin;
};

// Lays a program's seed row into the emitter's tile system and predicts the
// grown result.
GadgetTiles assemble_datapath(TapeEmitter& em, const DatapathProgram& program,
                              const Coord& origin = {0, 0, 0},
                              const Frame& frame = Frame{Dir::E, Dir::N});

class DidNotTerminate : public std::runtime_error {
 public:
  explicit DidNotTerminate(int64_t steps)
      : std::runtime_error("DidNotTerminate after " + std::to_string(steps) +
                           " steps") {}
};

struct GrowResult {
  Assembly assembly{3};
  int64_t steps = 0;
  bool terminal = false;
};

// Runs core-model dynamics at tau=2 on the workspace system with the given
// seed placements. Throws DidNotTerminate when max_steps is hit with a
// non-empty frontier (unless allow_partial).
GrowResult grow_isolated(TileSystem& workspace,
                         const std::vector<std::pair<Coord, TileId>>& seed,
                         int64_t max_steps = 1'000'000, uint64_t rng_seed = 1,
                         bool allow_partial = false);

}  // namespace tas
