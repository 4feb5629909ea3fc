#pragma once

#include "tas/datapath/assemble.hpp"

namespace tas {

// One-way latch: growth through the latch is possible only from the allowed
// side; the completed latch looks the same regardless of arrival order.
struct LatchGadget {
  // pre-latch cell is only ever placed via the allowed side
  Coord pre_latch_cell;
  Coord latch_cell;
  std::vector<std::pair<Coord, TileId>> allowed_feed;    // seeds allowed entry
  std::vector<std::pair<Coord, TileId>> prevented_feed;  // seeds prevented entry
  std::vector<Coord> full_cells;  // all cells of the completed latch
};

LatchGadget emit_latch(TapeEmitter& em, const std::string& instance,
                       Dir direction, const Coord& origin = {0, 0, 0});

// Two-plane one-way segment pair: entering from either end produces the same
// terminal placements; non-preferred entry routes through the raised plane.
struct CircularLatchGadget {
  std::vector<std::pair<Coord, TileId>> preferred_feed;
  std::vector<std::pair<Coord, TileId>> non_preferred_feed;
  std::vector<Coord> segment_cells;  // both planes
};

CircularLatchGadget emit_circular_latch(TapeEmitter& em,
                                        const std::string& instance,
                                        int length,
                                        const Coord& origin = {0, 0, 0});

// Self-resetting decrementer stack. Logical counter rows span two lattice
// rows (a decrement pass and a return pass); the return pass exposes the
// zero/continue signal upward and reloads the period on zero. An outer
// non-periodic decrementer layer halts everything at `total` rows.
struct PeriodicCounterGadget {
  std::vector<std::pair<Coord, TileId>> seed;
  int layers = 0;
  int width = 0;          // lanes per layer
  int row_pitch = 2;      // lattice rows per counter row
  Coord base;             // lane-0, row-0, layer-0 cell
  // probe(row) gives the cell whose top face carries the exposed signal of
  // the topmost layer at that counter row
  Coord signal_cell(int row) const;
  GlueId zero_glue(int layer) const { return zero_glues[layer]; }
  std::vector<GlueId> zero_glues;
  GlueId continue_glue = kNullGlue;
};

// periods: bottom layer counts `total` once (the bound); each further layer
// is periodic with the given period.
PeriodicCounterGadget emit_periodic_counter(TapeEmitter& em,
                                            const std::string& instance,
                                            const std::vector<int>& periods,
                                            int total,
                                            const Coord& origin = {0, 0, 0});

// Guide rail: pump lane plus payload lanes that fill by cooperation. The
// payload is readable on the top face of every payload cell.
struct GuideRailGadget {
  std::vector<std::pair<Coord, TileId>> seed;
  std::vector<int> payload;
  int limit = -1;  // -1 = unlimited (needs a stopper)
  Coord pump_base;
  Frame frame;
};

GuideRailGadget emit_guide_rail(TapeEmitter& em, const std::string& instance,
                                const std::vector<int>& payload, int limit,
                                const Coord& origin = {0, 0, 0},
                                const Frame& frame = Frame{Dir::E, Dir::N});

// Stopper for unlimited rails: a single inert tile pre-placed in the pump
// lane's path.
TileId rail_stopper(TapeEmitter& em, const std::string& instance);

class BoundaryNotCallbackCapable : public std::runtime_error {
 public:
  BoundaryNotCallbackCapable()
      : std::runtime_error("BoundaryNotCallbackCapable") {}
};

// Rebuilds a program with the requested callback boundary. The activation
// glue (role "cbact"/"cbactL") appears at the path root when the callback
// completes.
GadgetTiles wire_callback(TapeEmitter& em, DatapathProgram program,
                          BoundaryKind kind, const Coord& origin = {0, 0, 0},
                          const Frame& frame = Frame{Dir::E, Dir::N});

// Receiver probe for activation glues: a tile that attaches once the
// callback fires (for tests and for chaining initializations).
TileId callback_receiver(TapeEmitter& em, const Frame& frame, bool left);

}  // namespace tas
