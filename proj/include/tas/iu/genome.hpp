#pragma once

#include <map>
#include <optional>

#include "tas/datapath/assemble.hpp"
#include "tas/iu/layout.hpp"

namespace tas {

// Identifiers for the movement instructions of the three bands and their
// cross-feeds. Forward tags / fold tags are per-leg so each band's channel
// executes only its own movement.
struct GenomePlan {
  std::vector<int> content;  // symbol per lane (index 0 = BL)
  int spine_lanes = 0;       // lanes before the payload sections
  int g2_start = 0;          // first lane of the glue table
  int g3_start = 0;          // first lane of the init section
  int wm_lane = 0;

  // per-channel tagged-symbol sets
  std::set<int> b1_executes, b2_executes, b3_executes;
  // gate id -> lane whose symbol the activated continuation arms
  std::map<int, int> gate_arm_lane;
  // gate id -> kind
  enum class GateKind { StraightOut, LiftFeed, TurnFeed };
  std::map<int, GateKind> gate_kind;
  std::map<int, Frame> gate_frame;   // frame the gate fires in
  std::map<int, int> out_gate_of_dir;  // Dir index -> gate id

  // leg bookkeeping (solver results)
  struct Leg {
    std::string name;
    Frame frame;
    int fwd_lane = -1;   // lane of the leg's forward tag
    int operand = 1;     // solved count
    bool has_parity_buf = false;
  };
  std::vector<Leg> legs;

  // canonical entry rows: per direction d (the continuation arriving from
  // neighbor opposite(d)... keyed by which ring leg it starts)
  struct Entry {
    Coord lane0;   // macrotile-local position of lane 0 of the entry row
    Frame frame;
    int arm_lane;  // lane whose symbol the first grown row executes
    int ring;      // 1 or 2
  };
  std::map<int, Entry> entries;  // Dir index -> entry

  int query_lane[6] = {-1, -1, -1, -1, -1, -1};
  int init_lane = -1;
};

// Payload passed through the band (glue table and init section symbols).
struct GenomePayload {
  std::vector<int> g2;
  std::vector<int> g3;
};

// Band channel emitters over one workspace.
struct BandEmitters {
  TapeEmitter b1, b2, b3;
  BandEmitters(TileSystem& sys, const std::string& ns)
      : b1(sys, ns, "b1"), b2(sys, ns, "b2"), b3(sys, ns, "b3") {}
};

// Builds the movement program for the given layout: ring circuits, output
// gates at the ring corners, the three cross-feeds, and the critical
// orientation's query and initialization rows.
GenomePlan plan_genome(const ScaleLayout& layout,
                       const GenomePayload& payload);

// Number of spine lanes the plan will use (for calc_scale's fixed point).
int genome_spine_lanes(int operand_bits);

// Emits every band tile needed to grow the plan and returns the seed row
// for the given entry direction.
void configure_band_channels(const GenomePlan& plan, BandEmitters& em);
std::vector<std::pair<Coord, TileId>> lay_band_entry(
    const GenomePlan& plan, const ScaleLayout& layout, BandEmitters& em,
    int dir, const Coord& macrotile_origin);

// Abstract growth of the band system: predicts fold positions (used by the
// solver) and total row counts.
struct BandSimRow {
  Coord lane0;
  Frame frame;
  int ring;  // which channel
};
struct BandSim {
  std::vector<BandSimRow> fold_rows;
  int64_t rows = 0;
  bool closed = false;  // returned to the entry position
};
BandSim simulate_band(const GenomePlan& plan, const ScaleLayout& layout,
                      int dir);

}  // namespace tas
