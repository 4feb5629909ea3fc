#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tas/core/system.hpp"
#include "tas/datapath/isa.hpp"

namespace tas {

// Lane symbols of a tape row. A datapath's program is spelled as one row of
// these; growth re-executes them via the advancing diagonal.
namespace sym {
enum : int {
  BL = 0,    // left boundary
  BR,        // right boundary
  BRc,       // right boundary with callback rail
  Buf,
  Bit0,
  Bit1,
  Fwd,
  Ob0,
  Ob1,
  Fend,
  TurnL,
  TurnR,
  Rise,
  Fall,
  Var,
  Vp,        // variable payload cell (rewritten on resume)
  Stop,
  StopL,     // executable stop that triggers the left-boundary callback
  BLc,       // left boundary with callback rail
  Home,      // wrap target: the program diagonal re-enters here
  Wm,        // wrap mark: the armer landing here re-arms at Home
  Pr0,       // primed payload bits (lift targets for queries/init)
  Pr1,
  PrA,       // primed arm marker (first lane of a liftable datapath)
  PrGap,     // dead zone between primed datapaths
  Init,      // genome: initialization row instruction
  Lg,        // lift-go marker: auto-starts the activation wave
  QueryBase = 40,    // QueryBase + dir (6): primes the row's payload
  FoldBase = 64,     // FoldBase + frame index: rise when fired
  FallTagBase = 96,  // fall when fired
  FwdTagBase = 128,  // FwdTagBase + tag id: forward when fired
  TurnTagBase = 176, // TurnTagBase + tag id (even=right, odd=left)
  GateBase = 208,    // GateBase + gate id: primed continuation row
  PlaceBase = 272,   // PlaceBase + pair id
};
}  // namespace sym

inline constexpr int kFrameCount = 24;
int frame_index(const Frame& f);
const Frame& frame_by_index(int i);

std::string sym_code(int s);
bool sym_arming(int s);
bool sym_executable(int s);

// Catalog of place-pair payloads. The pair tiles expose these glue labels
// (strength in parens) on their free faces; empty = null face.
struct PlacePairSpec {
  std::string name;
  // faces of P1 (the upper pair tile, directly below the datapath plane)
  // and P2 (one row ahead of P1), in frame-local terms. Each entry is
  // (face, label, strength) with face in {"fwd","back","left","right",
  // "down"} resolved against the tape frame at emission.
  std::vector<std::tuple<std::string, std::string, int>> p1_faces;
  std::vector<std::tuple<std::string, std::string, int>> p2_faces;
};

// Emits the fixed tile families implementing tape growth for one channel.
// Tile types are memoized by name; glue labels carry namespace, channel,
// role and frame so distinct channels can never interact.
class TapeEmitter {
 public:
  struct ChannelConfig {
    // face carrying the callback activation glue, relative to the frame
    // ("back" = toward the root row, "right" = beside it)
    std::string cbact_face = "back";
    // variable resumes re-emit their payload downward as a fresh rail
    bool relay_drop = false;
    // tagged symbols (folds, gates, queries, init, tagged forwards) this
    // channel executes; all other tagged symbols pass as buffers. Untagged
    // ISA symbols always execute.
    std::set<int> executes;

    bool fires(int s) const {
      if (s >= sym::QueryBase && s < sym::PlaceBase) {
        return executes.count(s) > 0;
      }
      return true;
    }
  };

  TapeEmitter(TileSystem& sys, std::string ns, std::string channel)
      : sys_(&sys), ns_(std::move(ns)), ch_(std::move(channel)) {}

  ChannelConfig config;

  TileSystem& system() { return *sys_; }
  const std::string& channel() const { return ch_; }

  // -- glue labels ----------------------------------------------------------
  GlueId glue(const std::string& role, const Frame& f,
              const std::string& extra = "");
  std::string glue_name(const std::string& role, const Frame& f,
                        const std::string& extra = "") const;

  // -- seed row -------------------------------------------------------------
  // Pre-placed program row. Tiles chain laterally with strength-2 glues so
  // the row is a stable unit; the arm cell launches growth.
  // Lays the row with lane 0 at `base`, lanes along f.u, and returns the
  // placements appended to `out`.
  void lay_seed_row(const std::vector<int>& lane_syms, const Frame& f,
                    const Coord& base, int arm_lane,
                    std::vector<std::pair<Coord, TileId>>& out);

  // Individual row-cell families (memoized). `s` etc. are lane symbols.
  TileId seed_cell(const Frame& f, int s, int left_sym, int right_sym,
                   bool arm);

  void register_place_pair(int id, PlacePairSpec spec);
  const PlacePairSpec& place_pair(int id) const;

  // Emits every tile reachable from programs over the given frames. Used by
  // the universal tile set enumeration (and by gadget emitters to force a
  // deterministic, closed family).
  void emit_closure(const std::vector<Frame>& frames,
                    const std::vector<int>& syms,
                    const std::vector<int>& place_ids);

  // -- growth tiles; each memoized by structured name ------------------------
  TileId exec(const Frame& f, int s);
  TileId arm_cell(const Frame& f, int s);        // via W1; arms or halts
  TileId wave_r(const Frame& f, int s);
  TileId wave_l(const Frame& f, int s);
  // fwd decrementer
  TileId fwd_leader(const Frame& f, bool from_bounce);
  TileId dec_cell(const Frame& f, int bit, bool borrow_in);
  TileId dec_end(const Frame& f, bool borrow_out);  // FwdTurn / FwdExit
  TileId ret_leader(const Frame& f);
  TileId ret_copy(const Frame& f, int bit);
  TileId ret_bounce(const Frame& f);
  // rise / fall
  TileId lift_arm(const Frame& f, int s, bool rise);
  TileId lift_copy(const Frame& f, int s, bool rise, bool left);
  // var / resume
  TileId var_seek(const Frame& f);                // VarVp (seeking arm)
  TileId var_arm_mark(const Frame& f, int s);
  TileId var_copy(const Frame& f, int s, bool left);
  TileId var_post(const Frame& f);
  TileId rz_bl(const Frame& f);
  TileId rz_cell(const Frame& f, int s, bool arm);  // resume from vs glues
  TileId rz_payload(const Frame& f, int bit, bool arm);
  // place
  TileId place_m1(const Frame& f, int pair_id);
  TileId place_m2(const Frame& f, int pair_id);
  TileId place_p1(const Frame& f, int pair_id);
  TileId place_p2(const Frame& f, int pair_id);
  // turn square (right and left mirrored by `right`)
  TileId turn_copy(const Frame& f, int s, bool right, bool inner,
                   bool marked);  // inner = between leader and mirror side
  TileId turn_edge_seed(const Frame& f, bool right, int s,
                        bool first_step);  // boundary mirror-maker
  TileId pass_copy(const Frame& f, int s, bool right, bool marked);
  TileId pre_mirror(const Frame& f, int s, bool right, bool marked);
  TileId mirror(const Frame& f, int s, bool right, bool marked);
  TileId mirror_corner(const Frame& f, bool right, int s);
  TileId eflow(const Frame& f, int s, bool right, bool first, bool marked);
  TileId eend(const Frame& f, int s, bool right, bool first, bool marked);
  TileId stop_wave(const Frame& f, int s);
  TileId turn_exit_boundary(const Frame& f);
  // callback chain
  TileId cb_start(const Frame& f);
  TileId cb_step(const Frame& f);
  TileId cb_end(const Frame& f);
  TileId cb_bridge_lift(const Frame& f, bool rise);
  TileId cb_bridge_turn(const Frame& f, bool right);
  TileId stop_wave_l(const Frame& f, int s);
  TileId cb_start_l(const Frame& f);
  TileId cb_step_l(const Frame& f);
  TileId cb_end_l(const Frame& f);
  // genome band machinery
  TileId wrap_leader(const Frame& f);
  TileId wrap_copy(const Frame& f, int s);   // includes the Home arm cell
  TileId query_copy(const Frame& f, int s, int dir, bool left);
  TileId init_copy(const Frame& f, int s, bool left);
  TileId gate_copy(const Frame& f, int s, int gate, bool left);
  TileId lift_start(const Frame& f, bool init_kind, int gate = -1);
  TileId lift_seed(const Frame& f, int s, bool init_kind, int gate = -1);
  TileId lift_seed_state(const Frame& f, int s, bool init_kind, int gate,
                         int state_in);
  TileId gate_seed(const Frame& f, int s, int gate);  // activated fall rows
  TileId row_arm(const Frame& f, int s, const std::string& w_in,
                 const std::string& w_out, const std::string& extra_in = "",
                 const std::string& extra_out = "");
  TileId drop_pump(const Frame& f);
  TileId drop_payload(const Frame& f, int bit);

 private:
  TileId get(const std::string& name,
             const std::function<void(TileType&)>& build);
  void set_face(TileType& t, Dir d, GlueId g, int strength);

  TileSystem* sys_;
  std::string ns_, ch_;
  std::unordered_map<std::string, TileId> memo_;
  std::map<int, PlacePairSpec> pairs_;
};

// Lane layout of a program (symbols per lane).
ProgramShape program_shape(const DatapathProgram& p);

}  // namespace tas
