#pragma once

#include <cstdint>
#include <vector>

#include "tas/core/geometry.hpp"
#include "tas/datapath/isa.hpp"

namespace tas {

// All widths, section sizes and anchor offsets of the universal-simulation
// macrotile, derived from the simulated system's |T| and temperature.
struct ScaleLayout {
  int tile_count = 1;
  int temperature = 2;
  int m = 0;  // scale factor

  // bit widths
  int id_bits = 1;        // max(1, clog2(|T|))
  int strength_bits = 2;  // floor(log2 tau) + 1

  // datapath widths
  int nav = 0;         // 11 + 3*clog2(m)
  int dp_glue = 0;
  int dp_adder = 0;
  int dp_bracket = 0;
  int dp_ext = 0;
  int dp_blocker = 0;

  // genome section widths
  int g_move = 0;
  int g_glue = 0;
  int g_init = 0;
  int band_width = 0;  // g_move + g_glue + g_init (+ boundaries)

  // band geometry
  int inset_ring1 = 6;
  int inset_ring2 = 12;
  int inset_ring3 = 18;
  int lane0 = 0;  // first lane offset along each lane axis (= dp_ext)

  // counts
  int bracket_levels = 0;
  int adder_layers = 19;
  int glue_entries = 0;  // actual entries emitted (<= 6 |T|^2)

  // interior anchors (macrotile-local). The critical orientation is the
  // innermost band's traversal of the top face.
  int critical_z = 0;        // z of the critical band plane
  Coord adder_anchor{};      // unit 0 anchor (stall rows grow north from it)
  Coord bracket_anchor{};    // slot 0 input pose
  Coord window_anchor{};     // first bit-window cell (LSB)
  Coord ext_anchor{};        // top stacked ext datapath origin
  std::vector<Coord> query_pose;   // per direction: walk start cell
  std::vector<Coord> init_gate_pose;  // bracket/adder init wave starts

  int64_t scale_bound() const {
    // m < 6 * 1344 * |T|^2 * log2(|T| tau), defined for |T| > 1, tau > 1
    int64_t lg = 1;
    int64_t v = static_cast<int64_t>(tile_count) * temperature;
    while ((int64_t{1} << lg) < v) ++lg;
    return 6 * 1344 * static_cast<int64_t>(tile_count) * tile_count * lg;
  }
};

int clog2(int64_t v);

// Fixed-point computation of the scale layout: estimate widths, compute m,
// verify the widths still fit, repeat until stable.
ScaleLayout calc_scale(int tile_count, int temperature);

// Consistency: recomputing every width from layout.m stays within m.
bool layout_consistent(const ScaleLayout& l);

}  // namespace tas
