#include "tas/iu/layout.hpp"

#include <stdexcept>

namespace tas {

int clog2(int64_t v) {
  int b = 0;
  while ((int64_t{1} << b) < v) ++b;
  return b;
}

namespace {

void compute_widths(ScaleLayout& l, int m) {
  const int T = l.tile_count;
  l.nav = 11 + 3 * clog2(m);
  l.dp_glue = std::max(l.nav, l.strength_bits) + l.strength_bits + 4;
  // one navigation prefix carrying all 19 adder layer seed rows
  int layer_row = clog2(4 * m) + 4 + 6 * l.strength_bits;
  l.dp_adder = l.nav + T * 8 + l.adder_layers * layer_row;
  l.bracket_levels = clog2(T);
  l.dp_bracket =
      l.nav + std::max(1, l.id_bits) * (24 + 3 * clog2(l.dp_glue + 15));
  l.dp_ext = l.nav + 12 + 2 * clog2(2 * m) + l.id_bits;
  l.dp_blocker = l.dp_ext;
  l.g_move = 4 * l.dp_ext + 60;
  l.g_glue = 6 * T * T * (l.dp_glue + 4);
  l.g_init = l.dp_adder + l.bracket_levels * l.dp_bracket + 8 * l.dp_ext;
  l.band_width = l.g_move + l.g_glue + l.g_init;
}

}  // namespace

ScaleLayout calc_scale(int tile_count, int temperature) {
  if (tile_count < 1 || temperature < 1) {
    throw std::invalid_argument("calc_scale arguments");
  }
  ScaleLayout l;
  l.tile_count = tile_count;
  l.temperature = temperature;
  l.id_bits = std::max(1, clog2(tile_count));
  l.strength_bits = clog2(temperature + 1);

  int m = 256;
  for (int iter = 0; iter < 64; ++iter) {
    compute_widths(l, m);
    int next = l.band_width + 2 * l.dp_ext;
    if (next == m) break;
    m = next;
  }
  l.m = l.band_width + 2 * l.dp_ext;
  compute_widths(l, l.m);
  l.lane0 = l.dp_ext;

  // interior anchors: the critical band runs on the top face of the
  // innermost ring; query walks and module growth happen one plane below
  l.critical_z = l.m - 1 - l.inset_ring3;
  int zc = l.critical_z;
  l.adder_anchor = Coord{l.lane0 + 8, l.m / 2, zc - 40};
  l.bracket_anchor = Coord{l.lane0 + 8, l.m / 2 - 40, zc - 40};
  l.window_anchor = Coord{l.lane0 + 8, l.m / 2 - 60, zc - 60};
  l.ext_anchor = Coord{l.lane0 + 8, l.m / 2 - 60, zc - 70};
  l.query_pose.assign(6, Coord{});
  l.init_gate_pose.assign(2, Coord{});
  return l;
}

bool layout_consistent(const ScaleLayout& l) {
  ScaleLayout copy = l;
  compute_widths(copy, l.m);
  return copy.band_width + 2 * copy.dp_ext <= l.m &&
         copy.nav == 11 + 3 * clog2(l.m);
}

}  // namespace tas
