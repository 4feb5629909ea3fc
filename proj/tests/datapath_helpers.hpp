#pragma once

#include "tas/datapath/assemble.hpp"

namespace tas { namespace testutil {
// Conservative self-collision detector: walk the interpreter geometry and
// collect one axis-aligned box per instruction segment (plus seed and pose);
// non-adjacent overlapping boxes mean the swept path may revisit cells.
inline bool self_avoiding(const DatapathProgram& p, const Coord& origin,
                          const Frame& f0) {
  ProgramShape shape;
  try { shape = program_shape(p); } catch (...) { return false; }
  const auto& L = shape.lane_syms;
  const int k = shape.width;
  Coord base = origin;
  Frame f = f0;
  int lane = 1;
  std::vector<Aabb> boxes;
  auto push_box = [&](const Coord& a, const Coord& b) {
    Aabb box; box.include(a); box.include(b); boxes.push_back(box);
  };
  auto du=[&]{return dir_step(f.u);}; auto dv=[&]{return dir_step(f.v);};
  push_box(base, base + du().scaled(k - 1));  // seed row
  while (true) {
    int s = L[lane];
    if (!sym_arming(s)) {
      Coord pose = base + dv() + du().scaled(lane);
      push_box(pose, pose);
      break;
    }
    if (s == sym::Fwd) {
      int c = 0;
      for (int b = 0; b < shape.operand_bits; ++b)
        if (L[lane+1+b] == sym::Ob1) c |= 1 << b;
      int rows = 2*c+1;
      push_box(base + dv(), base + dv().scaled(rows) + du().scaled(k-1));
      base = base + dv().scaled(rows);
      lane += 2 + shape.operand_bits;
    } else if (s == sym::Rise || s == sym::Fall) {
      push_box(base + dv(), base + dv() + du().scaled(k-1));
      base = base + dv();
      f = (s == sym::Rise) ? f.risen() : f.fallen();
      lane += 1;
    } else if (s == sym::TurnR) {
      Coord lo = base + dv();
      push_box(lo, lo + du().scaled(k-1) + dv().scaled(k));
      base = base + du().scaled(k-1) + dv().scaled(k+1);
      f = f.turned_right();
      lane += 1;
    } else if (s == sym::TurnL) {
      Coord lo = base + dv();
      push_box(lo, lo + du().scaled(k-1) + dv().scaled(k));
      base = base + dv().scaled(2);
      f = f.turned_left();
      lane += 1;
    } else if (s == sym::Var) {
      return false;  // stalls handled separately in tests
    } else if (s >= sym::PlaceBase) {
      push_box(base + dv() - dir_step(f.n()),
               base + dv().scaled(2) + du().scaled(k-1));
      base = base + dv().scaled(2);
      lane += 1;
    } else {
      push_box(base + dv(), base + dv() + du().scaled(k-1));
      base = base + dv();
      lane += 1;
    }
  }
  for (size_t i = 0; i < boxes.size(); ++i) {
    for (size_t j = i + 2; j < boxes.size(); ++j) {
      const Aabb& a = boxes[i];
      const Aabb& b = boxes[j];
      bool disjoint = a.hi.x < b.lo.x || b.hi.x < a.lo.x ||
                      a.hi.y < b.lo.y || b.hi.y < a.lo.y ||
                      a.hi.z < b.lo.z || b.hi.z < a.lo.z;
      if (!disjoint) return false;
    }
  }
  return true;
}
}}
