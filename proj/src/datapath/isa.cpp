#include "tas/datapath/isa.hpp"

#include "tas/datapath/tape.hpp"

namespace tas {

PoseTrace PoseInterpreter::trace(const DatapathProgram& program,
                                 const Coord& origin, const Frame& f0,
                                 bool assume_resumed) {
  ProgramShape shape = program_shape(program);
  const auto& L = shape.lane_syms;
  const int k = shape.width;
  PoseTrace out;
  Coord base = origin;  // lane-0 cell of the last completed row
  Frame f = f0;
  int lane = 1;
  out.expected_tiles = k;  // seed row

  auto du = [&]() { return dir_step(f.u); };
  auto dv = [&]() { return dir_step(f.v); };
  auto dn = [&]() { return dir_step(f.n()); };

  while (true) {
    int s = L[lane];
    if (!sym_arming(s)) {
      out.pose.at = base + dv() + du().scaled(lane);
      out.pose.frame = f;
      out.pose.halted = true;
      return out;
    }
    switch (s) {
      case sym::Fwd: {
        int c = 0;
        for (int b = 0; b < shape.operand_bits; ++b) {
          if (L[lane + 1 + b] == sym::Ob1) c |= 1 << b;
        }
        int rows = 2 * c + 1;
        out.expected_tiles += static_cast<int64_t>(rows) * k;
        base = base + dv().scaled(rows);
        lane += 2 + shape.operand_bits;
        break;
      }
      case sym::StopL: {
        out.expected_tiles += k;
        base = base + dv();
        out.pose.at = base + dv() + du().scaled(lane);
        out.pose.frame = f;
        out.pose.halted = true;
        return out;
      }
      case sym::Rise:
        out.expected_tiles += k;
        base = base + dv();
        f = f.risen();
        lane += 1;
        break;
      case sym::Fall:
        out.expected_tiles += k;
        base = base + dv();
        f = f.fallen();
        lane += 1;
        break;
      case sym::TurnR:
        out.expected_tiles += k + static_cast<int64_t>(k) * k;
        base = base + du().scaled(k - 1) + dv().scaled(k + 1);
        f = f.turned_right();
        lane += 1;
        break;
      case sym::TurnL:
        out.expected_tiles += k + static_cast<int64_t>(k) * k;
        base = base + dv().scaled(2);
        f = f.turned_left();
        lane += 1;
        break;
      case sym::Var: {
        // stall row, boundary post, and the resume-row prefix that grows
        // before any input arrives (left boundary up to the first payload
        // lane)
        out.expected_tiles += k + 1 + (lane + 1);
        base = base + dv();
        if (!assume_resumed) {
          out.pose.at = base + dv() + du().scaled(k - 1);  // the post
          out.pose.frame = f;
          out.pose.stalled = true;
          return out;
        }
        out.expected_tiles += k - (lane + 1) - 1;  // rest of the resume row
        base = base + dv();
        while (lane + 1 < static_cast<int>(L.size()) &&
               L[lane + 1] == sym::Vp) {
          ++lane;
        }
        lane += 1;
        break;
      }
      default: {
        if (s >= sym::PlaceBase) {
          // instruction row, then the two pair-advance rows
          out.expected_tiles += 3 * k + 2;
          out.pair_cells.push_back(base + dv().scaled(2) +
                                   du().scaled(lane) - dn());
          out.pair_cells.push_back(base + dv().scaled(3) +
                                   du().scaled(lane) - dn());
          base = base + dv().scaled(3);
          lane += 1;
        } else {
          out.expected_tiles += k;
          base = base + dv();
          lane += 1;
        }
        break;
      }
    }
  }
}

Pose PoseInterpreter::run(const DatapathProgram& program, const Coord& origin,
                          const Frame& f) {
  return trace(program, origin, f, false).pose;
}

}  // namespace tas
