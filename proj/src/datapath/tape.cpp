#include "tas/datapath/tape.hpp"

#include <cassert>
#include <stdexcept>

namespace tas {

std::string sym_code(int s) {
  switch (s) {
    case sym::BL: return "BL";
    case sym::BR: return "BR";
    case sym::BRc: return "BRc";
    case sym::Buf: return "b";
    case sym::Bit0: return "0";
    case sym::Bit1: return "1";
    case sym::Fwd: return "F";
    case sym::Ob0: return "o0";
    case sym::Ob1: return "o1";
    case sym::Fend: return "fe";
    case sym::TurnL: return "tl";
    case sym::TurnR: return "tr";
    case sym::Rise: return "ri";
    case sym::Fall: return "fa";
    case sym::Var: return "V";
    case sym::Vp: return "vp";
    case sym::Stop: return "st";
    case sym::StopL: return "sl";
    case sym::BLc: return "BLc";
    case sym::Home: return "hm";
    case sym::Wm: return "wm";
    case sym::Pr0: return "p0";
    case sym::Pr1: return "p1";
    case sym::PrA: return "pA";
    case sym::PrGap: return "pg";
    case sym::Init: return "in";
    case sym::Lg: return "lg";
    default:
      if (s >= sym::PlaceBase) {
        return "P" + std::to_string(s - sym::PlaceBase);
      }
      if (s >= sym::GateBase) return "G" + std::to_string(s - sym::GateBase);
      if (s >= sym::TurnTagBase) {
        return "T" + std::to_string(s - sym::TurnTagBase);
      }
      if (s >= sym::FwdTagBase) {
        return "W" + std::to_string(s - sym::FwdTagBase);
      }
      if (s >= sym::FallTagBase) {
        return "e" + std::to_string(s - sym::FallTagBase);
      }
      if (s >= sym::FoldBase) return "f" + std::to_string(s - sym::FoldBase);
      if (s >= sym::QueryBase && s < sym::QueryBase + 6) {
        return "q" + std::to_string(s - sym::QueryBase);
      }
      throw std::logic_error("bad symbol");
  }
}

bool sym_arming(int s) {
  switch (s) {
    case sym::BL:
    case sym::BLc:
    case sym::BR:
    case sym::BRc:
    case sym::Stop:
    case sym::Vp:
    case sym::Pr0:
    case sym::Pr1:
    case sym::PrA:
    case sym::PrGap:
      return false;
    default:
      return true;
  }
}

bool sym_executable(int s) {
  switch (s) {
    case sym::Buf:
    case sym::Bit0:
    case sym::Bit1:
    case sym::Fwd:
    case sym::TurnL:
    case sym::TurnR:
    case sym::Rise:
    case sym::Fall:
    case sym::Var:
    case sym::StopL:
    case sym::Home:
    case sym::Init:
    case sym::Fend:
    case sym::Ob0:  // operand lanes of a frame-mismatched forward act as
    case sym::Ob1:  // buffers when the diagonal crosses them
      return true;
    default:
      return s >= sym::QueryBase;
  }
}

int frame_index(const Frame& f) {
  static const std::vector<Frame> all = Frame::all();
  for (size_t i = 0; i < all.size(); ++i) {
    if (all[i] == f) return static_cast<int>(i);
  }
  throw std::logic_error("bad frame");
}

const Frame& frame_by_index(int i) {
  static const std::vector<Frame> all = Frame::all();
  return all.at(i);
}

// ---- shapes ----------------------------------------------------------------

int minimal_operand_bits(const DatapathProgram& p) {
  int bits = 1;
  for (const Instruction& ins : p.instructions) {
    if (ins.op == Op::Forward) {
      int b = 1;
      while ((1 << b) <= ins.operand) ++b;
      bits = std::max(bits, b);
    }
  }
  return bits;
}

ProgramShape program_shape(const DatapathProgram& p) {
  ProgramShape shape;
  shape.operand_bits = p.forward_operand_bits > 0 ? p.forward_operand_bits
                                                  : minimal_operand_bits(p);
  int stops = 0;
  for (const Instruction& ins : p.instructions) {
    if (ins.op == Op::Stop) ++stops;
  }
  if (stops > 1) throw std::invalid_argument("at most one stop");
  const bool left_cb = p.boundary == BoundaryKind::LeftCallback;
  std::vector<int>& L = shape.lane_syms;
  L.push_back(left_cb ? sym::BLc : sym::BL);
  for (const Instruction& ins : p.instructions) {
    switch (ins.op) {
      case Op::Buffer:
        L.push_back(sym::Buf);
        break;
      case Op::Forward: {
        if (ins.operand < 1) throw std::invalid_argument("forward operand");
        if (ins.operand >= (1 << shape.operand_bits)) {
          throw std::invalid_argument("forward operand exceeds field");
        }
        L.push_back(sym::Fwd);
        for (int b = 0; b < shape.operand_bits; ++b) {
          L.push_back(((ins.operand >> b) & 1) ? sym::Ob1 : sym::Ob0);
        }
        L.push_back(sym::Fend);
        break;
      }
      case Op::Left:
        L.push_back(sym::TurnL);
        break;
      case Op::Right:
        L.push_back(sym::TurnR);
        break;
      case Op::Rise:
        L.push_back(sym::Rise);
        break;
      case Op::Fall:
        L.push_back(sym::Fall);
        break;
      case Op::Place:
        L.push_back(sym::PlaceBase + ins.operand);
        break;
      case Op::Variable: {
        if (ins.operand < 1) throw std::invalid_argument("variable width");
        L.push_back(sym::Var);
        for (int i = 0; i < ins.operand; ++i) L.push_back(sym::Vp);
        break;
      }
      case Op::Stop:
        L.push_back(left_cb ? sym::StopL : sym::Stop);
        break;
    }
  }
  for (int b : p.payload) L.push_back(b ? sym::Bit1 : sym::Bit0);
  L.push_back(p.boundary == BoundaryKind::RightCallback ||
                      p.boundary == BoundaryKind::RightVariableCallback
                  ? sym::BRc
                  : sym::BR);
  shape.width = static_cast<int>(L.size());
  return shape;
}

int program_width(const DatapathProgram& p) {
  return program_shape(p).width;
}

// ---- emitter ---------------------------------------------------------------

std::string TapeEmitter::glue_name(const std::string& role, const Frame& f,
                                   const std::string& extra) const {
  std::string s = ns_;
  s += ch_;
  s += ':';
  s += role;
  s += ':';
  s += f.code();
  if (!extra.empty()) {
    s += ':';
    s += extra;
  }
  return s;
}

GlueId TapeEmitter::glue(const std::string& role, const Frame& f,
                         const std::string& extra) {
  return sys_->glues.intern(glue_name(role, f, extra));
}

void TapeEmitter::set_face(TileType& t, Dir d, GlueId g, int strength) {
  t.glue(d) = Glue{g, strength};
}

TileId TapeEmitter::get(const std::string& name,
                        const std::function<void(TileType&)>& build) {
  auto it = memo_.find(name);
  if (it != memo_.end()) return it->second;
  TileType t;
  t.name = name;
  build(t);
  TileId id = sys_->tiles.add(std::move(t));
  memo_.emplace(name, id);
  return id;
}

void TapeEmitter::register_place_pair(int id, PlacePairSpec spec) {
  pairs_[id] = std::move(spec);
}

const PlacePairSpec& TapeEmitter::place_pair(int id) const {
  auto it = pairs_.find(id);
  if (it == pairs_.end()) throw std::out_of_range("unknown place pair");
  return it->second;
}

namespace {

Dir face_dir(const Frame& f, const std::string& face) {
  if (face == "fwd") return f.v;
  if (face == "back") return opposite(f.v);
  if (face == "right") return f.u;
  if (face == "left") return opposite(f.u);
  if (face == "up") return f.n();
  if (face == "down") return opposite(f.n());
  throw std::invalid_argument("face");
}

}  // namespace

// ---- seed row --------------------------------------------------------------

TileId TapeEmitter::seed_cell(const Frame& f, int s, int left_sym,
                              int right_sym, bool arm) {
  std::string name = ns_ + ch_ + "/seed/" + f.code() + "/" + sym_code(s) +
                     "/" + (left_sym >= 0 ? sym_code(left_sym) : "-") + "/" +
                     (right_sym >= 0 ? sym_code(right_sym) : "-") +
                     (arm ? "/A" : "");
  return get(name, [&](TileType& t) {
    // forward face: data or arm
    if (arm && sym_arming(s)) {
      set_face(t, f.v, glue("a", f, sym_code(s)), 2);
    } else {
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    }
    // lateral chaining for seed stability
    if (left_sym >= 0) {
      set_face(t, opposite(f.u),
               glue("sd", f, sym_code(left_sym) + "|" + sym_code(s)), 2);
    }
    if (right_sym >= 0) {
      set_face(t, f.u,
               glue("sd", f, sym_code(s) + "|" + sym_code(right_sym)), 2);
    }
    if (s == sym::BRc && right_sym < 0) {
      set_face(t, f.u, glue("cbr", f), 1);  // callback root rail
    }
    if (s == sym::BLc && left_sym < 0) {
      set_face(t, opposite(f.u), glue("cbrL", f), 1);
    }
  });
}

void TapeEmitter::lay_seed_row(const std::vector<int>& lane_syms,
                               const Frame& f, const Coord& base,
                               int arm_lane,
                               std::vector<std::pair<Coord, TileId>>& out) {
  const int k = static_cast<int>(lane_syms.size());
  const Coord du = dir_step(f.u);
  for (int i = 0; i < k; ++i) {
    TileId id = seed_cell(f, lane_syms[i], i > 0 ? lane_syms[i - 1] : -1,
                          i + 1 < k ? lane_syms[i + 1] : -1, i == arm_lane);
    out.emplace_back(base + du.scaled(i), id);
  }
}

// ---- leaders ---------------------------------------------------------------

TileId TapeEmitter::exec(const Frame& f, int s) {
  if (!sym_executable(s)) throw std::logic_error("exec on " + sym_code(s));
  std::string name = ns_ + ch_ + "/ex/" + f.code() + "/" + sym_code(s);
  const bool fires = config.fires(s);
  if (s >= sym::FoldBase && s < sym::FoldBase + kFrameCount) {
    bool act = fires && frame_by_index(s - sym::FoldBase) == f;
    return get(name, [&](TileType& t) {
      set_face(t, opposite(f.v), glue("a", f, sym_code(s)), 2);
      if (act) {
        Frame fp = f.risen();
        set_face(t, f.n(), glue("v", fp, sym_code(s)), 1);
        set_face(t, f.u, glue("r1", f), 1);
        set_face(t, opposite(f.u), glue("rl", f), 1);
      } else {
        set_face(t, f.v, glue("v", f, sym_code(s)), 1);
        set_face(t, f.u, glue("w1", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
      }
    });
  }
  if (s >= sym::FallTagBase && s < sym::FallTagBase + kFrameCount) {
    bool act = fires && frame_by_index(s - sym::FallTagBase) == f;
    return get(name, [&](TileType& t) {
      set_face(t, opposite(f.v), glue("a", f, sym_code(s)), 2);
      if (act) {
        Frame fp = f.fallen();
        set_face(t, opposite(f.n()), glue("v", fp, sym_code(s)), 1);
        set_face(t, f.u, glue("q1", f), 1);
        set_face(t, opposite(f.u), glue("ql", f), 1);
      } else {
        set_face(t, f.v, glue("v", f, sym_code(s)), 1);
        set_face(t, f.u, glue("w1", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
      }
    });
  }
  if (s >= sym::FwdTagBase && s < sym::FwdTagBase + 48) {
    return get(name, [&](TileType& t) {
      set_face(t, opposite(f.v), glue("a", f, sym_code(s)), 2);
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      if (fires) {
        set_face(t, f.u, glue("db", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
      } else {
        set_face(t, f.u, glue("w1", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
      }
    });
  }
  if (s >= sym::TurnTagBase && s < sym::TurnTagBase + 32) {
    bool right_turn = ((s - sym::TurnTagBase) & 1) == 0;
    return get(name, [&](TileType& t) {
      set_face(t, opposite(f.v), glue("a", f, sym_code(s)), 2);
      if (fires) {
        const char* w1p = right_turn ? "t1" : "s1";
        const char* wlp = right_turn ? "tL" : "sL";
        const char* tvp = right_turn ? "tv" : "sv";
        set_face(t, f.v, glue(tvp, f, sym_code(s)), 1);
        set_face(t, f.u, glue(w1p, f), 1);
        set_face(t, opposite(f.u), glue(wlp, f), 1);
      } else {
        set_face(t, f.v, glue("v", f, sym_code(s)), 1);
        set_face(t, f.u, glue("w1", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
      }
    });
  }
  if (s >= sym::QueryBase && s < sym::QueryBase + 6) {
    int d = s - sym::QueryBase;
    return get(name, [&](TileType& t) {
      set_face(t, opposite(f.v), glue("a", f, sym_code(s)), 2);
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      if (fires) {
        set_face(t, f.u, glue("y1", f, std::to_string(d)), 1);
        set_face(t, opposite(f.u), glue("yl", f, std::to_string(d)), 1);
      } else {
        set_face(t, f.u, glue("w1", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
      }
    });
  }
  if (s == sym::Init) {
    return get(name, [&](TileType& t) {
      set_face(t, opposite(f.v), glue("a", f, sym_code(s)), 2);
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      if (fires) {
        set_face(t, f.u, glue("i1", f), 1);
        set_face(t, opposite(f.u), glue("il", f), 1);
      } else {
        set_face(t, f.u, glue("w1", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
      }
    });
  }
  if (s >= sym::GateBase && s < sym::GateBase + 64) {
    int g = s - sym::GateBase;
    return get(name, [&](TileType& t) {
      set_face(t, opposite(f.v), glue("a", f, sym_code(s)), 2);
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      if (fires) {
        set_face(t, f.u, glue("g1", f, std::to_string(g)), 1);
        set_face(t, opposite(f.u), glue("gl", f, std::to_string(g)), 1);
      } else {
        set_face(t, f.u, glue("w1", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
      }
    });
  }
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("a", f, sym_code(s)), 2);
    switch (s) {
      case sym::Fwd:
        set_face(t, f.v, glue("v", f, sym_code(s)), 1);
        set_face(t, f.u, glue("db", f), 1);
        set_face(t, opposite(f.u), glue("wl", f), 1);
        break;
      case sym::Rise: {
        Frame fp = f.risen();
        set_face(t, f.n(), glue("v", fp, sym_code(s)), 1);
        set_face(t, f.u, glue("r1", f), 1);
        set_face(t, opposite(f.u), glue("rl", f), 1);
        break;
      }
      case sym::Fall: {
        Frame fp = f.fallen();
        set_face(t, opposite(f.n()), glue("v", fp, sym_code(s)), 1);
        set_face(t, f.u, glue("q1", f), 1);
        set_face(t, opposite(f.u), glue("ql", f), 1);
        break;
      }
      case sym::Var:
        set_face(t, f.v, glue("vs", f, sym_code(s)), 1);
        set_face(t, f.u, glue("x1", f), 1);
        set_face(t, opposite(f.u), glue("xl", f), 1);
        break;
      case sym::StopL:
        set_face(t, f.v, glue("v", f, sym_code(s)), 1);
        set_face(t, f.u, glue("wr", f), 1);  // plain: no further arm
        set_face(t, opposite(f.u), glue("wsl", f), 1);
        break;
      case sym::TurnR:
        set_face(t, f.v, glue("tv", f, sym_code(s)), 1);
        set_face(t, f.u, glue("t1", f), 1);
        set_face(t, opposite(f.u), glue("tL", f), 1);
        break;
      case sym::TurnL:
        set_face(t, f.v, glue("sv", f, sym_code(s)), 1);
        set_face(t, f.u, glue("s1", f), 1);
        set_face(t, opposite(f.u), glue("sL", f), 1);
        break;
      default:
        if (s >= sym::PlaceBase) {
          set_face(t, f.v, glue("pla", f, sym_code(s)), 2);
          set_face(t, f.u, glue("wr", f), 1);
          set_face(t, opposite(f.u), glue("wl", f), 1);
        } else {
          set_face(t, f.v, glue("v", f, sym_code(s)), 1);
          set_face(t, f.u, glue("w1", f), 1);
          set_face(t, opposite(f.u), glue("wl", f), 1);
        }
        break;
    }
  });
}

TileId TapeEmitter::arm_cell(const Frame& f, int s) {
  std::string name = ns_ + ch_ + "/arm/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue("w1", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    if (s == sym::Wm) {
      set_face(t, f.v, glue("wra", f), 2);  // wrap: re-arm at Home
      set_face(t, f.u, glue("wr", f), 1);
    } else if (sym_arming(s)) {
      set_face(t, f.v, glue("a", f, sym_code(s)), 2);
      set_face(t, f.u, glue("wr", f), 1);
    } else if (s == sym::Stop) {
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      set_face(t, f.u, glue("ws", f), 1);  // last-row wave
    } else if (s == sym::BRc) {
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      set_face(t, f.u, glue("cbs", f), 2);  // path ended at the boundary
    } else {
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      if (s != sym::BR) set_face(t, f.u, glue("wr", f), 1);
    }
  });
}

TileId TapeEmitter::wave_r(const Frame& f, int s) {
  std::string name = ns_ + ch_ + "/wr/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue("wr", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    if (s == sym::BRc) {
      set_face(t, f.u, glue("cb", f), 1);  // callback rail
    } else if (s != sym::BR) {
      set_face(t, f.u, glue("wr", f), 1);
    }
  });
}

TileId TapeEmitter::wave_l(const Frame& f, int s) {
  std::string name = ns_ + ch_ + "/wl/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, f.u, glue("wl", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    if (s == sym::BLc) {
      set_face(t, opposite(f.u), glue("cbL", f), 1);  // left callback rail
    } else if (s != sym::BL) {
      set_face(t, opposite(f.u), glue("wl", f), 1);
    }
  });
}

TileId TapeEmitter::stop_wave_l(const Frame& f, int s) {
  std::string name = ns_ + ch_ + "/swl/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, f.u, glue("wsl", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    if (s == sym::BLc) {
      set_face(t, opposite(f.u), glue("cbsL", f), 2);
    } else if (s != sym::BL) {
      set_face(t, opposite(f.u), glue("wsl", f), 1);
    }
  });
}

TileId TapeEmitter::cb_start_l(const Frame& f) {
  std::string name = ns_ + ch_ + "/cbsl/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, f.u, glue("cbsL", f), 2);
    set_face(t, opposite(f.v), glue("cbcL", f), 1);
  });
}

TileId TapeEmitter::cb_step_l(const Frame& f) {
  std::string name = ns_ + ch_ + "/cbwl/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, f.v, glue("cbcL", f), 1);
    set_face(t, f.u, glue("cbL", f), 1);
    set_face(t, opposite(f.v), glue("cbcL", f), 1);
  });
}

TileId TapeEmitter::cb_end_l(const Frame& f) {
  std::string name = ns_ + ch_ + "/cbel/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, f.v, glue("cbcL", f), 1);
    set_face(t, f.u, glue("cbrL", f), 1);
    set_face(t, opposite(f.v), glue("cbactL", f), 2);
  });
}

TileId TapeEmitter::fwd_leader(const Frame& f, bool from_bounce) {
  std::string name =
      ns_ + ch_ + "/fA/" + f.code() + (from_bounce ? "/go" : "/x");
  if (!from_bounce) return exec(f, sym::Fwd);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("fgo", f), 2);
    set_face(t, f.v, glue("v", f, sym_code(sym::Fwd)), 1);
    set_face(t, f.u, glue("db", f), 1);
    set_face(t, opposite(f.u), glue("wl", f), 1);
  });
}

TileId TapeEmitter::dec_cell(const Frame& f, int bit, bool borrow_in) {
  std::string name = ns_ + ch_ + "/dec/" + f.code() + "/" +
                     std::to_string(bit) + (borrow_in ? "/B" : "/C");
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue(borrow_in ? "db" : "dc", f), 1);
    set_face(t, opposite(f.v),
             glue("v", f, sym_code(bit ? sym::Ob1 : sym::Ob0)), 1);
    int out_bit = borrow_in ? (bit ? 0 : 1) : bit;
    bool borrow_out = borrow_in && bit == 0;
    set_face(t, f.v, glue("v", f, sym_code(out_bit ? sym::Ob1 : sym::Ob0)),
             1);
    set_face(t, f.u, glue(borrow_out ? "db" : "dc", f), 1);
  });
}

TileId TapeEmitter::dec_end(const Frame& f, bool borrow_out) {
  std::string name =
      ns_ + ch_ + "/fend/" + f.code() + (borrow_out ? "/exit" : "/turn");
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue(borrow_out ? "db" : "dc", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(sym::Fend)), 1);
    if (borrow_out) {
      // forward instruction complete: arm the next instruction lane
      set_face(t, f.v, glue("v", f, sym_code(sym::Fend)), 1);
      set_face(t, f.u, glue("w1", f), 1);
    } else {
      set_face(t, f.v, glue("frt", f), 2);
      set_face(t, f.u, glue("wr", f), 1);
    }
  });
}

TileId TapeEmitter::ret_leader(const Frame& f) {
  std::string name = ns_ + ch_ + "/fret/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("frt", f), 2);
    set_face(t, f.v, glue("v", f, sym_code(sym::Fend)), 1);
    set_face(t, opposite(f.u), glue("dl", f), 1);
    set_face(t, f.u, glue("wr", f), 1);
  });
}

TileId TapeEmitter::ret_copy(const Frame& f, int bit) {
  std::string name =
      ns_ + ch_ + "/rc/" + f.code() + "/" + std::to_string(bit);
  return get(name, [&](TileType& t) {
    set_face(t, f.u, glue("dl", f), 1);
    set_face(t, opposite(f.v),
             glue("v", f, sym_code(bit ? sym::Ob1 : sym::Ob0)), 1);
    set_face(t, f.v, glue("v", f, sym_code(bit ? sym::Ob1 : sym::Ob0)), 1);
    set_face(t, opposite(f.u), glue("dl", f), 1);
  });
}

TileId TapeEmitter::ret_bounce(const Frame& f) {
  std::string name = ns_ + ch_ + "/fb/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, f.u, glue("dl", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(sym::Fwd)), 1);
    set_face(t, f.v, glue("fgo", f), 2);
    set_face(t, opposite(f.u), glue("wl", f), 1);
  });
}

// ---- rise / fall -----------------------------------------------------------

TileId TapeEmitter::lift_arm(const Frame& f, int s, bool rise) {
  std::string name = ns_ + ch_ + (rise ? "/ra/" : "/qa/") + f.code() + "/" +
                     sym_code(s);
  return get(name, [&](TileType& t) {
    Frame fp = rise ? f.risen() : f.fallen();
    Dir out = rise ? f.n() : opposite(f.n());
    set_face(t, opposite(f.u), glue(rise ? "r1" : "q1", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    if (s == sym::Wm) {
      set_face(t, out, glue("wra", fp), 2);  // wrap continues in the new frame
    } else if (sym_arming(s)) {
      set_face(t, out, glue("a", fp, sym_code(s)), 2);
    } else {
      set_face(t, out, glue("v", fp, sym_code(s)), 1);
    }
    set_face(t, f.u, glue(rise ? "rr" : "qr", f), 1);
  });
}

TileId TapeEmitter::lift_copy(const Frame& f, int s, bool rise, bool left) {
  std::string name = ns_ + ch_ + (rise ? "/rw/" : "/qw/") + f.code() + "/" +
                     sym_code(s) + (left ? "/L" : "/R");
  return get(name, [&](TileType& t) {
    Frame fp = rise ? f.risen() : f.fallen();
    Dir out = rise ? f.n() : opposite(f.n());
    const char* w = rise ? (left ? "rl" : "rr") : (left ? "ql" : "qr");
    set_face(t, left ? f.u : opposite(f.u), glue(w, f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, out, glue("v", fp, sym_code(s)), 1);
    if (left) {
      if (s != sym::BL) set_face(t, opposite(f.u), glue(w, f), 1);
    } else {
      if (s == sym::BRc) {
        set_face(t, f.u, glue(rise ? "cbbr" : "cbbf", f), 1);
      } else if (s != sym::BR) {
        set_face(t, f.u, glue(w, f), 1);
      }
    }
  });
}

// ---- variable stall --------------------------------------------------------

TileId TapeEmitter::var_seek(const Frame& f) {
  std::string name = ns_ + ch_ + "/vp/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue("x1", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(sym::Vp)), 1);
    set_face(t, f.u, glue("x1", f), 1);  // keep seeking the arm lane
  });
}

TileId TapeEmitter::var_arm_mark(const Frame& f, int s) {
  if (s == sym::Vp) throw std::logic_error("payload lanes are never marked");
  std::string name = ns_ + ch_ + "/va/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue("x1", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    if (s == sym::BR || s == sym::BRc) {
      set_face(t, f.v, glue("po", f), 2);
      if (s == sym::BRc) set_face(t, f.u, glue("cbs", f), 2);
    } else {
      set_face(t, f.v, glue("vsa", f, sym_code(s)), 1);
      set_face(t, f.u, glue("xr", f), 1);
    }
  });
}

TileId TapeEmitter::var_copy(const Frame& f, int s, bool left) {
  std::string name = ns_ + ch_ + "/vc/" + f.code() + "/" + sym_code(s) +
                     (left ? "/L" : "/R");
  return get(name, [&](TileType& t) {
    set_face(t, left ? f.u : opposite(f.u), glue(left ? "xl" : "xr", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    if (s == sym::BR || s == sym::BRc) {
      set_face(t, f.v, glue("po", f), 2);  // post = resume row boundary
      if (s == sym::BRc) set_face(t, f.u, glue("cbs", f), 2);
    } else if (s == sym::Vp) {
      // no forward glue: rewritten on resume
    } else if (s == sym::BL) {
      set_face(t, f.v, glue("rzs", f), 2);  // seeds the resume wave
    } else {
      set_face(t, f.v, glue("vs", f, sym_code(s)), 1);
    }
    if (left) {
      if (s != sym::BL) set_face(t, opposite(f.u), glue("xl", f), 1);
    } else {
      if (s != sym::BR && s != sym::BRc) set_face(t, f.u, glue("xr", f), 1);
    }
  });
}

TileId TapeEmitter::var_post(const Frame& f) {
  std::string name = ns_ + ch_ + "/post/" + f.code() +
                     (config.relay_drop ? "/rd" : "");
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("po", f), 2);
    set_face(t, f.v, glue("v", f, sym_code(sym::BR)), 1);
    if (config.relay_drop) {
      set_face(t, opposite(f.n()), glue("dpp", f), 2);  // drop pump chain
    }
  });
}

TileId TapeEmitter::drop_pump(const Frame& f) {
  std::string name = ns_ + ch_ + "/dpu/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, f.n(), glue("dpp", f), 2);
    set_face(t, opposite(f.n()), glue("dpp", f), 2);
    set_face(t, opposite(f.u), glue("dwv", f), 1);
  });
}

TileId TapeEmitter::drop_payload(const Frame& f, int bit) {
  std::string name =
      ns_ + ch_ + "/dpl/" + f.code() + "/" + std::to_string(bit);
  return get(name, [&](TileType& t) {
    Frame fdrop{f.u, opposite(f.n())};
    set_face(t, f.u, glue("dwv", f), 1);
    set_face(t, f.n(), glue("v", fdrop, sym_code(bit ? sym::Bit1 : sym::Bit0)),
             1);
    set_face(t, opposite(f.n()),
             glue("v", fdrop, sym_code(bit ? sym::Bit1 : sym::Bit0)), 1);
    set_face(t, opposite(f.u), glue("dwv", f), 1);
  });
}

TileId TapeEmitter::rz_bl(const Frame& f) {
  std::string name = ns_ + ch_ + "/rzbl/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("rzs", f), 2);
    set_face(t, f.v, glue("v", f, sym_code(sym::BL)), 1);
    set_face(t, f.u, glue("rw", f), 1);
  });
}

TileId TapeEmitter::rz_cell(const Frame& f, int s, bool arm) {
  std::string name = ns_ + ch_ + "/rz/" + f.code() + "/" + sym_code(s) +
                     (arm ? "/A" : "");
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue("rw", f), 1);
    set_face(t, opposite(f.v), glue(arm ? "vsa" : "vs", f, sym_code(s)), 1);
    if (arm && sym_arming(s)) {
      set_face(t, f.v, glue("a", f, sym_code(s)), 2);
    } else {
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    }
    set_face(t, f.u, glue("rw", f), 1);
  });
}

TileId TapeEmitter::rz_payload(const Frame& f, int bit, bool arm) {
  std::string name = ns_ + ch_ + "/rzp/" + f.code() + "/" +
                     std::to_string(bit) + (arm ? "/A" : "") +
                     (config.relay_drop ? "/rd" : "");
  return get(name, [&](TileType& t) {
    Frame fr{f.u, opposite(f.n())};  // injection rail descends onto the tape
    set_face(t, opposite(f.u), glue("rw", f), 1);
    set_face(t, f.n(),
             glue("v", fr, sym_code(bit ? sym::Bit1 : sym::Bit0)), 1);
    set_face(t, f.v, glue("v", f, sym_code(bit ? sym::Bit1 : sym::Bit0)),
             1);
    set_face(t, f.u, glue("rw", f), 1);
    if (config.relay_drop) {
      // re-emit the injected bit downward for the next stacked datapath
      set_face(t, opposite(f.n()),
               glue("v", fr, sym_code(bit ? sym::Bit1 : sym::Bit0)), 1);
    }
  });
}

// ---- place pair ------------------------------------------------------------

TileId TapeEmitter::place_m1(const Frame& f, int pair_id) {
  int s = sym::PlaceBase + pair_id;
  std::string name = ns_ + ch_ + "/pm1/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("pla", f, sym_code(s)), 2);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    set_face(t, opposite(f.n()), glue("pl1", f, sym_code(s)), 2);
    set_face(t, f.u, glue("wr", f), 1);
    set_face(t, opposite(f.u), glue("wl", f), 1);
  });
}

TileId TapeEmitter::place_p1(const Frame& f, int pair_id) {
  int s = sym::PlaceBase + pair_id;
  std::string name = ns_ + ch_ + "/pp1/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, f.n(), glue("pl1", f, sym_code(s)), 2);
    set_face(t, f.v, glue("pl2", f, sym_code(s)), 2);
    const PlacePairSpec& spec = place_pair(pair_id);
    for (auto& [face, label, strength] : spec.p1_faces) {
      // strength-2 payload faces are frame-scoped so pair families of
      // different orientations can never bind each other
      std::string full = strength >= 2
                             ? ns_ + ch_ + ":pf:" + f.code() + ":" + label
                             : label;
      set_face(t, face_dir(f, face), sys_->glues.intern(full), strength);
    }
  });
}

TileId TapeEmitter::place_p2(const Frame& f, int pair_id) {
  int s = sym::PlaceBase + pair_id;
  std::string name = ns_ + ch_ + "/pp2/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("pl2", f, sym_code(s)), 2);
    set_face(t, f.n(), glue("pl3", f, sym_code(s)), 2);
    const PlacePairSpec& spec = place_pair(pair_id);
    for (auto& [face, label, strength] : spec.p2_faces) {
      std::string full = strength >= 2
                             ? ns_ + ch_ + ":pf:" + f.code() + ":" + label
                             : label;
      set_face(t, face_dir(f, face), sys_->glues.intern(full), strength);
    }
  });
}

TileId TapeEmitter::place_m2(const Frame& f, int pair_id) {
  int s = sym::PlaceBase + pair_id;
  std::string name = ns_ + ch_ + "/pm2/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.n()), glue("pl3", f, sym_code(s)), 2);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    set_face(t, f.u, glue("w1", f), 1);
    set_face(t, opposite(f.u), glue("wl", f), 1);
  });
}

// ---- turn square -----------------------------------------------------------

namespace {
// role names for the right (t*) and left (s*) turn families
struct TurnRoles {
  const char* w1;    // first wave step (marking side)
  const char* wOut;  // plain wave, marking side
  const char* wIn;   // plain wave toward the mirror-seeding boundary
  const char* tv;
  const char* tva;
  const char* tma;
  const char* tmaa;
  const char* tm1;
  const char* tml;
  const char* te1;
  const char* te;
  const char* tu1;
  const char* tu;
  const char* tue;
};
constexpr TurnRoles kRight{"t1", "tR", "tL", "tv", "tva", "tma", "tmaa",
                           "tm1", "tml", "te1", "te", "tu1", "tu", "tue"};
constexpr TurnRoles kLeft{"s1", "sR", "sL", "sv", "sva", "sma", "smaa",
                          "sm1", "sml", "se1", "se", "su1", "su", "sue"};
}  // namespace

// cells of the turn row itself
TileId TapeEmitter::turn_copy(const Frame& f, int s, bool right, bool inner,
                              bool marked) {
  if (inner && ((right && (s == sym::BR || s == sym::BRc)) ||
                (!right && s == sym::BL))) {
    throw std::logic_error("mirror-side boundary uses turn_edge_seed");
  }
  const TurnRoles& R = right ? kRight : kLeft;
  std::string name = ns_ + ch_ + "/tc/" + f.code() + "/" + sym_code(s) +
                     (right ? "/R" : "/L") + (inner ? "/i" : "/o") +
                     (marked ? "/m" : "");
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    // For a right turn the mirror-seeding boundary is BR (the wave toward it
    // runs right); the marking wave also runs right (first step after the
    // leader). For a left turn they swap sides.
    bool toward_mirror_side = right ? inner : inner;
    (void)toward_mirror_side;
    Dir mirror_side = right ? f.u : opposite(f.u);
    Dir mark_side = f.u;  // arm mark is always at leader lane + 1
    if (marked) {
      set_face(t, opposite(mark_side), glue(R.w1, f), 1);
      set_face(t, f.v, glue(R.tva, f, sym_code(s)), 1);
      // continue with the plain wave on the marking side
      if (right) {
        set_face(t, f.u, glue(R.wOut, f), 1);
      } else {
        set_face(t, f.u, glue(R.wOut, f), 1);
      }
      return;
    }
    if (inner) {
      // between leader and the mirror-seeding boundary
      Dir from = opposite(mirror_side);
      const char* wave = right ? R.wOut : R.wIn;
      set_face(t, from, glue(wave, f), 1);
      set_face(t, f.v, glue(R.tv, f, sym_code(s)), 1);
      if (s == sym::BRc) set_face(t, f.u, glue("cb", f), 1);
      bool at_edge = (right && (s == sym::BR || s == sym::BRc)) ||
                     (!right && s == sym::BL);
      if (!at_edge) set_face(t, mirror_side, glue(wave, f), 1);
    } else {
      Dir from = mirror_side;  // wave comes from the mirror side
      const char* wave = right ? R.wIn : R.wOut;
      // for right turns the outer side is left of the leader
      Dir away = right ? opposite(f.u) : f.u;
      set_face(t, opposite(away), glue(wave, f), 1);
      set_face(t, f.v, glue(R.tv, f, sym_code(s)), 1);
      if (s == sym::BRc) set_face(t, f.u, glue("cb", f), 1);
      bool at_edge = (right && s == sym::BL) ||
                     (!right && (s == sym::BR || s == sym::BRc));
      if (!at_edge) set_face(t, away, glue(wave, f), 1);
      (void)from;
    }
  });
}

TileId TapeEmitter::turn_edge_seed(const Frame& f, bool right, int s,
                                   bool first_step) {
  // boundary cell of the turn row on the mirror side: launches the first
  // mirror with a strength-2 glue
  const TurnRoles& R = right ? kRight : kLeft;
  std::string name = ns_ + ch_ + "/tes/" + f.code() + (right ? "/R" : "/L") +
                     "/" + sym_code(s) + (first_step ? "/1" : "");
  return get(name, [&](TileType& t) {
    const char* wave = right ? (first_step ? R.w1 : R.wOut) : R.wIn;
    set_face(t, right ? opposite(f.u) : f.u, glue(wave, f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, f.v, glue(right ? "tmc" : "smc", f, sym_code(s)), 2);
    if (s == sym::BRc) set_face(t, f.u, glue("cb", f), 1);
  });
}

TileId TapeEmitter::pass_copy(const Frame& f, int s, bool right,
                              bool marked) {
  const TurnRoles& R = right ? kRight : kLeft;
  std::string name = ns_ + ch_ + "/pc/" + f.code() + "/" + sym_code(s) +
                     (right ? "/R" : "/L") + (marked ? "/m" : "");
  return get(name, [&](TileType& t) {
    Dir wave_from = right ? f.u : opposite(f.u);
    set_face(t, wave_from, glue(R.tml, f), 1);
    set_face(t, opposite(f.v),
             glue(marked ? R.tva : R.tv, f, sym_code(s)), 1);
    set_face(t, f.v, glue(marked ? R.tva : R.tv, f, sym_code(s)), 1);
    bool at_far_edge = (right && s == sym::BL) ||
                       (!right && (s == sym::BR || s == sym::BRc));
    if (!at_far_edge) set_face(t, opposite(wave_from), glue(R.tml, f), 1);
  });
}

TileId TapeEmitter::pre_mirror(const Frame& f, int s, bool right,
                               bool marked) {
  const TurnRoles& R = right ? kRight : kLeft;
  std::string name = ns_ + ch_ + "/pm/" + f.code() + "/" + sym_code(s) +
                     (right ? "/R" : "/L") + (marked ? "/m" : "");
  return get(name, [&](TileType& t) {
    Dir mirror_side = right ? f.u : opposite(f.u);
    set_face(t, mirror_side, glue(R.tm1, f), 1);
    set_face(t, opposite(f.v),
             glue(marked ? R.tva : R.tv, f, sym_code(s)), 1);
    set_face(t, f.v, glue(marked ? R.tmaa : R.tma, f, sym_code(s)), 2);
    set_face(t, opposite(mirror_side), glue(R.tml, f), 1);
  });
}

TileId TapeEmitter::mirror(const Frame& f, int s, bool right, bool marked) {
  const TurnRoles& R = right ? kRight : kLeft;
  std::string name = ns_ + ch_ + "/mi/" + f.code() + "/" + sym_code(s) +
                     (right ? "/R" : "/L") + (marked ? "/m" : "");
  return get(name, [&](TileType& t) {
    Dir mirror_side = right ? f.u : opposite(f.u);
    set_face(t, opposite(f.v),
             glue(marked ? R.tmaa : R.tma, f, sym_code(s)), 2);
    set_face(t, opposite(mirror_side), glue(R.tm1, f), 1);
    set_face(t, mirror_side,
             glue(R.te1, f, sym_code(s) + (marked ? "m" : "")), 1);
    set_face(t, f.v, glue(R.tu1, f), 1);
  });
}

TileId TapeEmitter::mirror_corner(const Frame& f, bool right, int s) {
  // first mirror, above the boundary lane; doubles as the new tape's
  // boundary cell of its emerging first row
  const TurnRoles& R = right ? kRight : kLeft;
  std::string name = ns_ + ch_ + "/mc/" + f.code() + (right ? "/R" : "/L") +
                     "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    Frame fp = right ? f.turned_right() : f.turned_left();
    Dir mirror_side = right ? f.u : opposite(f.u);
    set_face(t, opposite(f.v), glue(right ? "tmc" : "smc", f, sym_code(s)),
             2);
    set_face(t, opposite(mirror_side), glue(R.tm1, f), 1);
    // New tape data face: boundary of the emerging row. A right turn with a
    // callback boundary emits the BRt marker, which heals to BRc one row
    // later and gives the callback bridge a distinct rail.
    if (right) {
      set_face(t, mirror_side,
               glue("v", fp, s == sym::BRc ? "BRt" : sym_code(sym::BR)), 1);
    } else {
      set_face(t, mirror_side, glue("v", fp, sym_code(sym::BL)), 1);
    }
    set_face(t, f.v, glue(R.tue, f), 1);
  });
}

TileId TapeEmitter::eflow(const Frame& f, int s, bool right, bool first,
                          bool marked) {
  const TurnRoles& R = right ? kRight : kLeft;
  std::string name = ns_ + ch_ + "/ef/" + f.code() + "/" + sym_code(s) +
                     (right ? "/R" : "/L") + (first ? "/1" : "") +
                     (marked ? "/m" : "");
  return get(name, [&](TileType& t) {
    Dir flow = right ? f.u : opposite(f.u);
    std::string tag = sym_code(s) + (marked ? "m" : "");
    set_face(t, opposite(flow), glue(first ? R.te1 : R.te, f, tag), 1);
    set_face(t, opposite(f.v), glue(first ? R.tu1 : R.tu, f), 1);
    set_face(t, flow, glue(R.te, f, tag), 1);
    set_face(t, f.v, glue(R.tu, f), 1);
  });
}

TileId TapeEmitter::eend(const Frame& f, int s, bool right, bool first,
                         bool marked) {
  const TurnRoles& R = right ? kRight : kLeft;
  std::string name = ns_ + ch_ + "/ee/" + f.code() + "/" + sym_code(s) +
                     (right ? "/R" : "/L") + (first ? "/1" : "") +
                     (marked ? "/m" : "");
  return get(name, [&](TileType& t) {
    Frame fp = right ? f.turned_right() : f.turned_left();
    Dir flow = right ? f.u : opposite(f.u);
    std::string tag = sym_code(s) + (marked ? "m" : "");
    // reaches the square edge: below is the edge-marker column
    set_face(t, opposite(flow), glue(first ? R.te1 : R.te, f, tag), 1);
    set_face(t, opposite(f.v), glue(R.tue, f), 1);
    set_face(t, f.v, glue(R.tue, f), 1);
    if (marked && sym_arming(s)) {
      set_face(t, flow, glue("a", fp, sym_code(s)), 2);
    } else {
      set_face(t, flow, glue("v", fp, sym_code(s)), 1);
    }
  });
}

TileId TapeEmitter::stop_wave(const Frame& f, int s) {
  std::string name = ns_ + ch_ + "/sw/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue("ws", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    if (s == sym::BRc) {
      set_face(t, f.u, glue("cbs", f), 2);  // final row triggers callback
    } else if (s != sym::BR) {
      set_face(t, f.u, glue("ws", f), 1);
    }
  });
}

TileId TapeEmitter::turn_exit_boundary(const Frame& f) {
  // first grown row of a right-turned callback tape: heals BRt to BRc and
  // exposes the distinct bridge rail. Variants cover the row kinds the
  // first grown row can be.
  std::string name = ns_ + ch_ + "/teb/" + f.code();
  get(name + "/stop", [&](TileType& t) {  // first grown row is the last row
    set_face(t, opposite(f.u), glue("ws", f), 1);
    set_face(t, opposite(f.v), glue("v", f, "BRt"), 1);
    set_face(t, f.v, glue("v", f, sym_code(sym::BRc)), 1);
    set_face(t, f.u, glue("cbsT", f), 2);
  });
  get(name + "/var", [&](TileType& t) {  // first grown row stalls
    set_face(t, opposite(f.u), glue("xr", f), 1);
    set_face(t, opposite(f.v), glue("v", f, "BRt"), 1);
    set_face(t, f.v, glue("po", f), 2);
    set_face(t, f.u, glue("cbsT", f), 2);
  });
  get(name + "/rise", [&](TileType& t) {
    Frame fp = f.risen();
    set_face(t, opposite(f.u), glue("rr", f), 1);
    set_face(t, opposite(f.v), glue("v", f, "BRt"), 1);
    set_face(t, f.n(), glue("v", fp, sym_code(sym::BRc)), 1);
    set_face(t, f.u, glue("cbbr", f), 1);
  });
  get(name + "/fall", [&](TileType& t) {
    Frame fp = f.fallen();
    set_face(t, opposite(f.u), glue("qr", f), 1);
    set_face(t, opposite(f.v), glue("v", f, "BRt"), 1);
    set_face(t, opposite(f.n()), glue("v", fp, sym_code(sym::BRc)), 1);
    set_face(t, f.u, glue("cbbf", f), 1);
  });
  get(name + "/turn", [&](TileType& t) {  // immediate second right turn
    set_face(t, opposite(f.u), glue("tR", f), 1);
    set_face(t, opposite(f.v), glue("v", f, "BRt"), 1);
    set_face(t, f.v, glue("tmc", f, sym_code(sym::BRc)), 2);
  });
  // stop-case chain start doubling as the corner bridge
  get(ns_ + ch_ + "/cbst/" + f.code(), [&](TileType& t) {
    // sits at the corner: bonds the trigger above, feeds the plane chain.
    // Frame here is the turned frame; the old frame's chain glue is derived
    // by undoing the right turn (old v = +u').
    Frame old{f.v, opposite(f.u)};
    set_face(t, opposite(f.u), glue("cbsT", f), 2);
    set_face(t, opposite(old.v), glue("cbc", old), 1);
  });
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue("wr", f), 1);
    set_face(t, opposite(f.v), glue("v", f, "BRt"), 1);
    set_face(t, f.v, glue("v", f, sym_code(sym::BRc)), 1);
    set_face(t, f.u, glue("cbT", f), 1);
  });
}

// ---- callbacks -------------------------------------------------------------

TileId TapeEmitter::cb_start(const Frame& f) {
  std::string name = ns_ + ch_ + "/cbs/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue("cbs", f), 2);
    set_face(t, opposite(f.v), glue("cbc", f), 1);
  });
}

TileId TapeEmitter::cb_step(const Frame& f) {
  std::string name = ns_ + ch_ + "/cbw/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, f.v, glue("cbc", f), 1);
    set_face(t, opposite(f.u), glue("cb", f), 1);
    set_face(t, opposite(f.v), glue("cbc", f), 1);
  });
}

TileId TapeEmitter::cb_end(const Frame& f) {
  std::string name = ns_ + ch_ + "/cbe/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, f.v, glue("cbc", f), 1);
    set_face(t, opposite(f.u), glue("cbr", f), 1);
    Dir act = config.cbact_face == "right" ? f.u : opposite(f.v);
    set_face(t, act, glue("cbact", f), 2);
  });
}

TileId TapeEmitter::cb_bridge_lift(const Frame& f, bool rise) {
  // sits beside the rise/fall row, joining the lifted tape's chain to the
  // plane chain
  std::string name =
      ns_ + ch_ + "/cbl/" + f.code() + (rise ? "/r" : "/f");
  return get(name, [&](TileType& t) {
    Frame fp = rise ? f.risen() : f.fallen();
    Dir from = rise ? f.n() : opposite(f.n());
    set_face(t, from, glue("cbc", fp), 1);
    set_face(t, opposite(f.u), glue(rise ? "cbbr" : "cbbf", f), 1);
    set_face(t, opposite(f.v), glue("cbc", f), 1);
  });
}

TileId TapeEmitter::cb_bridge_turn(const Frame& f, bool right) {
  // right turns only: joins the turned tape's chain to the plane chain at
  // the square corner
  std::string name = ns_ + ch_ + "/cbt/" + f.code() + (right ? "/R" : "/L");
  return get(name, [&](TileType& t) {
    Frame fp = right ? f.turned_right() : f.turned_left();
    // the turned chain approaches along -v' ; its feed faces +u (old frame)
    set_face(t, f.u, glue("cbc", fp), 1);
    set_face(t, f.v, glue("cbT", fp), 1);
    set_face(t, opposite(f.v), glue("cbc", f), 1);
  });
}

// ---- genome band rows ------------------------------------------------------

// armer cells for rows whose right wave is not the plain w1
TileId TapeEmitter::row_arm(const Frame& f, int s, const std::string& w_in,
                            const std::string& w_out,
                            const std::string& extra_in,
                            const std::string& extra_out) {
  std::string name = ns_ + ch_ + "/ra2/" + f.code() + "/" + sym_code(s) +
                     "/" + w_in + (extra_in.empty() ? "" : ":" + extra_in);
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.u), glue(w_in, f, extra_in), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    if (s == sym::Wm) {
      set_face(t, f.v, glue("wra", f), 2);
    } else if (sym_arming(s)) {
      set_face(t, f.v, glue("a", f, sym_code(s)), 2);
    } else {
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    }
    set_face(t, f.u, glue(w_out, f, extra_out), 1);
  });
}

TileId TapeEmitter::wrap_leader(const Frame& f) {
  std::string name = ns_ + ch_ + "/wlr/" + f.code();
  return get(name, [&](TileType& t) {
    set_face(t, opposite(f.v), glue("wra", f), 2);
    set_face(t, f.v, glue("v", f, sym_code(sym::Wm)), 1);
    set_face(t, opposite(f.u), glue("wwl", f), 1);
    set_face(t, f.u, glue("wr", f), 1);  // payload fill continues
  });
}

TileId TapeEmitter::wrap_copy(const Frame& f, int s) {
  std::string name = ns_ + ch_ + "/wc/" + f.code() + "/" + sym_code(s);
  return get(name, [&](TileType& t) {
    set_face(t, f.u, glue("wwl", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    if (s == sym::Home) {
      set_face(t, f.v, glue("a", f, sym_code(s)), 2);  // re-arm the diagonal
    } else {
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    }
    if (s != sym::BL && s != sym::BLc) {
      set_face(t, opposite(f.u), glue("wwl", f), 1);
    }
  });
}

// query rows copy content and prime it toward the band's inward face
TileId TapeEmitter::query_copy(const Frame& f, int s, int dir, bool left) {
  std::string ds = std::to_string(dir);
  std::string name = ns_ + ch_ + "/qc/" + f.code() + "/" + sym_code(s) +
                     "/" + ds + (left ? "/L" : "/R");
  return get(name, [&](TileType& t) {
    if (left) {
      set_face(t, f.u, glue("yl", f, ds), 1);
      set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      if (s != sym::BL && s != sym::BLc) {
        set_face(t, opposite(f.u), glue("yl", f, ds), 1);
      }
      return;
    }
    // first right step arms the diagonal like w1
    // (handled by the caller passing the armer via arm-cell naming: the
    // plain right wave primes every cell)
    set_face(t, opposite(f.u), glue("yr", f, ds), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    set_face(t, f.n(), glue("pq", f, ds + ":" + sym_code(s)), 1);
    if (s != sym::BR && s != sym::BRc) set_face(t, f.u, glue("yr", f, ds), 1);
  });
}

TileId TapeEmitter::init_copy(const Frame& f, int s, bool left) {
  std::string name = ns_ + ch_ + "/ic/" + f.code() + "/" + sym_code(s) +
                     (left ? "/L" : "/R");
  return get(name, [&](TileType& t) {
    if (left) {
      set_face(t, f.u, glue("il", f), 1);
      set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      if (s != sym::BL && s != sym::BLc) {
        set_face(t, opposite(f.u), glue("il", f), 1);
      }
      return;
    }
    set_face(t, opposite(f.u), glue("ir", f), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    if (s == sym::Lg) {
      set_face(t, f.n(), glue("ia", f), 2);  // starts the lift wave
    } else {
      set_face(t, f.n(), glue("pi", f, sym_code(s)), 1);
    }
    if (s != sym::BR && s != sym::BRc) set_face(t, f.u, glue("ir", f), 1);
  });
}

TileId TapeEmitter::gate_copy(const Frame& f, int s, int gate, bool left) {
  std::string gs = std::to_string(gate);
  std::string name = ns_ + ch_ + "/gc/" + f.code() + "/" + sym_code(s) +
                     "/" + gs + (left ? "/L" : "/R");
  return get(name, [&](TileType& t) {
    if (left) {
      set_face(t, f.u, glue("gl", f, gs), 1);
      set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
      set_face(t, f.v, glue("v", f, sym_code(s)), 1);
      if (s != sym::BL && s != sym::BLc) {
        set_face(t, opposite(f.u), glue("gl", f, gs), 1);
      }
      return;
    }
    set_face(t, opposite(f.u), glue("gr", f, gs), 1);
    set_face(t, opposite(f.v), glue("v", f, sym_code(s)), 1);
    set_face(t, f.v, glue("v", f, sym_code(s)), 1);
    if (s == sym::Lg) {
      set_face(t, opposite(f.n()), glue("ga", f, gs), 2);  // auto-start
    } else {
      set_face(t, opposite(f.n()), glue("po", f, gs + ":" + sym_code(s)),
               1);
    }
    if (s != sym::BR && s != sym::BRc) set_face(t, f.u, glue("gr", f, gs), 1);
  });
}

TileId TapeEmitter::lift_start(const Frame& f, bool init_kind, int gate) {
  std::string name = ns_ + ch_ + (init_kind ? "/ls/i/" : "/ls/g/") +
                     f.code() + (init_kind ? "" : "/" + std::to_string(gate));
  return get(name, [&](TileType& t) {
    if (init_kind) {
      set_face(t, f.n(), glue("ia", f), 2);
      set_face(t, f.u, glue("lw", f, "pre"), 1);
    } else {
      set_face(t, opposite(f.n()), glue("ga", f, std::to_string(gate)), 2);
      set_face(t, f.u, glue("gw", f, std::to_string(gate) + ":pre"), 1);
    }
  });
}

// activation wave cells: reproduce the primed content as a fresh tape seed
// row on the inward (init/query) or outward (gate) side. The wave carries
// pre|arm|plain state; the seed arm is laid right after the lifted BL lane.
TileId TapeEmitter::lift_seed(const Frame& f, int s, bool init_kind,
                              int gate) {
  // wave states are resolved by the caller through distinct tiles
  throw std::logic_error("use lift_seed_state");
}

TileId TapeEmitter::gate_seed(const Frame& f, int s, int gate) {
  throw std::logic_error("use lift_seed_state");
}

TileId TapeEmitter::lift_seed_state(const Frame& f, int s, bool init_kind,
                                    int gate, int state_in) {
  // state_in: 0 = pre (seeking BL), 1 = arm-next, 2 = plain
  const std::string gs = std::to_string(gate);
  const std::string kind = init_kind ? "i" : "g" + gs;
  std::string name = ns_ + ch_ + "/lf/" + kind + "/" + f.code() + "/" +
                     sym_code(s) + "/" + std::to_string(state_in);
  return get(name, [&](TileType& t) {
    Dir prime_side = init_kind ? f.n() : opposite(f.n());
    Frame out{f.u, init_kind ? f.n() : opposite(f.n())};
    auto wave = [&](int st) {
      const char* names[3] = {"pre", "arm", "go"};
      return init_kind ? glue("lw", f, names[st])
                       : glue("gw", f, gs + ":" + names[st]);
    };
    set_face(t, opposite(f.u), wave(state_in), 1);
    set_face(t, opposite(prime_side),
             glue(init_kind ? "pi" : "po", f,
                  (init_kind ? sym_code(s) : gs + ":" + sym_code(s))),
             1);
    int state_out = state_in;
    if (state_in == 0) {
      if (s == sym::BL || s == sym::BLc) state_out = 1;
    } else if (state_in == 1) {
      state_out = 2;
    }
    // seed faces of the lifted tape
    if (state_in == 1 && sym_arming(s)) {
      set_face(t, prime_side, glue("a", out, sym_code(s)), 2);
    } else {
      set_face(t, prime_side, glue("v", out, sym_code(s)), 1);
    }
    bool stop = (s == sym::BR || s == sym::BRc) && state_in != 0;
    if (!stop) set_face(t, f.u, wave(state_out), 1);
  });
}

// ---- closure ---------------------------------------------------------------

void TapeEmitter::emit_closure(const std::vector<Frame>& frames,
                               const std::vector<int>& syms,
                               const std::vector<int>& place_ids) {
  std::vector<int> all_syms = syms;
  for (int p : place_ids) all_syms.push_back(sym::PlaceBase + p);
  for (const Frame& f : frames) {
    for (int s : all_syms) {
      if (sym_executable(s)) exec(f, s);
      arm_cell(f, s);
      wave_r(f, s);
      wave_l(f, s);
      stop_wave_l(f, s);
      if (s == sym::Ob0 || s == sym::Ob1) {
        dec_cell(f, s == sym::Ob1, true);
        dec_cell(f, s == sym::Ob1, false);
        ret_copy(f, s == sym::Ob1);
      }
      stop_wave(f, s);
      lift_arm(f, s, true);
      lift_arm(f, s, false);
      lift_copy(f, s, true, true);
      lift_copy(f, s, true, false);
      lift_copy(f, s, false, true);
      lift_copy(f, s, false, false);
      if (s != sym::Vp) var_arm_mark(f, s);
      var_copy(f, s, true);
      var_copy(f, s, false);
      rz_cell(f, s, false);
      rz_cell(f, s, true);
      for (bool right : {true, false}) {
        for (bool marked : {true, false}) {
          bool mirror_side_boundary =
              (right && (s == sym::BR || s == sym::BRc)) ||
              (!right && s == sym::BL);
          if (!mirror_side_boundary) {
            turn_copy(f, s, right, true, marked);
            pre_mirror(f, s, right, marked);
            mirror(f, s, right, marked);
          }
          turn_copy(f, s, right, false, marked);
          pass_copy(f, s, right, marked);
          eflow(f, s, right, true, marked);
          eflow(f, s, right, false, marked);
          eend(f, s, right, true, marked);
          eend(f, s, right, false, marked);
        }
      }
    }
    fwd_leader(f, true);
    dec_end(f, true);
    dec_end(f, false);
    ret_leader(f);
    ret_bounce(f);
    var_seek(f);
    var_post(f);
    rz_bl(f);
    rz_payload(f, 0, false);
    rz_payload(f, 1, false);
    turn_edge_seed(f, true, sym::BR, false);
    turn_edge_seed(f, true, sym::BR, true);
    turn_edge_seed(f, true, sym::BRc, false);
    turn_edge_seed(f, true, sym::BRc, true);
    turn_edge_seed(f, false, sym::BL, false);
    mirror_corner(f, true, sym::BR);
    mirror_corner(f, true, sym::BRc);
    mirror_corner(f, false, sym::BL);
    turn_exit_boundary(f);
    cb_bridge_turn(f, true);
    cb_start(f);
    cb_step(f);
    cb_end(f);
    cb_start_l(f);
    cb_step_l(f);
    cb_end_l(f);
    cb_bridge_lift(f, true);
    cb_bridge_lift(f, false);
    for (int p : place_ids) {
      place_m1(f, p);
      place_m2(f, p);
      place_p1(f, p);
      place_p2(f, p);
    }
  }
}

}  // namespace tas
