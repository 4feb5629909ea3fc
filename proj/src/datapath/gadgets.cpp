#include "tas/datapath/gadgets.hpp"

#include <unordered_map>

namespace tas {

namespace {

// instance-scoped glue helper (positional labels are fine inside one gadget)
GlueId ig(TileSystem& sys, const std::string& instance,
          const std::string& label) {
  return sys.glues.intern(instance + "#" + label);
}

class InstanceTiles {
 public:
  InstanceTiles(TileSystem& sys, std::string instance)
      : sys_(sys), instance_(std::move(instance)) {}

  TileId get(const std::string& name,
             const std::function<void(TileType&)>& build) {
    auto it = memo_.find(name);
    if (it != memo_.end()) return it->second;
    TileType t;
    t.name = instance_ + "/" + name;
    build(t);
    TileId id = sys_.tiles.add(std::move(t));
    memo_.emplace(name, id);
    return id;
  }

  GlueId glue(const std::string& label) { return ig(sys_, instance_, label); }

 private:
  TileSystem& sys_;
  std::string instance_;
  std::unordered_map<std::string, TileId> memo_;
};

}  // namespace

LatchGadget emit_latch(TapeEmitter& em, const std::string& instance,
                       Dir direction, const Coord& origin) {
  InstanceTiles it(em.system(), instance);
  Dir fwd = direction;
  Dir up = (direction == Dir::U || direction == Dir::D) ? Dir::E : Dir::U;
  LatchGadget g;
  Coord a = origin;            // allowed-side anchor
  Coord p = neighbor(a, fwd);  // pre-latch
  Coord gg = neighbor(p, up);
  Coord kk = neighbor(gg, fwd);
  Coord l = neighbor(p, fwd);  // latch cell
  g.pre_latch_cell = p;
  g.latch_cell = l;
  g.full_cells = {p, gg, kk, l};

  TileId anchor = it.get("A", [&](TileType& t) {
    t.glue(fwd) = Glue{it.glue("lp"), 2};
  });
  it.get("P", [&](TileType& t) {
    t.glue(opposite(fwd)) = Glue{it.glue("lp"), 2};
    t.glue(fwd) = Glue{it.glue("pl"), 1};
    t.glue(up) = Glue{it.glue("pg"), 2};
  });
  it.get("G", [&](TileType& t) {
    t.glue(opposite(up)) = Glue{it.glue("pg"), 2};
    t.glue(fwd) = Glue{it.glue("gk"), 2};
  });
  it.get("K", [&](TileType& t) {
    t.glue(opposite(fwd)) = Glue{it.glue("gk"), 2};
    t.glue(opposite(up)) = Glue{it.glue("kl"), 1};
  });
  it.get("L", [&](TileType& t) {
    t.glue(opposite(fwd)) = Glue{it.glue("pl"), 1};
    t.glue(up) = Glue{it.glue("kl"), 1};
    t.glue(fwd) = Glue{it.glue("lout"), 2};
  });
  TileId f0 = it.get("F0", [&](TileType& t) {
    t.glue(opposite(fwd)) = Glue{it.glue("f01"), 2};
  });
  it.get("F1", [&](TileType& t) {
    t.glue(fwd) = Glue{it.glue("f01"), 2};
    t.glue(opposite(fwd)) = Glue{it.glue("lout"), 2};
  });
  g.allowed_feed = {{a, anchor}};
  g.prevented_feed = {{neighbor(neighbor(l, fwd), fwd), f0}};
  return g;
}

CircularLatchGadget emit_circular_latch(TapeEmitter& em,
                                        const std::string& instance,
                                        int length, const Coord& origin) {
  if (length < 2) throw InvalidOperand("circular latch length");
  InstanceTiles it(em.system(), instance);
  CircularLatchGadget g;
  // Lower lane grows east only (preferred); the raised lane grows west only
  // (non-preferred route). Each end's terminal cell triggers the other lane,
  // so both planes always complete with identical placements.
  for (int i = 0; i < length; ++i) {
    Coord lo = origin + Coord{i, 0, 0};
    Coord hi = origin + Coord{i, 0, 1};
    g.segment_cells.push_back(lo);
    g.segment_cells.push_back(hi);
    it.get("L" + std::to_string(i), [&](TileType& t) {
      t.glue(Dir::W) = Glue{it.glue("cl" + std::to_string(i)), 2};
      if (i + 1 < length) {
        t.glue(Dir::E) = Glue{it.glue("cl" + std::to_string(i + 1)), 2};
      } else {
        t.glue(Dir::U) = Glue{it.glue("lu"), 2};  // trigger the upper lane
      }
      if (i == 0) t.glue(Dir::U) = Glue{it.glue("ul"), 2};
    });
    it.get("U" + std::to_string(i), [&](TileType& t) {
      t.glue(Dir::E) = Glue{it.glue("cu" + std::to_string(i)), 2};
      if (i > 0) {
        t.glue(Dir::W) = Glue{it.glue("cu" + std::to_string(i - 1)), 2};
      } else {
        t.glue(Dir::D) = Glue{it.glue("ul"), 2};  // trigger the lower lane
      }
      if (i == length - 1) t.glue(Dir::D) = Glue{it.glue("lu"), 2};
    });
  }
  TileId pf = it.get("PF", [&](TileType& t) {
    t.glue(Dir::E) = Glue{it.glue("cl0"), 2};
  });
  TileId nf = it.get("NF", [&](TileType& t) {
    t.glue(Dir::W) = Glue{it.glue("cu" + std::to_string(length - 1)), 2};
  });
  g.preferred_feed = {{origin + Coord{-1, 0, 0}, pf}};
  g.non_preferred_feed = {{origin + Coord{length, 0, 1}, nf}};
  return g;
}

namespace {

// Shared builder for decrementer layer tiles. A counter row spans two
// lattice rows: a west-to-east decrement pass and an east-to-west return
// pass. The return pass exposes signals upward and reloads on zero.
struct CounterBuild {
  InstanceTiles& it;
  int bits;
  int layer;
  bool bound;          // bottom layer: halts instead of reloading
  bool top;            // exposes the external signal glues
  int reload_value;    // stored value after reset (period-1 / total-1)
  const std::vector<GlueId>* ext_zero;  // external zero glues by layer index
  GlueId sig_cont_ext;
  int nlayers;

  std::string ls() const { return std::to_string(layer); }

  GlueId G(const std::string& s) { return it.glue(s); }

  void build_all() {
    // seed row cells are built by the caller (needs coordinates)
    // dec-pass west edge
    it.get("dw" + ls(), [&](TileType& t) {
      if (bound) {
        t.glue(Dir::S) = Glue{G("go" + ls()), 2};
      } else {
        t.glue(Dir::S) = Glue{G("we" + ls()), 1};
        t.glue(Dir::D) = Glue{G(layer == 1 ? "lk0" : "lk" +
                                std::to_string(layer - 1)),
                              1};
      }
      t.glue(Dir::N) = Glue{G("we" + ls()), 1};
      t.glue(Dir::U) = Glue{G("lk" + ls()), 1};
      t.glue(Dir::E) = Glue{G("rb" + ls()), 1};
    });
    // dec-pass bit cells
    for (int lane = 1; lane <= bits; ++lane) {
      for (int bit = 0; bit <= 1; ++bit) {
        for (int borrow = 0; borrow <= 1; ++borrow) {
          int out = borrow ? 1 - bit : bit;
          bool borrow_out = borrow && bit == 0;
          it.get("d" + ls() + "/" + std::to_string(lane) + "/" +
                     std::to_string(bit) + (borrow ? "B" : "C"),
                 [&](TileType& t) {
                   t.glue(Dir::W) =
                       Glue{G((borrow ? "rb" : "rc") + ls()), 1};
                   t.glue(Dir::S) = Glue{vglue(lane, bit), 1};
                   t.glue(Dir::N) = Glue{uglue(lane, out), 1};
                   t.glue(Dir::E) =
                       Glue{G((borrow_out ? "rb" : "rc") + ls()), 1};
                 });
        }
      }
    }
    // dec-pass east edge -> return seed
    for (int zero = 0; zero <= 1; ++zero) {
      it.get(std::string("de") + ls() + (zero ? "Z" : "C"), [&](TileType& t) {
        t.glue(Dir::W) = Glue{G((zero ? "rb" : "rc") + ls()), 1};
        t.glue(Dir::S) = Glue{G("ee" + ls()), 1};
        if (bound) {
          t.glue(Dir::N) = Glue{G(std::string("re") + ls() +
                                  (zero ? "Z" : "C")),
                                2};
        } else {
          t.glue(Dir::N) = Glue{G(std::string("re") + ls() +
                                  (zero ? "Z" : "C")),
                                1};
        }
      });
    }
    // return-pass east edge: resolves own outcome with the signal below
    for (int zero = 0; zero <= 1; ++zero) {
      if (bound) {
        it.get(std::string("re") + ls() + (zero ? "Z" : "C"),
               [&](TileType& t) {
                 t.glue(Dir::S) = Glue{G(std::string("re") + ls() +
                                         (zero ? "Z" : "C")),
                                       2};
                 t.glue(Dir::N) = Glue{G("ee" + ls()), 1};
                 t.glue(Dir::W) = Glue{wave(zero, -1), 1};
                 t.glue(Dir::U) = Glue{G(std::string("sge") + ls() +
                                         (zero ? "Z" : "C")),
                                       1};
               });
        continue;
      }
      for (int below = -2; below < nlayers - 1; ++below) {
        // below = resolved signal from the layer underneath
        if (!valid_below(below)) continue;
        int resolved = below >= 0 ? below : (zero ? layer_signal() : -1);
        it.get(std::string("re") + ls() + (zero ? "Z" : "C") + "/b" +
                   std::to_string(below),
               [&](TileType& t) {
                 t.glue(Dir::S) = Glue{G(std::string("re") + ls() +
                                         (zero ? "Z" : "C")),
                                       1};
                 t.glue(Dir::D) = Glue{below_glue(below), 1};
                 t.glue(Dir::N) = Glue{G("ee" + ls()), 1};
                 t.glue(Dir::W) = Glue{wave(zero, resolved), 1};
                 t.glue(Dir::U) = exposed_raw(resolved);
               });
      }
    }
    // return-pass bit cells
    for (int zero = 0; zero <= 1; ++zero) {
      for (int sig = -1; sig < nlayers - 1; ++sig) {
        if (!wave_exists(zero, sig)) continue;
        for (int lane = 1; lane <= bits; ++lane) {
          for (int bit = 0; bit <= 1; ++bit) {
            int out = zero ? ((reload_value >> (lane - 1)) & 1) : bit;
            it.get("r" + ls() + (zero ? "Z" : "C") + "/" +
                       std::to_string(sig) + "/" + std::to_string(lane) +
                       "/" + std::to_string(bit),
                   [&](TileType& t) {
                     t.glue(Dir::E) = Glue{wave(zero, sig), 1};
                     t.glue(Dir::S) = Glue{uglue(lane, bit), 1};
                     t.glue(Dir::N) = Glue{vglue(lane, out), 1};
                     t.glue(Dir::W) = Glue{wave(zero, sig), 1};
                     t.glue(Dir::U) = exposed_raw(sig);
                   });
          }
        }
        // return-pass west edge
        it.get("rw" + ls() + (zero ? "Z" : "C") + "/" + std::to_string(sig),
               [&](TileType& t) {
                 t.glue(Dir::E) = Glue{wave(zero, sig), 1};
                 t.glue(Dir::S) = Glue{G("we" + ls()), 1};
                 if (bound) {
                   if (!zero) t.glue(Dir::N) = Glue{G("go" + ls()), 2};
                   // bound layer zero: no next row, the stack halts
                 } else {
                   t.glue(Dir::N) = Glue{G("we" + ls()), 1};
                 }
                 t.glue(Dir::U) = exposed_raw(sig);
               });
      }
    }
  }

  bool valid_below(int below) const {
    // -2 encodes the bound layer's final row; periodic layers below expose
    // -1 (continue) or a zero index < layer-1
    if (layer == 1) return below == -1 || below == -2;
    return below == -1 || (below >= 0 && below < layer - 1);
  }

  int layer_signal() const { return layer - 1; }  // periodic layer index

  GlueId below_glue(int below) {
    if (layer == 1) {
      return G(std::string("sge0") + (below == -2 ? "Z" : "C"));
    }
    return G("sg" + std::to_string(layer - 1) + ":" + std::to_string(below));
  }

  Glue exposed_raw(int sig) {
    if (top) {
      return Glue{sig >= 0 ? (*ext_zero)[sig] : sig_cont_ext, 1};
    }
    return Glue{G("sg" + ls() + ":" + std::to_string(sig)), 1};
  }

  bool wave_exists(int zero, int sig) const {
    if (bound) return sig == -1;
    (void)zero;
    return sig == -1 || (sig >= 0 && sig <= layer - 1);
  }

  GlueId wave(int zero, int sig) {
    if (bound) return G(std::string("rwv") + ls() + (zero ? "Z" : "C"));
    return G(std::string("rwv") + ls() + (zero ? "Z" : "C") + ":" +
             std::to_string(sig));
  }

  GlueId vglue(int lane, int bit) {
    return G("dv" + ls() + ":" + std::to_string(lane) + ":" +
             std::to_string(bit));
  }
  GlueId uglue(int lane, int bit) {
    return G("du" + ls() + ":" + std::to_string(lane) + ":" +
             std::to_string(bit));
  }
};

}  // namespace

PeriodicCounterGadget emit_periodic_counter(TapeEmitter& em,
                                            const std::string& instance,
                                            const std::vector<int>& periods,
                                            int total, const Coord& origin) {
  if (total < 1) throw InvalidOperand("total");
  for (int p : periods) {
    if (p < 1 || p > total) throw InvalidOperand("period");
  }
  TileSystem& sys = em.system();
  InstanceTiles it(sys, instance);
  PeriodicCounterGadget g;
  g.base = origin;
  g.layers = static_cast<int>(periods.size()) + 1;
  int bits = 1;
  while ((1 << bits) <= total) ++bits;
  g.width = bits + 2;
  g.continue_glue = it.glue("EXT:c");
  g.zero_glues.assign(std::max(1, g.layers - 1), kNullGlue);
  for (size_t i = 0; i < g.zero_glues.size(); ++i) {
    g.zero_glues[i] = it.glue("EXT:z" + std::to_string(i));
  }

  for (int layer = 0; layer < g.layers; ++layer) {
    CounterBuild cb{it,
                    bits,
                    layer,
                    layer == 0,
                    layer == g.layers - 1,
                    (layer == 0 ? total : periods[layer - 1]) - 1,
                    &g.zero_glues,
                    g.continue_glue,
                    g.layers};
    cb.build_all();
    // seed row: holds the initial value (start-1) and launches row 1
    int start_value = (layer == 0 ? total : periods[layer - 1]) - 1;
    for (int lane = 0; lane < g.width; ++lane) {
      std::string nm =
          "seed" + std::to_string(layer) + "/" + std::to_string(lane);
      TileId id = it.get(nm, [&](TileType& t) {
        if (lane > 0) {
          t.glue(Dir::W) = Glue{it.glue("sd" + std::to_string(layer) + ":" +
                                        std::to_string(lane)),
                                2};
        }
        if (lane + 1 < g.width) {
          t.glue(Dir::E) = Glue{it.glue("sd" + std::to_string(layer) + ":" +
                                        std::to_string(lane + 1)),
                                2};
        }
        if (layer + 1 < g.layers) {
          t.glue(Dir::U) = Glue{it.glue("sv:" + std::to_string(layer) + ":" +
                                        std::to_string(lane)),
                                2};
        }
        if (layer > 0) {
          t.glue(Dir::D) = Glue{it.glue("sv:" + std::to_string(layer - 1) +
                                        ":" + std::to_string(lane)),
                                2};
        }
        std::string ls = std::to_string(layer);
        if (lane == 0) {
          if (layer == 0) {
            t.glue(Dir::N) = Glue{it.glue("go" + ls), 2};
          } else {
            t.glue(Dir::N) = Glue{it.glue("we" + ls), 1};
          }
        } else if (lane == g.width - 1) {
          t.glue(Dir::N) = Glue{it.glue("ee" + ls), 1};
        } else {
          int b = (start_value >> (lane - 1)) & 1;
          t.glue(Dir::N) = Glue{it.glue("dv" + ls + ":" +
                                        std::to_string(lane) + ":" +
                                        std::to_string(b)),
                                1};
        }
      });
      g.seed.emplace_back(origin + Coord{lane, 0, layer}, id);
    }
  }
  return g;
}

Coord PeriodicCounterGadget::signal_cell(int row) const {
  // LSB lane of the return pass of counter row `row`, top layer
  return base + Coord{1, 2 * row, layers - 1};
}

GuideRailGadget emit_guide_rail(TapeEmitter& em, const std::string& instance,
                                const std::vector<int>& payload, int limit,
                                const Coord& origin, const Frame& frame) {
  if (payload.empty()) throw InvalidOperand("payload width");
  TileSystem& sys = em.system();
  InstanceTiles it(sys, instance);
  GuideRailGadget g;
  g.payload = payload;
  g.limit = limit;
  g.frame = frame;
  g.pump_base = origin;
  const Dir fwd = frame.v, east = frame.u, up = frame.n();

  if (limit < 0) {
    // interior pump: same glue fore and aft (the pumping pattern); the seed
    // uses a rooted variant so the rail cannot extend backward
    it.get("pump", [&](TileType& t) {
      t.glue(opposite(fwd)) = Glue{it.glue("gp"), 2};
      t.glue(fwd) = Glue{it.glue("gp"), 2};
      t.glue(east) = Glue{it.glue("gw"), 1};
    });
    TileId root = it.get("pumpRoot", [&](TileType& t) {
      t.glue(fwd) = Glue{it.glue("gp"), 2};
      t.glue(east) = Glue{it.glue("gw"), 1};
    });
    g.seed.emplace_back(origin, root);
  } else {
    for (int i = 0; i < limit; ++i) {
      TileId pump = it.get("pump" + std::to_string(i), [&](TileType& t) {
        t.glue(opposite(fwd)) = Glue{it.glue("gp" + std::to_string(i)), 2};
        if (i + 1 < limit) {
          t.glue(fwd) = Glue{it.glue("gp" + std::to_string(i + 1)), 2};
        }
        t.glue(east) = Glue{it.glue("gw"), 1};
      });
      if (i == 0) g.seed.emplace_back(origin, pump);
    }
  }
  for (size_t j = 0; j < payload.size(); ++j) {
    int b = payload[j];
    TileId pt = it.get("pay" + std::to_string(j), [&](TileType& t) {
      t.glue(opposite(east)) = Glue{it.glue("gw"), 1};
      t.glue(opposite(fwd)) =
          Glue{it.glue("gv" + std::to_string(j) + ":" + std::to_string(b)),
               1};
      t.glue(fwd) =
          Glue{it.glue("gv" + std::to_string(j) + ":" + std::to_string(b)),
               1};
      t.glue(east) = Glue{it.glue("gw"), 1};
      t.glue(up) = Glue{it.glue("read:" + std::to_string(b)), 1};
    });
    g.seed.emplace_back(origin + dir_step(east).scaled(1 + j), pt);
  }
  return g;
}

TileId rail_stopper(TapeEmitter& em, const std::string& instance) {
  InstanceTiles it(em.system(), instance);
  return it.get("stopper", [](TileType&) {});
}

GadgetTiles wire_callback(TapeEmitter& em, DatapathProgram program,
                          BoundaryKind kind, const Coord& origin,
                          const Frame& frame) {
  bool has_var = false;
  bool has_stop = false;
  bool bent = false;
  for (const Instruction& i : program.instructions) {
    if (i.op == Op::Variable) has_var = true;
    if (i.op == Op::Stop) has_stop = true;
    if (i.op == Op::Left || i.op == Op::Right || i.op == Op::Rise ||
        i.op == Op::Fall) {
      bent = true;
    }
  }
  if (kind == BoundaryKind::RightVariableCallback && !has_var) {
    throw BoundaryNotCallbackCapable();
  }
  if (kind == BoundaryKind::LeftCallback && (!has_stop || bent)) {
    // the left-side chain has no bend bridges
    throw BoundaryNotCallbackCapable();
  }
  if (kind == BoundaryKind::Plain) throw BoundaryNotCallbackCapable();
  program.boundary = kind;
  return assemble_datapath(em, program, origin, frame);
}

TileId callback_receiver(TapeEmitter& em, const Frame& frame, bool left) {
  TileSystem& sys = em.system();
  std::string name =
      std::string("recv/") + (left ? "L/" : "R/") + frame.code();
  TileType t;
  t.name = name;
  t.glue(frame.v) =
      Glue{sys.glues.intern(em.glue_name(left ? "cbactL" : "cbact", frame)),
           2};
  return sys.tiles.add(std::move(t));
}

}  // namespace tas
