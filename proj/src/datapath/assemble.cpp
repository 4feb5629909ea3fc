#include "tas/datapath/assemble.hpp"

namespace tas {

GadgetTiles assemble_datapath(TapeEmitter& em, const DatapathProgram& program,
                              const Coord& origin, const Frame& frame) {
  GadgetTiles g;
  try {
    g.shape = program_shape(program);
  } catch (const std::invalid_argument& e) {
    throw InvalidOperand(e.what());
  }
  if (g.shape.width > kMaxProgramWidth) throw ProgramTooWide(g.shape.width);
  g.frame = frame;
  g.origin = origin;
  int arm_lane = 1;
  em.lay_seed_row(g.shape.lane_syms, frame, origin, arm_lane, g.seed);
  PoseTrace t = PoseInterpreter::trace(program, origin, frame);
  g.predicted = t.pose;
  g.expected_tiles = t.expected_tiles;
  g.pair_cells = t.pair_cells;
  return g;
}

GrowResult grow_isolated(TileSystem& workspace,
                         const std::vector<std::pair<Coord, TileId>>& seed,
                         int64_t max_steps, uint64_t rng_seed,
                         bool allow_partial) {
  workspace.temperature = 2;
  workspace.dimension = 3;
  workspace.seed = Assembly(3);
  for (auto& [c, t] : seed) workspace.seed.place(c, t);
  RunOptions opt;
  opt.seed = rng_seed;
  opt.max_steps = max_steps;
  opt.record_events = false;
  Simulation sim(workspace, opt);
  RunResult res = sim.run();
  if (!res.terminal && !allow_partial) throw DidNotTerminate(res.steps);
  GrowResult out;
  out.assembly = sim.assembly();
  out.steps = res.steps;
  out.terminal = res.terminal;
  return out;
}

}  // namespace tas
