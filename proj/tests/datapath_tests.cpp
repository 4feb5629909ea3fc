#include <iostream>
#include <set>

#include "doctest.h"
#include "datapath_helpers.hpp"
#include "tas/datapath/assemble.hpp"

using namespace tas;

namespace {

struct Kit {
  TileSystem ws;
  TapeEmitter em;

  Kit() : em(ws, "g!", "dp") {
    ws.dimension = 3;
    ws.temperature = 2;
    em.emit_closure(Frame::all(),
                    {sym::BL, sym::BR, sym::BRc, sym::Buf, sym::Bit0,
                     sym::Bit1, sym::Fwd, sym::Ob0, sym::Ob1, sym::Fend,
                     sym::TurnL, sym::TurnR, sym::Rise, sym::Fall, sym::Var,
                     sym::Vp, sym::Stop},
                    {});
  }
};

void dump(const TileSystem& ws, const Assembly& a) {
  for (auto& [c, t] : a.sorted_placements()) {
    std::cout << "(" << c.x << "," << c.y << "," << c.z << ") "
              << ws.tiles.tile(t).name << "\n";
  }
}

// grown tape must exactly match the interpreter: tile count, terminality,
// pose cell empty, payload row readable
void check_growth(Kit& kit, const DatapathProgram& p, uint64_t seed = 7) {
  GadgetTiles g = assemble_datapath(kit.em, p, {0, 0, 0});
  GrowResult r = grow_isolated(kit.ws, g.seed, 4'000'000, seed);
  CHECK(r.terminal);
  if (static_cast<int64_t>(r.assembly.size()) != g.expected_tiles) {
    dump(kit.ws, r.assembly);
  }
  REQUIRE(static_cast<int64_t>(r.assembly.size()) == g.expected_tiles);
  CHECK_FALSE(r.assembly.occupied(g.predicted.at));
  for (const Coord& pc : g.pair_cells) CHECK(r.assembly.occupied(pc));
}

}  // namespace

TEST_CASE("datapath: [stop] lays three tiles and grows nothing") {
  Kit kit;
  DatapathProgram p;
  p.instructions = {Instruction::stop()};
  GadgetTiles g = assemble_datapath(kit.em, p);
  CHECK(g.seed.size() == 3);
  CHECK(g.expected_tiles == 3);
  CHECK(g.predicted.at == Coord{1, 1, 0});
  GrowResult r = grow_isolated(kit.ws, g.seed, 1000);
  CHECK(r.terminal);
  CHECK(r.assembly.size() == 3);
}

TEST_CASE("datapath: buffers advance one row each") {
  Kit kit;
  DatapathProgram p;
  p.instructions = {Instruction::buffer(), Instruction::buffer(),
                    Instruction::buffer(), Instruction::stop()};
  check_growth(kit, p);
}

TEST_CASE("datapath: forward(c) spans exactly 2c+1 rows") {
  for (int c = 1; c <= 6; ++c) {
    Kit kit;
    DatapathProgram p;
    p.instructions = {Instruction::forward(c), Instruction::stop()};
    GadgetTiles g = assemble_datapath(kit.em, p);
    GrowResult r = grow_isolated(kit.ws, g.seed, 100000);
    CHECK(r.terminal);
    REQUIRE(static_cast<int64_t>(r.assembly.size()) == g.expected_tiles);
    // last grown row at y = 2c+1; nothing beyond
    int rows = 2 * c + 1;
    CHECK(r.assembly.occupied({0, rows, 0}));
    CHECK_FALSE(r.assembly.occupied({0, rows + 1, 0}));
    for (int x = 0; x < g.shape.width; ++x) {
      CHECK_FALSE(r.assembly.occupied({x, rows + 1, 0}));
    }
  }
}

TEST_CASE("datapath: payload rides to the terminal row") {
  Kit kit;
  DatapathProgram p;
  p.instructions = {Instruction::forward(2), Instruction::stop()};
  p.payload = {1, 0, 1, 1};
  check_growth(kit, p);
}

TEST_CASE("datapath: rise and fall change planes") {
  Kit kit;
  DatapathProgram p;
  p.instructions = {Instruction::buffer(), Instruction::rise(),
                    Instruction::buffer(), Instruction::fall(),
                    Instruction::buffer(), Instruction::stop()};
  check_growth(kit, p);
}

TEST_CASE("datapath: right turn square") {
  Kit kit;
  DatapathProgram p;
  p.instructions = {Instruction::forward(1), Instruction::right(),
                    Instruction::forward(1), Instruction::stop()};
  check_growth(kit, p);
}

TEST_CASE("datapath: left turn square") {
  Kit kit;
  DatapathProgram p;
  p.instructions = {Instruction::forward(1), Instruction::left(),
                    Instruction::forward(1), Instruction::stop()};
  check_growth(kit, p);
}

TEST_CASE("datapath: spec pose example forward-right-forward") {
  Kit kit;
  DatapathProgram p;
  p.instructions = {Instruction::forward(2), Instruction::right(),
                    Instruction::forward(2), Instruction::stop()};
  GadgetTiles g = assemble_datapath(kit.em, p);
  // heading rotated right
  CHECK(g.predicted.frame.v == Dir::E);
  check_growth(kit, p);
}

TEST_CASE("datapath: variable stalls, rail injects, execution resumes") {
  Kit kit;
  DatapathProgram p;
  p.instructions = {Instruction::buffer(), Instruction::variable(2),
                    Instruction::buffer(), Instruction::stop()};
  GadgetTiles g = assemble_datapath(kit.em, p);
  REQUIRE(g.shape.width == 8);

  // without input the tape stalls at the variable row
  GrowResult stalled = grow_isolated(kit.ws, g.seed, 100000);
  CHECK(stalled.terminal);
  CHECK(static_cast<int64_t>(stalled.assembly.size()) == g.expected_tiles);
  CHECK(g.predicted.stalled);
  CHECK(stalled.assembly.occupied(g.predicted.at));  // the boundary post

  // injection rail: descending curtain, payload bits over the Vp lanes
  DatapathProgram railp;
  railp.instructions = {Instruction::forward(2), Instruction::stop()};
  railp.payload = {1, 0};
  Frame rail_frame{Dir::E, Dir::D};
  // payload lanes sit at width-3 and width-2; align them over x = 3,4
  int rw = program_width(railp);
  Coord rail_origin{3 - (rw - 3), 3, 6};
  GadgetTiles rail =
      assemble_datapath(kit.em, railp, rail_origin, rail_frame);

  std::vector<std::pair<Coord, TileId>> seed = g.seed;
  seed.insert(seed.end(), rail.seed.begin(), rail.seed.end());
  GrowResult done = grow_isolated(kit.ws, seed, 200000);
  CHECK(done.terminal);
  PoseTrace resumed = PoseInterpreter::trace(p, {0, 0, 0},
                                             Frame{Dir::E, Dir::N}, true);
  int64_t expect = resumed.expected_tiles + rail.expected_tiles;
  if (static_cast<int64_t>(done.assembly.size()) != expect) {
    dump(kit.ws, done.assembly);
  }
  CHECK(static_cast<int64_t>(done.assembly.size()) == expect);
  // injected bits now ride the tape: resume row carries 1 at x=3, 0 at x=4
  // and the post-resume rows copied them forward
  CHECK(done.assembly.occupied({3, 3, 0}));
  CHECK(done.assembly.occupied({4, 3, 0}));
}

TEST_CASE("datapath: 500 random programs match the interpreter") {
  uint64_t s = 12345;
  auto rnd = [&](uint64_t mod) {
    s = splitmix64(s);
    return s % mod;
  };
  for (int iter = 0; iter < 500; ++iter) {
    Kit kit;
    DatapathProgram p;
    int n = 1 + static_cast<int>(rnd(12));
    for (int i = 0; i < n; ++i) {
      switch (rnd(6)) {
        case 0: p.instructions.push_back(Instruction::buffer()); break;
        case 1:
          p.instructions.push_back(
              Instruction::forward(1 + static_cast<int>(rnd(8))));
          break;
        case 2: p.instructions.push_back(Instruction::left()); break;
        case 3: p.instructions.push_back(Instruction::right()); break;
        case 4: p.instructions.push_back(Instruction::rise()); break;
        case 5: p.instructions.push_back(Instruction::fall()); break;
      }
    }
    int w = static_cast<int>(rnd(4));
    for (int i = 0; i < w; ++i) p.payload.push_back(rnd(2));
    p.instructions.push_back(Instruction::stop());
    // the ISA contract covers self-avoiding paths only
    if (!testutil::self_avoiding(p, {0, 0, 0}, Frame{Dir::E, Dir::N})) {
      continue;
    }
    check_growth(kit, p, 1000 + iter);
  }
}
