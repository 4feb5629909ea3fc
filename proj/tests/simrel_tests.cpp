#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "tas/simrel/verify.hpp"

using namespace tas;
using namespace tas::test;

namespace {

// Simulated system: seed A, one tile B attaching east with a strength-2
// glue. Directed, terminal after one attachment.
TileSystem make_simulated_ab() {
  SystemBuilder b(2, 2);
  b.tile("A", {{Dir::E, "x", 2}});
  b.tile("B", {{Dir::W, "x", 2}});
  b.seed_at({0, 0, 0}, 0);
  return std::move(b.sys);
}

struct Scale2Fixture {
  TileSystem simulator;
  MacrotileCodec codec = MacrotileCodec::table(2, 2, 2);
  TileId a00, a01, a10, a11, b00, b01, b10, b11;

  // window_local: cell read by the generated codec
  explicit Scale2Fixture(Coord window_local = {1, 1, 0}) {
    SystemBuilder s(2, 2);
    a00 = s.tile("a00", {});
    a01 = s.tile("a01", {});
    a10 = s.tile("a10", {{Dir::E, "s0", 2}});
    a11 = s.tile("a11", {});
    b00 = s.tile("b00", {{Dir::W, "s0", 2}, {Dir::E, "s1", 2}});
    b10 = s.tile("b10", {{Dir::W, "s1", 2}, {Dir::N, "s2", 2}});
    b11 = s.tile("b11", {{Dir::S, "s2", 2}, {Dir::W, "s3", 2}});
    b01 = s.tile("b01", {{Dir::E, "s3", 2}});
    s.seed_at({0, 0, 0}, a00);
    s.seed_at({0, 1, 0}, a01);
    s.seed_at({1, 0, 0}, a10);
    s.seed_at({1, 1, 0}, a11);
    simulator = std::move(s.sys);
    codec = MacrotileCodec::generated(2, 2, 2, {window_local});
    codec.set_bit_tile(a11, 0);
    codec.set_bit_tile(b11, 1);
    // corner tiles double as zero bits; only a shifted window reads them
    codec.set_bit_tile(a00, 0);
    codec.set_bit_tile(b00, 0);
  }
};

}  // namespace

TEST_CASE("extract_block: offsets and contents") {
  Assembly a(3);
  a.place({0, 0, 0}, 3);
  a.place({2, 0, 0}, 4);
  CHECK(extract_block(a, 2, {0, 0, 0}) ==
        BlockContent{{Coord{0, 0, 0}, 3}});
  CHECK(extract_block(a, 2, {1, 0, 0}) ==
        BlockContent{{Coord{0, 0, 0}, 4}});
  CHECK(extract_block(a, 2, {0, 1, 0}).empty());
  // full window of one type
  Assembly full(3);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) full.place({x, y, z}, 1);
  CHECK(extract_block(full, 2, {0, 0, 0}).size() == 8);
  // negative block coordinates round toward -inf
  Assembly neg(3);
  neg.place({-1, -1, 0}, 5);
  auto blocks = all_blocks(neg, 2);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].first == Coord{-1, -1, 0});
  CHECK(blocks[0].second == BlockContent{{Coord{1, 1, 0}, 5}});
}

TEST_CASE("generated codec: bit window decoding") {
  MacrotileCodec codec = MacrotileCodec::generated(
      2, 4, 2, {Coord{0, 0, 0}, Coord{0, 1, 0}});
  codec.set_bit_tile(10, 0);
  codec.set_bit_tile(11, 1);
  Assembly a(2);
  a.place({0, 0, 0}, 11);  // bit0 = 1
  a.place({0, 1, 0}, 11);  // bit1 = 1
  CHECK(decode_star(codec, a).at({0, 0, 0}) == 3);
  Assembly partial(2);
  partial.place({0, 0, 0}, 11);
  CHECK(decode_star(codec, partial).size() == 0);
  // non-bit tile in the window never decodes
  Assembly bad(2);
  bad.place({0, 0, 0}, 11);
  bad.place({0, 1, 0}, 5);
  CHECK(decode_star(codec, bad).size() == 0);
}

TEST_CASE("codec validity: generated windows are monotone by construction") {
  Scale2Fixture fx;
  RunOptions opt;
  opt.seed = 3;
  RunResult res = run(fx.simulator, opt);
  Simulation sim(fx.simulator, opt);
  sim.run();
  CHECK(sample_codec_validity(fx.codec, sim.assembly(), 1000, 9) == 0);
}

TEST_CASE("clean mapping: exact cover, stray tile, diagonal fuzz") {
  MacrotileCodec codec = MacrotileCodec::identity(3, 2);
  Assembly exact(2);
  exact.place({0, 0, 0}, 0);
  exact.place({1, 0, 0}, 1);
  CHECK(check_clean_mapping(codec, exact).clean());

  // identity codec at m=1: a tile id outside [0,3) decodes to... identity
  // table only maps known ids; use a 2-block-distant stray of unknown id
  MacrotileCodec c2 = MacrotileCodec::identity(1, 2);
  Assembly stray(2);
  stray.place({0, 0, 0}, 0);
  stray.place({3, 0, 0}, 7);  // decodes empty, two blocks away
  auto rep = check_clean_mapping(c2, stray);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].first == Coord{3, 0, 0});
  CHECK(rep.violations[0].second == FuzzKind::IsolatedFuzz);

  Assembly diag(2);
  diag.place({0, 0, 0}, 0);
  diag.place({1, 1, 0}, 7);
  auto rep2 = check_clean_mapping(c2, diag);
  REQUIRE(rep2.violations.size() == 1);
  CHECK(rep2.violations[0].second == FuzzKind::DiagonalFuzz);

  // legal fuzz: face-adjacent undecoded block
  Assembly legal(2);
  legal.place({0, 0, 0}, 0);
  legal.place({1, 0, 0}, 7);
  CHECK(check_clean_mapping(c2, legal).clean());
}

TEST_CASE("verify: identity simulation is green") {
  TileSystem t = make_simulated_ab();
  MacrotileCodec codec = MacrotileCodec::identity(2, 2);
  auto rep = verify_simulation(t, t, codec, 6, 6);
  CHECK(rep.ok());
  CHECK_FALSE(rep.at_depth_only);  // finite system, exploration exhausts

  auto f = verify_follows(t, t, codec, 6);
  CHECK(f.ok);
  auto m = verify_models(t, t, codec, 6, 6);
  CHECK(m.ok);
}

TEST_CASE("verify: identity simulation of a random system stays ok") {
  for (uint64_t seed : {3u, 9u}) {
    TileSystem t = random_system(seed, 3);
    MacrotileCodec codec =
        MacrotileCodec::identity(static_cast<int>(t.tiles.size()),
                                 t.dimension);
    auto rep = verify_simulation(t, t, codec, 3, 3, 20'000);
    CHECK(rep.clean_ok);
    CHECK(rep.follows_ok);
    CHECK(rep.models_ok);
  }
}

TEST_CASE("verify: scale-2 fixture simulates at depth") {
  Scale2Fixture fx;
  TileSystem t = make_simulated_ab();
  auto rep = verify_simulation(fx.simulator, t, fx.codec, 8, 6);
  CHECK(rep.ok());
  CHECK_FALSE(rep.at_depth_only);
  auto f = verify_follows(fx.simulator, t, fx.codec, 8);
  CHECK(f.ok);
  auto m = verify_models(fx.simulator, t, fx.codec, 8, 6);
  CHECK(m.ok);
}

TEST_CASE("verify: shifted bit window breaks the simulation") {
  // Shifting the window one cell makes the B macrotile read its corner
  // tile as a zero bit, decoding to a second A that is not attachable.
  Scale2Fixture fx({0, 0, 0});
  TileSystem t = make_simulated_ab();
  auto rep = verify_simulation(fx.simulator, t, fx.codec, 8, 6);
  CHECK_FALSE(rep.ok());
  auto f = verify_follows(fx.simulator, t, fx.codec, 8);
  CHECK_FALSE(f.ok);
  REQUIRE(f.witness.has_value());

  // shifting onto a non-bit cell instead kills the decode entirely, which
  // surfaces as a production/models failure rather than a follows one
  Scale2Fixture dead({1, 0, 0});
  auto rep2 = verify_simulation(dead.simulator, t, dead.codec, 8, 6);
  CHECK_FALSE(rep2.ok());
  CHECK_FALSE(rep2.productions_ok);
}

TEST_CASE("verify: unreachable successor pattern is a models violation") {
  Scale2Fixture fx;
  TileSystem t = make_simulated_ab();
  // remove the enabling simulator tile type: b00 loses its attachment glue
  TileSystem crippled;
  crippled.dimension = fx.simulator.dimension;
  crippled.temperature = fx.simulator.temperature;
  crippled.seed = fx.simulator.seed;
  for (const TileType& tt : fx.simulator.tiles.tiles()) {
    TileType copy = tt;
    if (copy.name == "b00") copy.glue(Dir::W) = Glue{};
    crippled.tiles.add(std::move(copy));
  }
  auto m = verify_models(crippled, t, fx.codec, 8, 6);
  CHECK_FALSE(m.ok);
  REQUIRE(m.witness.has_value());
  CHECK(m.witness->what.find("models") == 0);
  auto rep = verify_simulation(crippled, t, fx.codec, 8, 6);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("verify: growth two blocks beyond decoded region is fuzz") {
  Scale2Fixture fx;
  // add a pumping arm leaving the B macrotile eastward
  TileSystem extended;
  extended.dimension = fx.simulator.dimension;
  extended.temperature = fx.simulator.temperature;
  extended.seed = fx.simulator.seed;
  for (const TileType& tt : fx.simulator.tiles.tiles()) {
    TileType copy = tt;
    if (copy.name == "b10") copy.glue(Dir::E) = Glue{
        extended.glues.intern("fz"), 2};
    extended.tiles.add(std::move(copy));
  }
  TileType fz;
  fz.name = "fz";
  fz.glue(Dir::W) = Glue{extended.glues.intern("fz"), 2};
  fz.glue(Dir::E) = Glue{extended.glues.intern("fz2"), 2};
  extended.tiles.add(std::move(fz));
  TileType fz2;
  fz2.name = "fz2";
  fz2.glue(Dir::W) = Glue{extended.glues.intern("fz2"), 2};
  extended.tiles.add(std::move(fz2));

  TileSystem t = make_simulated_ab();
  auto rep = verify_simulation(extended, t, fx.codec, 10, 6);
  CHECK_FALSE(rep.clean_ok);
  CHECK_FALSE(rep.ok());
  REQUIRE_FALSE(rep.fuzz.empty());
}

TEST_CASE("verify: binding case matrix fixtures all pass") {
  // Single- and multi-sided binding scenarios, each verified as its own
  // identity simulation.
  std::vector<TileSystem> cases;

  {  // single bond, no other neighbors
    SystemBuilder b(2, 2);
    b.tile("s", {{Dir::E, "a", 2}});
    b.tile("t", {{Dir::W, "a", 2}});
    b.seed_at({0, 0, 0}, 0);
    cases.push_back(std::move(b.sys));
  }
  {  // multiple neighbors, single type
    SystemBuilder b(2, 2);
    b.tile("s", {{Dir::E, "a", 2}, {Dir::N, "b", 2}});
    b.tile("e", {{Dir::W, "a", 2}, {Dir::N, "c", 1}});
    b.tile("n", {{Dir::S, "b", 2}, {Dir::E, "d", 1}});
    b.tile("t", {{Dir::W, "d", 1}, {Dir::S, "c", 1}});
    b.seed_at({0, 0, 0}, 0);
    cases.push_back(std::move(b.sys));
  }
  {  // multiple attachments of one type (several sufficient glue subsets)
    SystemBuilder b(2, 2);
    b.tile("s", {{Dir::E, "a", 2}, {Dir::N, "b", 2}});
    b.tile("e", {{Dir::W, "a", 2}, {Dir::N, "c", 2}});
    b.tile("n", {{Dir::S, "b", 2}, {Dir::E, "d", 2}});
    b.tile("t", {{Dir::W, "d", 2}, {Dir::S, "c", 2}});
    b.seed_at({0, 0, 0}, 0);
    cases.push_back(std::move(b.sys));
  }
  {  // multiple tile types compete for one location
    SystemBuilder b(2, 2);
    b.tile("s", {{Dir::E, "a", 2}});
    b.tile("u", {{Dir::W, "a", 2}});
    b.tile("v", {{Dir::W, "a", 2}});
    b.seed_at({0, 0, 0}, 0);
    cases.push_back(std::move(b.sys));
  }
  {  // cooperative binding, single type single subset
    SystemBuilder b(2, 2);
    b.tile("s", {{Dir::E, "a", 2}, {Dir::N, "b", 2}});
    b.tile("e", {{Dir::W, "a", 2}, {Dir::N, "c", 1}});
    b.tile("n", {{Dir::S, "b", 2}, {Dir::E, "d", 1}});
    b.tile("t", {{Dir::W, "d", 1}, {Dir::S, "c", 1}});
    b.seed_at({0, 0, 0}, 0);
    cases.push_back(std::move(b.sys));
  }
  {  // cooperative with extra unhelpful neighbors
    SystemBuilder b(2, 2);
    b.tile("s", {{Dir::E, "a", 2}, {Dir::N, "b", 2}, {Dir::W, "w", 2}});
    b.tile("e", {{Dir::W, "a", 2}, {Dir::N, "c", 1}});
    b.tile("n", {{Dir::S, "b", 2}, {Dir::E, "d", 1}});
    b.tile("w", {{Dir::E, "w", 2}});
    b.tile("t", {{Dir::W, "d", 1}, {Dir::S, "c", 1}});
    b.seed_at({0, 0, 0}, 0);
    cases.push_back(std::move(b.sys));
  }
  {  // cooperative, multiple sufficient subsets
    SystemBuilder b(3, 2);
    b.tile("s", {{Dir::E, "a", 2}, {Dir::N, "b", 2}, {Dir::U, "u", 2}});
    b.tile("e", {{Dir::W, "a", 2}, {Dir::N, "c", 1}});
    b.tile("n", {{Dir::S, "b", 2}, {Dir::E, "d", 1}});
    b.tile("up", {{Dir::D, "u", 2}, {Dir::N, "g", 1}});
    b.tile("t", {{Dir::W, "d", 1}, {Dir::S, "c", 1}});
    b.seed_at({0, 0, 0}, 0);
    cases.push_back(std::move(b.sys));
  }
  {  // cooperative, multiple competing types
    SystemBuilder b(2, 2);
    b.tile("s", {{Dir::E, "a", 2}, {Dir::N, "b", 2}});
    b.tile("e", {{Dir::W, "a", 2}, {Dir::N, "c", 1}});
    b.tile("n", {{Dir::S, "b", 2}, {Dir::E, "d", 1}});
    b.tile("t1", {{Dir::W, "d", 1}, {Dir::S, "c", 1}});
    b.tile("t2", {{Dir::W, "d", 1}, {Dir::S, "c", 1}});
    b.seed_at({0, 0, 0}, 0);
    cases.push_back(std::move(b.sys));
  }

  for (auto& sys : cases) {
    MacrotileCodec codec = MacrotileCodec::identity(
        static_cast<int>(sys.tiles.size()), sys.dimension);
    auto rep = verify_simulation(sys, sys, codec, 5, 5, 50'000);
    CHECK(rep.clean_ok);
    CHECK(rep.follows_ok);
    CHECK(rep.models_ok);
    CHECK(rep.productions_ok);
  }
}
