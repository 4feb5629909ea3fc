#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tas/core/assembly.hpp"
#include "tas/core/system.hpp"

namespace tas {

// Content of one m-block macrotile window, in block-local coordinates,
// sorted. Empty vector = empty block.
using BlockContent = std::vector<std::pair<Coord, TileId>>;

inline int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

BlockContent extract_block(const Assembly& a, int m, const Coord& block);

// The representation function R plus its R* lift. Two kinds:
//  - Table: explicit map from exact block content to a simulated tile.
//  - Generated: bit-window read (the IU compiler's codec): the block decodes
//    to the id spelled by dedicated bit tiles at fixed in-block coordinates,
//    and to empty space if any window cell is vacant or undecodable.
class MacrotileCodec {
 public:
  enum class Kind { Table, Generated };

  static MacrotileCodec identity(int target_tiles, int dimension);
  static MacrotileCodec table(int m, int target_tiles, int dimension);
  static MacrotileCodec generated(int m, int target_tiles, int dimension,
                                  std::vector<Coord> bit_window);

  Kind kind() const { return kind_; }
  int m() const { return m_; }
  int target_tiles() const { return target_tiles_; }
  int dimension() const { return dimension_; }
  const std::vector<Coord>& bit_window() const { return bit_window_; }

  void add_table_entry(const BlockContent& content, TileId target);
  // simulator tile -> bit value it spells in the window
  void set_bit_tile(TileId simulator_tile, int bit);
  bool is_bit_tile(TileId simulator_tile) const {
    return bit_of_.count(simulator_tile) > 0;
  }

  // R: nullopt = empty space.
  std::optional<TileId> decode(const BlockContent& content) const;
  std::optional<TileId> decode_block(const Assembly& a,
                                     const Coord& block) const;

  // identifying digest for file round trips
  uint64_t digest() const;

  // fields used by io round trips
  const std::map<BlockContent, TileId>& table_entries() const {
    return table_;
  }
  const std::unordered_map<TileId, int>& bit_tiles() const { return bit_of_; }

 private:
  Kind kind_ = Kind::Table;
  int m_ = 1;
  int target_tiles_ = 0;
  int dimension_ = 3;
  std::vector<Coord> bit_window_;  // index i spells bit i (LSB first)
  std::unordered_map<TileId, int> bit_of_;
  std::map<BlockContent, TileId> table_;
};

// R*: apply R to every non-empty block. The result may be an arbitrary
// configuration (possibly empty or disconnected); connectivity is the
// caller's question.
Assembly decode_star(const MacrotileCodec& codec, const Assembly& a);

// Non-empty blocks of `a` grouped by block coordinate.
std::vector<std::pair<Coord, BlockContent>> all_blocks(const Assembly& a,
                                                       int m);

enum class FuzzKind { IsolatedFuzz, DiagonalFuzz };

struct FuzzReport {
  std::vector<std::pair<Coord, FuzzKind>> violations;  // macrotile coords
  bool clean() const { return violations.empty(); }
};

FuzzReport check_clean_mapping(const MacrotileCodec& codec,
                               const Assembly& a);

// Validity sampling for a codec: no monotonicity violation R(a) != R(b) for
// a ⊑ b across `samples` random block/superblock pairs drawn from blocks of
// the given assembly. Returns number of violations.
int sample_codec_validity(const MacrotileCodec& codec, const Assembly& a,
                          int samples, uint64_t seed);

}  // namespace tas
