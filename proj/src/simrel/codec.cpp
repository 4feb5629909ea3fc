#include "tas/simrel/codec.hpp"

#include <algorithm>
#include <map>

namespace tas {

BlockContent extract_block(const Assembly& a, int m, const Coord& block) {
  BlockContent out;
  const Coord base = block.scaled(m);
  // scan the window; for big m prefer scanning placements when sparse
  const int64_t volume =
      static_cast<int64_t>(m) * m * (a.dimension() == 2 ? 1 : m);
  if (volume <= 4096) {
    const int zmax = a.dimension() == 2 ? 1 : m;
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        for (int z = 0; z < zmax; ++z) {
          Coord c = base + Coord{x, y, z};
          TileId t = a.at(c);
          if (t != kNoTile) out.emplace_back(Coord{x, y, z}, t);
        }
      }
    }
  } else {
    a.for_each([&](const Coord& c, TileId t) {
      Coord rel = c - base;
      if (rel.x >= 0 && rel.x < m && rel.y >= 0 && rel.y < m && rel.z >= 0 &&
          rel.z < m) {
        out.emplace_back(rel, t);
      }
    });
    std::sort(out.begin(), out.end());
  }
  return out;
}

std::vector<std::pair<Coord, BlockContent>> all_blocks(const Assembly& a,
                                                       int m) {
  std::map<Coord, BlockContent> blocks;
  a.for_each([&](const Coord& c, TileId t) {
    Coord b{floor_div(c.x, m), floor_div(c.y, m), floor_div(c.z, m)};
    blocks[b].emplace_back(c - b.scaled(m), t);
  });
  std::vector<std::pair<Coord, BlockContent>> out;
  out.reserve(blocks.size());
  for (auto& [b, content] : blocks) {
    std::sort(content.begin(), content.end());
    out.emplace_back(b, std::move(content));
  }
  return out;
}

MacrotileCodec MacrotileCodec::identity(int target_tiles, int dimension) {
  MacrotileCodec c;
  c.kind_ = Kind::Table;
  c.m_ = 1;
  c.target_tiles_ = target_tiles;
  c.dimension_ = dimension;
  for (TileId t = 0; t < target_tiles; ++t) {
    c.table_[BlockContent{{Coord{0, 0, 0}, t}}] = t;
  }
  return c;
}

MacrotileCodec MacrotileCodec::table(int m, int target_tiles, int dimension) {
  MacrotileCodec c;
  c.kind_ = Kind::Table;
  c.m_ = m;
  c.target_tiles_ = target_tiles;
  c.dimension_ = dimension;
  return c;
}

MacrotileCodec MacrotileCodec::generated(int m, int target_tiles,
                                         int dimension,
                                         std::vector<Coord> bit_window) {
  MacrotileCodec c;
  c.kind_ = Kind::Generated;
  c.m_ = m;
  c.target_tiles_ = target_tiles;
  c.dimension_ = dimension;
  c.bit_window_ = std::move(bit_window);
  return c;
}

void MacrotileCodec::add_table_entry(const BlockContent& content,
                                     TileId target) {
  table_[content] = target;
}

void MacrotileCodec::set_bit_tile(TileId simulator_tile, int bit) {
  bit_of_[simulator_tile] = bit;
}

std::optional<TileId> MacrotileCodec::decode(const BlockContent& content) const {
  if (content.empty()) return std::nullopt;
  if (kind_ == Kind::Table) {
    auto it = table_.find(content);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  // Generated: all window cells must hold bit tiles spelling a valid id.
  int64_t id = 0;
  std::map<Coord, TileId> cells(content.begin(), content.end());
  for (size_t i = 0; i < bit_window_.size(); ++i) {
    auto it = cells.find(bit_window_[i]);
    if (it == cells.end()) return std::nullopt;
    auto bit = bit_of_.find(it->second);
    if (bit == bit_of_.end()) return std::nullopt;
    id |= static_cast<int64_t>(bit->second) << i;
  }
  if (id >= target_tiles_) return std::nullopt;
  return static_cast<TileId>(id);
}

std::optional<TileId> MacrotileCodec::decode_block(const Assembly& a,
                                                   const Coord& block) const {
  if (kind_ == Kind::Generated) {
    // window-only read; no need to materialize the block
    int64_t id = 0;
    const Coord base = block.scaled(m_);
    for (size_t i = 0; i < bit_window_.size(); ++i) {
      TileId t = a.at(base + bit_window_[i]);
      if (t == kNoTile) return std::nullopt;
      auto bit = bit_of_.find(t);
      if (bit == bit_of_.end()) return std::nullopt;
      id |= static_cast<int64_t>(bit->second) << i;
    }
    if (id >= target_tiles_) return std::nullopt;
    return static_cast<TileId>(id);
  }
  return decode(extract_block(a, m_, block));
}

Assembly decode_star(const MacrotileCodec& codec, const Assembly& a) {
  Assembly out(codec.dimension());
  if (codec.kind() == MacrotileCodec::Kind::Generated) {
    // only blocks containing a window cell can decode; visit candidates
    std::map<Coord, bool> candidates;
    a.for_each([&](const Coord& c, TileId t) {
      if (!codec.is_bit_tile(t)) return;
      Coord b{floor_div(c.x, codec.m()), floor_div(c.y, codec.m()),
              floor_div(c.z, codec.m())};
      candidates.emplace(b, true);
    });
    for (auto& [b, unused] : candidates) {
      auto t = codec.decode_block(a, b);
      if (t) out.place(b, *t);
    }
    return out;
  }
  for (auto& [b, content] : all_blocks(a, codec.m())) {
    auto t = codec.decode(content);
    if (t) out.place(b, *t);
  }
  return out;
}

FuzzReport check_clean_mapping(const MacrotileCodec& codec,
                               const Assembly& a) {
  FuzzReport report;
  auto blocks = all_blocks(a, codec.m());
  if (blocks.size() <= 1) return report;  // lone-block exception
  std::map<Coord, bool> decoded;  // block -> decodes to a tile
  for (auto& [b, content] : blocks) {
    decoded[b] = codec.decode(content).has_value();
  }
  for (auto& [b, content] : blocks) {
    if (decoded[b]) continue;
    bool face = false, diag = false;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          auto it = decoded.find(b + Coord{dx, dy, dz});
          if (it == decoded.end() || !it->second) continue;
          if (std::abs(dx) + std::abs(dy) + std::abs(dz) == 1) {
            face = true;
          } else {
            diag = true;
          }
        }
      }
    }
    if (face) continue;  // legal fuzz
    report.violations.emplace_back(
        b, diag ? FuzzKind::DiagonalFuzz : FuzzKind::IsolatedFuzz);
  }
  return report;
}

uint64_t MacrotileCodec::digest() const {
  uint64_t h = splitmix64(static_cast<uint64_t>(m_) * 31 + target_tiles_ +
                          (kind_ == Kind::Generated ? 7 : 0));
  for (const Coord& c : bit_window_) h = splitmix64(h ^ pack_coord(c));
  std::map<TileId, int> ordered_bits(bit_of_.begin(), bit_of_.end());
  for (auto& [t, bit] : ordered_bits) {
    h = splitmix64(h ^ (static_cast<uint64_t>(t) << 8) ^ bit);
  }
  for (auto& [content, target] : table_) {
    uint64_t ch = static_cast<uint64_t>(target) + 1;
    for (auto& [c, t] : content) {
      ch = splitmix64(ch ^ pack_coord(c) ^ (static_cast<uint64_t>(t) << 32));
    }
    h = splitmix64(h ^ ch);
  }
  return h;
}

int sample_codec_validity(const MacrotileCodec& codec, const Assembly& a,
                          int samples, uint64_t seed) {
  auto blocks = all_blocks(a, codec.m());
  if (blocks.empty()) return 0;
  uint64_t s = seed;
  auto rnd = [&](uint64_t mod) {
    s = splitmix64(s);
    return s % mod;
  };
  int violations = 0;
  for (int i = 0; i < samples; ++i) {
    const BlockContent& full = blocks[rnd(blocks.size())].second;
    if (full.empty()) continue;
    // random subset of the block as the sub-assembly
    BlockContent sub;
    for (auto& cell : full) {
      if (rnd(2)) sub.push_back(cell);
    }
    auto rs = codec.decode(sub);
    if (rs.has_value()) {
      auto rf = codec.decode(full);
      if (!rf.has_value() || *rf != *rs) ++violations;
    }
  }
  return violations;
}

}  // namespace tas
