#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <utility>
#include <vector>

#include "tas/core/geometry.hpp"
#include "tas/core/tileset.hpp"

namespace tas {

// Map from packed coordinate to tile id, stored as 4x4x4 dense chunks
// indexed by an open-addressing table. Insert-only (the aTAM never
// detaches). Chunking buys spatial locality: neighbor lookups during
// frontier updates usually hit the chunk just touched.
class CellMap {
 public:
  static constexpr uint64_t kEmptyKey = ~uint64_t{0};
  static constexpr uint64_t kOffMask = (3ULL << 42) | (3ULL << 21) | 3ULL;

  CellMap() { rehash(16); }

  void clear() {
    pool_.clear();
    size_ = 0;
    rehash(16);
  }

  size_t size() const { return size_; }

  TileId find(uint64_t key) const {
    const uint64_t ck = key & ~kOffMask;
    size_t i = slot(ck);
    while (true) {
      if (ckeys_[i] == ck) return pool_[(static_cast<size_t>(cidx_[i]) << 6) + offset(key)];
      if (ckeys_[i] == kEmptyKey) return kNoTile;
      i = (i + 1) & mask_;
    }
  }

  bool contains(uint64_t key) const { return find(key) != kNoTile; }

  // Returns false if the key was already present.
  bool insert(uint64_t key, TileId v) {
    const uint64_t ck = key & ~kOffMask;
    if ((nchunks_ + 1) * 5 >= ckeys_.size() * 4) grow();
    size_t i = slot(ck);
    while (true) {
      if (ckeys_[i] == ck) break;
      if (ckeys_[i] == kEmptyKey) {
        ckeys_[i] = ck;
        cidx_[i] = static_cast<uint32_t>(nchunks_++);
        pool_.resize(pool_.size() + 64, kNoTile);
        break;
      }
      i = (i + 1) & mask_;
    }
    int32_t& cell = pool_[(static_cast<size_t>(cidx_[i]) << 6) + offset(key)];
    if (cell != kNoTile) return false;
    cell = v;
    ++size_;
    return true;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (size_t i = 0; i < ckeys_.size(); ++i) {
      if (ckeys_[i] == kEmptyKey) continue;
      const size_t base = static_cast<size_t>(cidx_[i]) << 6;
      for (int off = 0; off < 64; ++off) {
        if (pool_[base + off] != kNoTile) {
          fn(ckeys_[i] | spread(off), pool_[base + off]);
        }
      }
    }
  }

  void reserve(size_t n) {
    // assume sheet-like occupancy: ~16 cells per touched chunk
    size_t chunks = n / 12 + 16;
    size_t cap = 16;
    while (cap * 4 < chunks * 5) cap <<= 1;
    if (cap > ckeys_.size()) rehash_moving(cap);
    pool_.reserve(chunks * 64);
  }

 private:
  static int offset(uint64_t key) {
    return static_cast<int>((((key >> 42) & 3) << 4) |
                            (((key >> 21) & 3) << 2) | (key & 3));
  }
  static uint64_t spread(int off) {
    return ((static_cast<uint64_t>(off) >> 4 & 3) << 42) |
           ((static_cast<uint64_t>(off) >> 2 & 3) << 21) |
           (static_cast<uint64_t>(off) & 3);
  }

  size_t slot(uint64_t ck) const { return splitmix64(ck) & mask_; }

  void rehash(size_t cap) {
    nchunks_ = 0;
    mask_ = cap - 1;
    ckeys_.assign(cap, kEmptyKey);
    cidx_.assign(cap, 0);
  }

  void rehash_moving(size_t cap) {
    std::vector<uint64_t> old_keys = std::move(ckeys_);
    std::vector<uint32_t> old_idx = std::move(cidx_);
    mask_ = cap - 1;
    ckeys_.assign(cap, kEmptyKey);
    cidx_.assign(cap, 0);
    for (size_t i = 0; i < old_keys.size(); ++i) {
      if (old_keys[i] != kEmptyKey) {
        size_t j = slot(old_keys[i]);
        while (ckeys_[j] != kEmptyKey) j = (j + 1) & mask_;
        ckeys_[j] = old_keys[i];
        cidx_[j] = old_idx[i];
      }
    }
  }

  void grow() { rehash_moving(ckeys_.size() * 2); }

  std::vector<uint64_t> ckeys_;
  std::vector<uint32_t> cidx_;
  std::vector<int32_t> pool_;
  size_t nchunks_ = 0;
  size_t mask_ = 0;
  size_t size_ = 0;
};

// Sparse placement of tile type ids on Z^d. d<3 systems keep unused axes at
// zero. The bounding box grows incrementally; bond strengths are derived
// from neighbors on demand (decoding them from scratch is the spot check).
class Assembly {
 public:
  explicit Assembly(int dimension = 3) : dimension_(dimension) {}

  int dimension() const { return dimension_; }
  size_t size() const { return cells_.size(); }
  const Aabb& bbox() const { return bbox_; }

  TileId at(const Coord& c) const { return cells_.find(pack_coord(c)); }
  TileId at_key(uint64_t key) const { return cells_.find(key); }
  bool occupied(const Coord& c) const { return at(c) != kNoTile; }

  // Returns false if the location was already occupied.
  bool place(const Coord& c, TileId t) {
    if (!cells_.insert(pack_coord(c), t)) return false;
    bbox_.include(c);
    return true;
  }

  void reserve(size_t n) { cells_.reserve(n); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    cells_.for_each([&](uint64_t k, TileId v) { fn(unpack_coord(k), v); });
  }

  std::vector<std::pair<Coord, TileId>> sorted_placements() const {
    std::vector<std::pair<Coord, TileId>> out;
    out.reserve(size());
    for_each([&](const Coord& c, TileId t) { out.emplace_back(c, t); });
    std::sort(out.begin(), out.end());
    return out;
  }

  // Order-independent digest of the placement set.
  uint64_t placement_hash() const {
    uint64_t h = 0;
    cells_.for_each([&](uint64_t k, TileId v) {
      h += splitmix64(k ^ (static_cast<uint64_t>(v) << 44) ^
                      0xa5a5a5a5a5a5a5a5ULL);
    });
    return h;
  }

  // Sum of matched incident glue strengths if tile t were at (or is at) c.
  int bound_strength(const TileSet& ts, const Coord& c, TileId t) const {
    return bound_strength_key(ts, pack_coord(c), t);
  }

  int bound_strength_key(const TileSet& ts, uint64_t key, TileId t) const {
    int s = 0;
    const TileType& tt = ts.tile(t);
    for (Dir d : kAllDirs) {
      const Glue& mine = tt.glue(d);
      if (mine.label == kNullGlue || mine.strength <= 0) continue;
      TileId nb = cells_.find(packed_neighbor(key, d));
      if (nb == kNoTile) continue;
      const Glue& theirs = ts.tile(nb).glue(opposite(d));
      if (mine.label == theirs.label && mine.strength == theirs.strength) {
        s += mine.strength;
      }
    }
    return s;
  }

  bool connected() const;

 private:
  int dimension_;
  CellMap cells_;
  Aabb bbox_;
};

}  // namespace tas
