#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>

namespace tas {

// Canonical direction order. This order defines glue array slots for all
// dimensions and the bit order of adder component addressing.
enum class Dir : uint8_t { N = 0, E = 1, S = 2, W = 3, U = 4, D = 5 };

inline constexpr std::array<Dir, 6> kAllDirs = {Dir::N, Dir::E, Dir::S,
                                                Dir::W, Dir::U, Dir::D};

inline constexpr Dir opposite(Dir d) {
  switch (d) {
    case Dir::N: return Dir::S;
    case Dir::E: return Dir::W;
    case Dir::S: return Dir::N;
    case Dir::W: return Dir::E;
    case Dir::U: return Dir::D;
    case Dir::D: return Dir::U;
  }
  return Dir::N;
}

inline const char* dir_name(Dir d) {
  static const char* names[6] = {"N", "E", "S", "W", "U", "D"};
  return names[static_cast<int>(d)];
}

struct Coord {
  int64_t x = 0, y = 0, z = 0;

  friend constexpr bool operator==(const Coord& a, const Coord& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend constexpr bool operator!=(const Coord& a, const Coord& b) {
    return !(a == b);
  }
  friend constexpr bool operator<(const Coord& a, const Coord& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
  friend constexpr Coord operator+(const Coord& a, const Coord& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Coord operator-(const Coord& a, const Coord& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  constexpr Coord scaled(int64_t k) const { return {x * k, y * k, z * k}; }
};

inline constexpr Coord dir_step(Dir d) {
  switch (d) {
    case Dir::N: return {0, 1, 0};
    case Dir::E: return {1, 0, 0};
    case Dir::S: return {0, -1, 0};
    case Dir::W: return {-1, 0, 0};
    case Dir::U: return {0, 0, 1};
    case Dir::D: return {0, 0, -1};
  }
  return {0, 0, 0};
}

inline constexpr Coord neighbor(const Coord& c, Dir d) {
  return c + dir_step(d);
}

// Coordinates are packed into one 64-bit key for the hot maps. 21 bits per
// axis limits each axis to [-2^20, 2^20); large enough for every workload
// here (macrotiles stay well under a million cells per axis).
inline constexpr int64_t kCoordLimit = (int64_t{1} << 20);

inline uint64_t pack_coord(const Coord& c) {
  // one-cell margin so packed neighbor steps never cross a bit field
  if (c.x <= -kCoordLimit + 1 || c.x >= kCoordLimit - 1 ||
      c.y <= -kCoordLimit + 1 || c.y >= kCoordLimit - 1 ||
      c.z <= -kCoordLimit + 1 || c.z >= kCoordLimit - 1) {
    std::abort();
  }
  const uint64_t ux = static_cast<uint64_t>(c.x + kCoordLimit);
  const uint64_t uy = static_cast<uint64_t>(c.y + kCoordLimit);
  const uint64_t uz = static_cast<uint64_t>(c.z + kCoordLimit);
  return (ux << 42) | (uy << 21) | uz;
}

// Packed-space neighbor stepping. Safe for keys whose coordinates stay a
// step inside the packing range (pack_coord enforces the margin).
inline constexpr uint64_t kPackStep[6] = {
    1ULL << 21,  // N: +y
    1ULL << 42,  // E: +x
    1ULL << 21,  // S: -y
    1ULL << 42,  // W: -x
    1ULL,        // U: +z
    1ULL,        // D: -z
};

inline uint64_t packed_neighbor(uint64_t key, Dir d) {
  const int i = static_cast<int>(d);
  return (i == 0 || i == 1 || i == 4) ? key + kPackStep[i]
                                      : key - kPackStep[i];
}

inline Coord unpack_coord(uint64_t k) {
  const int64_t x = static_cast<int64_t>((k >> 42) & 0x1FFFFF) - kCoordLimit;
  const int64_t y = static_cast<int64_t>((k >> 21) & 0x1FFFFF) - kCoordLimit;
  const int64_t z = static_cast<int64_t>(k & 0x1FFFFF) - kCoordLimit;
  return {x, y, z};
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Aabb {
  Coord lo{0, 0, 0};
  Coord hi{0, 0, 0};  // inclusive
  bool empty = true;

  void include(const Coord& c) {
    if (empty) {
      lo = hi = c;
      empty = false;
      return;
    }
    if (c.x < lo.x) lo.x = c.x;
    if (c.y < lo.y) lo.y = c.y;
    if (c.z < lo.z) lo.z = c.z;
    if (c.x > hi.x) hi.x = c.x;
    if (c.y > hi.y) hi.y = c.y;
    if (c.z > hi.z) hi.z = c.z;
  }
  bool contains(const Coord& c) const {
    if (empty) return false;
    return c.x >= lo.x && c.x <= hi.x && c.y >= lo.y && c.y <= hi.y &&
           c.z >= lo.z && c.z <= hi.z;
  }
};

}  // namespace tas
