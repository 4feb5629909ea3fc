#pragma once

#include <cstdint>
#include <vector>

#include "tas/core/assembly.hpp"
#include "tas/core/system.hpp"

namespace tas {

// True iff an empty face-adjacent path exists from `location` (which must be
// empty) to any cell outside the assembly's minimal bounding box. Fresh
// search every call; the oracle definition.
bool has_diffusion_path(const Assembly& a, const Coord& location,
                        int dimension);

// Incremental blocked-region index bound to one evolving assembly.
// Blocked-ness is monotone under attachment, so discovered blocked regions
// are cached by label; open cells are re-searched (best-first toward the
// bounding box) on demand.
class DiffusionIndex {
 public:
  explicit DiffusionIndex(int dimension) : dimension_(dimension) {}

  // Empty `location` reachable to outside bbox through empty cells?
  bool open(const Assembly& a, const Coord& location);
  bool blocked(const Assembly& a, const Coord& location) {
    return !open(a, location);
  }

  // Notify that `c` was just filled.
  void on_attach(const Coord& c);

 private:
  int dimension_;
  CellMap blocked_;  // packed coord -> region id (cells known blocked)
  int32_t next_region_ = 1;
};

// frontier() filtered to locations with a diffusion path. Requires
// sys.diffusion != none to have any filtering effect.
std::vector<std::pair<Coord, TileId>> restricted_frontier(
    const TileSystem& sys, const Assembly& a);

struct ConstrainedRegion {
  std::vector<Coord> region;                  // blocked empty cells
  std::vector<Coord> constraining_subassembly;  // tiles, sorted
};

// Maximal blocked empty components together with their constraining
// subassemblies (the tiles whose single removal unblocks or extends the
// region; exactly the face-adjacent tiles).
std::vector<ConstrainedRegion> constrained_regions(const Assembly& a,
                                                   int dimension);

}  // namespace tas
