#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "tas/core/assembly.hpp"
#include "tas/core/tileset.hpp"

namespace tas {

enum class Diffusion { None, Planar, Spatial };

inline const char* diffusion_name(Diffusion d) {
  switch (d) {
    case Diffusion::None: return "none";
    case Diffusion::Planar: return "planar";
    case Diffusion::Spatial: return "spatial";
  }
  return "none";
}

struct TileSystem {
  std::string name;
  TileSet tiles;
  GlueBook glues;
  Assembly seed;
  int temperature = 2;
  int dimension = 2;
  Diffusion diffusion = Diffusion::None;

  TileSystem() : seed(2) {}
};

enum class ValidationError {
  SeedUnstable,
  SeedDisconnected,
  DuplicateLabelStrength,
  UnknownTileInSeed,
  BadDimension,
};

inline const char* validation_error_name(ValidationError e) {
  switch (e) {
    case ValidationError::SeedUnstable: return "SeedUnstable";
    case ValidationError::SeedDisconnected: return "SeedDisconnected";
    case ValidationError::DuplicateLabelStrength:
      return "DuplicateLabelStrength";
    case ValidationError::UnknownTileInSeed: return "UnknownTileInSeed";
    case ValidationError::BadDimension: return "BadDimension";
  }
  return "?";
}

class SystemError : public std::runtime_error {
 public:
  SystemError(ValidationError kind, const std::string& detail)
      : std::runtime_error(std::string(validation_error_name(kind)) + ": " +
                           detail),
        kind_(kind) {}
  ValidationError kind() const { return kind_; }

 private:
  ValidationError kind_;
};

// Checks every TileSystem invariant; throws SystemError on the first
// violation. Returns the validated system by reference for chaining.
const TileSystem& validate_system(const TileSystem& sys);

// Exact τ-stability of an assembly's binding graph (min cut >= tau).
// τ<=2 runs in linear time (connectivity + weight-1 bridge scan); larger τ
// falls back to Stoer-Wagner and is intended for small assemblies.
bool is_stable(const TileSet& ts, const Assembly& a, int tau);

}  // namespace tas
