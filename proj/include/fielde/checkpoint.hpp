#pragma once
// Binary model checkpoints. Layout (little-endian):
//   magic "FLDE", u32 version, u8 variant, f64 eta, f64 lambda,
//   u32 dim, u64 num_entities, u32 num_relations,
//   entity matrix as f64[num_entities * dim],
//   per relation: u8 kind + kind-specific parameters.
// Doubles are stored raw, so save -> load round-trips bit-exactly.

#include <string>

#include "fielde/model.hpp"

namespace fielde {

inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const ModelState& state, const std::string& path);
ModelState load_checkpoint(const std::string& path);

}  // namespace fielde
