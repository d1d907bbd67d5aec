#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "somor/reduction.hpp"

namespace somor {

// On-disk reduced model: a directory with a `rom.manifest` key-value file
// and one Matrix Market file per nonempty reduced matrix.
struct RomBundle {
  std::string scheme;  // "split", "combined" or "homogeneous"
  std::optional<SplitReduction> split;
  std::optional<ReducedModel> single;
};

RomBundle make_bundle(SplitReduction split);
RomBundle make_bundle(ReducedModel rom, const std::string& scheme);

void write_rom_dir(const std::filesystem::path& dir, const RomBundle& bundle);

// Loads a directory written by write_rom_dir. Projection pairs are not
// persisted; stability flags are recomputed.
RomBundle read_rom_dir(const std::filesystem::path& dir);

}  // namespace somor
