#pragma once

#include <cstdint>
#include <filesystem>

#include "linkgen/adam.hpp"
#include "linkgen/net.hpp"

namespace linkgen {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Trainable state of the denoiser: parameters, optimizer moments, step
// counter, and the master seed the run was launched with.
struct DenoiserCheckpoint {
  DenseNet net;
  AdamState opt;
  std::int64_t train_step = 0;
  std::uint64_t master_seed = 0;
};

// File layout: "LGCK" magic, u32 version, u64 header length, JSON header
// (architecture, hyperparameters, named tensor table with shapes), then the
// tensors as little-endian 64-bit floats in column-major order, in table
// order. load(save(x)) is bit-exact.
void save_checkpoint(const DenoiserCheckpoint& ckpt,
                     const std::filesystem::path& path);

// Throws FormatError on corrupt/truncated files or non-finite values,
// VersionError on an unrecognized version tag.
DenoiserCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace linkgen
