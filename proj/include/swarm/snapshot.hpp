#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "swarm/world.hpp"

namespace swarm {

inline constexpr uint16_t kSnapshotVersion = 1;

// Bit-exact little-endian world encoding. Layout: magic "SWRM", u16
// version, the full parameter block, u64 tick, rng state, stimulus field
// values as f64 in row-major (y, x, c) order, the permanent layer the same
// way, the agent roster in id order (x u32, y u32, heading u8, channel
// u16, theta f32, steps_since_deposit u32), per-channel deposit counters
// (u64), and finally an FNV-1a 64-bit checksum of all preceding bytes.
std::vector<std::byte> save_snapshot(const WorldState& world);

// Rejects bad magic, unsupported versions, checksum mismatches, truncated
// or trailing bytes, and any decoded value that violates a world
// invariant. All rejections throw DataError.
WorldState load_snapshot(std::span<const std::byte> bytes);

void write_snapshot_file(const WorldState& world,
                         const std::filesystem::path& path);
WorldState read_snapshot_file(const std::filesystem::path& path);

// FNV-1a over the full encoding; a convenient determinism fingerprint.
uint64_t snapshot_digest(const WorldState& world);

}  // namespace swarm
