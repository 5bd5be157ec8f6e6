#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "swarm/field.hpp"
#include "swarm/params.hpp"

namespace swarm {

// Binary PPM (P6) rendering of a field. Per pixel, each channel's
// intensity is tone-mapped with 1 - exp(-exposure * v), scaled by the
// channel's base color, summed over the background, rounded to nearest and
// clamped to 255. Byte-exact for identical inputs. Throws ConfigError when
// the palette does not provide exactly one color per channel.
std::vector<std::byte> render_image(const CanvasField& field,
                                    const Palette& palette);

void write_bytes_file(const std::filesystem::path& path,
                      std::span<const std::byte> bytes);

}  // namespace swarm
