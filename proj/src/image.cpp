#include "swarm/image.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "swarm/errors.hpp"

namespace swarm {

std::vector<std::byte> render_image(const CanvasField& field,
                                    const Palette& palette) {
    if (palette.channel_colors.size() != field.channels()) {
        throw ConfigError("palette has " +
                          std::to_string(palette.channel_colors.size()) +
                          " channel colors but the field has " +
                          std::to_string(field.channels()) + " channels");
    }

    const std::string header = "P6\n" + std::to_string(field.width()) + " " +
                               std::to_string(field.height()) + "\n255\n";
    std::vector<std::byte> out;
    out.reserve(header.size() +
                static_cast<size_t>(field.width()) * field.height() * 3);
    for (char c : header) out.push_back(static_cast<std::byte>(c));

    const uint16_t channels = field.channels();
    for (uint32_t y = 0; y < field.height(); ++y) {
        for (uint32_t x = 0; x < field.width(); ++x) {
            double rgb[3] = {static_cast<double>(palette.background.r),
                             static_cast<double>(palette.background.g),
                             static_cast<double>(palette.background.b)};
            for (uint16_t c = 0; c < channels; ++c) {
                const double v = field.at(x, y, c);
                if (v <= 0.0) continue;
                const double tone = 1.0 - std::exp(-palette.exposure * v);
                const Rgb& base = palette.channel_colors[c];
                rgb[0] += tone * base.r;
                rgb[1] += tone * base.g;
                rgb[2] += tone * base.b;
            }
            for (double component : rgb) {
                const long rounded = std::lround(component);
                const long clamped = rounded > 255 ? 255 : rounded;
                out.push_back(static_cast<std::byte>(clamped));
            }
        }
    }
    return out;
}

void write_bytes_file(const std::filesystem::path& path,
                      std::span<const std::byte> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace swarm
