#pragma once

#include <cstdint>
#include <vector>

#include "swarm/behavior.hpp"
#include "swarm/field.hpp"

namespace swarm {

struct Rgb {
    uint8_t r = 0;
    uint8_t g = 0;
    uint8_t b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Maps channel intensities to pixel colors: each channel gets a base color,
// scaled by a tone map and added over the background.
struct Palette {
    Rgb background{};
    double exposure = 0.6;
    std::vector<Rgb> channel_colors;  // one entry per field channel
    friend bool operator==(const Palette&, const Palette&) = default;
};

// Primary colors cycling red, green, blue for any channel count.
std::vector<Rgb> default_channel_colors(uint16_t channels);

// Every global model constant: canvas geometry, swarm size, behavior,
// field dynamics, run control, and rendering. One instance travels with a
// world from config file to snapshot.
struct SimParams {
    uint32_t width = 512;
    uint32_t height = 512;
    uint16_t channels = 3;
    Boundary boundary = Boundary::Bounded;

    uint32_t agent_count = 200;
    uint32_t agent_max = 1'000'000;

    BehaviorParams behavior;

    double rho = 0.015;      // evaporation rate per tick
    double lambda = 0.1;     // diffusion rate per tick
    double sigma_max = 10.0; // deposit saturation cap
    double eps_floor = 1e-6; // evaporation flush threshold

    uint64_t seed = 1;
    uint64_t ticks = 1000;
    uint64_t metrics_every = 10;

    bool render_permanent = true;
    Palette palette;  // channel_colors may be left short; finalize() fills it

    // Pads palette.channel_colors with per-index defaults up to `channels`.
    void finalize();

    // Throws ConfigError naming the offending config key.
    void validate() const;

    friend bool operator==(const SimParams&, const SimParams&) = default;
};

}  // namespace swarm
