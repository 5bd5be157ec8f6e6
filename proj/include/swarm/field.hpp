#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace swarm {

enum class Boundary : uint8_t { Bounded = 0, Toroidal = 1 };

struct Coord {
    uint32_t x = 0;
    uint32_t y = 0;
    friend bool operator==(const Coord&, const Coord&) = default;
};

// The 3x3 Moore neighborhood of a cell, center included. Under Toroidal
// all nine entries are valid (coordinates wrapped, possibly repeating on
// tiny grids); under Bounded, off-canvas entries are flagged invalid.
struct Neighborhood {
    struct Entry {
        Coord pos{};
        bool valid = false;
    };
    Coord center{};
    std::array<Entry, 9> cells{};  // scan order: dy in {-1,0,1}, dx in {-1,0,1}
};

// W x H x C grid of non-negative chromatic intensities: the shared canvas
// that doubles as the swarm's stimulus medium and collective memory.
// Values are stored row-major in (y, x, c) order. Dimensions are fixed at
// construction; every operation keeps all values finite and >= 0.
class CanvasField {
public:
    CanvasField(uint32_t width, uint32_t height, uint16_t channels, Boundary boundary);

    uint32_t width() const { return width_; }
    uint32_t height() const { return height_; }
    uint16_t channels() const { return channels_; }
    Boundary boundary() const { return boundary_; }
    size_t cell_count() const { return static_cast<size_t>(width_) * height_; }

    double at(uint32_t x, uint32_t y, uint16_t c) const {
        return values_[index(x, y, c)];
    }

    // Adds `amount` ink at one cell, clamping the result at `cap`.
    void deposit(Coord pos, uint16_t channel, double amount, double cap);

    // Per-channel mean intensity over the valid cells of the Moore
    // neighborhood of pos, center included.
    void sense_into(Coord pos, std::span<double> out) const;
    std::vector<double> sense(Coord pos) const;

    // Multiplies every value by (1 - rho), then flushes values below
    // `floor` to exactly 0. rho == 0 is an exact identity: an undecayed
    // field is left bit-for-bit alone, floor included.
    void evaporate(double rho, double floor);

    // Synchronous conservative spreading: each cell keeps (1 - lambda) of
    // its value and sends lambda/4 to each von Neumann neighbor. Under
    // Bounded, shares aimed off-canvas stay in the source cell. Computed
    // from a frozen copy of the pre-step values.
    void diffuse(double lambda);

    // Compensated (Neumaier) sum of one channel in a fixed traversal
    // order, so the result never depends on how callers parallelize.
    double total_mass(uint16_t channel) const;

    Neighborhood neighborhood(Coord pos) const;

    // Resolves (pos.x + dx, pos.y + dy) under the boundary mode; nullopt
    // when the target falls off a Bounded canvas.
    std::optional<Coord> offset(Coord pos, int dx, int dy) const;

    bool in_bounds(Coord pos) const {
        return pos.x < width_ && pos.y < height_;
    }

    // Raw value access for serialization and rendering.
    std::span<const double> values() const { return values_; }
    void load_values(std::span<const double> raw);

    friend bool operator==(const CanvasField&, const CanvasField&) = default;

private:
    size_t index(uint32_t x, uint32_t y, uint16_t c) const {
        return (static_cast<size_t>(y) * width_ + x) * channels_ + c;
    }
    void check_pos(Coord pos) const;
    void check_channel(uint16_t c) const;

    uint32_t width_ = 0;
    uint32_t height_ = 0;
    uint16_t channels_ = 0;
    Boundary boundary_ = Boundary::Bounded;
    std::vector<double> values_;
};

}  // namespace swarm
