#include "swarm/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swarm {

namespace {

// von Neumann offsets in N, E, S, W order
constexpr int kVnDx[4] = {0, 1, 0, -1};
constexpr int kVnDy[4] = {-1, 0, 1, 0};

constexpr size_t kMaxValues = 1'000'000'000;  // W*H*C guard

}  // namespace

CanvasField::CanvasField(uint32_t width, uint32_t height, uint16_t channels,
                         Boundary boundary)
    : width_(width), height_(height), channels_(channels), boundary_(boundary) {
    if (width == 0) throw std::invalid_argument("CanvasField: width must be >= 1");
    if (height == 0) throw std::invalid_argument("CanvasField: height must be >= 1");
    if (channels == 0) throw std::invalid_argument("CanvasField: channels must be >= 1");
    const size_t total = static_cast<size_t>(width) * height * channels;
    if (total > kMaxValues) {
        throw std::invalid_argument("CanvasField: width*height*channels = " +
                                    std::to_string(total) + " exceeds the " +
                                    std::to_string(kMaxValues) + " value limit");
    }
    values_.assign(total, 0.0);
}

void CanvasField::check_pos(Coord pos) const {
    if (!in_bounds(pos)) {
        throw std::out_of_range("CanvasField: position (" + std::to_string(pos.x) +
                                ", " + std::to_string(pos.y) + ") outside " +
                                std::to_string(width_) + "x" + std::to_string(height_));
    }
}

void CanvasField::check_channel(uint16_t c) const {
    if (c >= channels_) {
        throw std::invalid_argument("CanvasField: channel " + std::to_string(c) +
                                    " >= channel count " + std::to_string(channels_));
    }
}

void CanvasField::deposit(Coord pos, uint16_t channel, double amount, double cap) {
    check_pos(pos);
    check_channel(channel);
    if (!(amount >= 0.0) || !std::isfinite(amount)) {
        throw std::invalid_argument("CanvasField: deposit amount must be finite and >= 0");
    }
    double& v = values_[index(pos.x, pos.y, channel)];
    const double sum = v + amount;
    v = sum > cap ? cap : sum;
}

void CanvasField::sense_into(Coord pos, std::span<double> out) const {
    check_pos(pos);
    if (out.size() != channels_) {
        throw std::invalid_argument("CanvasField: sense output span has wrong length");
    }
    for (auto& o : out) o = 0.0;
    int count = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            const auto n = offset(pos, dx, dy);
            if (!n) continue;
            ++count;
            const size_t base = index(n->x, n->y, 0);
            for (uint16_t c = 0; c < channels_; ++c) out[c] += values_[base + c];
        }
    }
    // count >= 1 always: the center cell itself is in bounds
    const double inv = 1.0 / count;
    for (auto& o : out) o *= inv;
}

std::vector<double> CanvasField::sense(Coord pos) const {
    std::vector<double> out(channels_);
    sense_into(pos, out);
    return out;
}

void CanvasField::evaporate(double rho, double floor) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("CanvasField: evaporation rate must be in [0, 1]");
    }
    if (!(floor >= 0.0)) {
        throw std::invalid_argument("CanvasField: evaporation floor must be >= 0");
    }
    if (rho == 0.0) return;
    const double keep = 1.0 - rho;
    for (double& v : values_) {
        v *= keep;
        if (v < floor) v = 0.0;
    }
}

void CanvasField::diffuse(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("CanvasField: diffusion rate must be in [0, 1]");
    }
    if (lambda == 0.0) return;
    const double share = lambda * 0.25;
    std::vector<double> next(values_.size());
    for (uint32_t y = 0; y < height_; ++y) {
        for (uint32_t x = 0; x < width_; ++x) {
            // resolve the four von Neumann neighbors once per cell; a
            // share aimed off a Bounded edge reflects into the source
            size_t nbr[4];
            int nvalid = 0;
            int reflected = 0;
            for (int d = 0; d < 4; ++d) {
                if (const auto n = offset({x, y}, kVnDx[d], kVnDy[d])) {
                    nbr[nvalid++] = index(n->x, n->y, 0);
                } else {
                    ++reflected;
                }
            }
            const size_t base = index(x, y, 0);
            for (uint16_t c = 0; c < channels_; ++c) {
                const double v = values_[base + c];
                double inflow = 0.0;
                for (int k = 0; k < nvalid; ++k) inflow += values_[nbr[k] + c];
                // difference form: bit-exact identity on uniform patches,
                // outflow of exactly (4 - reflected) shares
                double out = v + share * (inflow + reflected * v - 4.0 * v);
                next[base + c] = out < 0.0 ? 0.0 : out;
            }
        }
    }
    values_ = std::move(next);
}

double CanvasField::total_mass(uint16_t channel) const {
    check_channel(channel);
    double sum = 0.0;
    double comp = 0.0;
    const size_t n = values_.size();
    for (size_t i = channel; i < n; i += channels_) {
        const double v = values_[i];
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

Neighborhood CanvasField::neighborhood(Coord pos) const {
    check_pos(pos);
    Neighborhood out;
    out.center = pos;
    int i = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx, ++i) {
            if (const auto n = offset(pos, dx, dy)) {
                out.cells[i] = {*n, true};
            } else {
                out.cells[i] = {Coord{}, false};
            }
        }
    }
    return out;
}

std::optional<Coord> CanvasField::offset(Coord pos, int dx, int dy) const {
    int64_t x = static_cast<int64_t>(pos.x) + dx;
    int64_t y = static_cast<int64_t>(pos.y) + dy;
    if (boundary_ == Boundary::Toroidal) {
        x %= width_;
        if (x < 0) x += width_;
        y %= height_;
        if (y < 0) y += height_;
        return Coord{static_cast<uint32_t>(x), static_cast<uint32_t>(y)};
    }
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return std::nullopt;
    return Coord{static_cast<uint32_t>(x), static_cast<uint32_t>(y)};
}

void CanvasField::load_values(std::span<const double> raw) {
    if (raw.size() != values_.size()) {
        throw std::invalid_argument("CanvasField: value buffer has wrong length");
    }
    for (const double v : raw) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("CanvasField: values must be finite and >= 0");
        }
    }
    values_.assign(raw.begin(), raw.end());
}

}  // namespace swarm
