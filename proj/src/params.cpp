#include "swarm/params.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "swarm/errors.hpp"

namespace swarm {

namespace {

const char* kInertiaKeys[5] = {"behavior.inertia0", "behavior.inertia45",
                               "behavior.inertia90", "behavior.inertia135",
                               "behavior.inertia180"};

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_range(double v, const char* key, double lo, double hi) {
    require(std::isfinite(v) && v >= lo && v <= hi,
            std::string(key) + " must be within [" + num(lo) + "," + num(hi) +
                "] (got " + num(v) + ")");
}

void check_min(double v, const char* key, double lo, bool strict) {
    const bool ok = std::isfinite(v) && (strict ? v > lo : v >= lo);
    require(ok, std::string(key) + " must be " + (strict ? "> " : ">= ") +
                    num(lo) + " (got " + num(v) + ")");
}

}  // namespace

std::vector<Rgb> default_channel_colors(uint16_t channels) {
    static const Rgb primaries[3] = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}};
    std::vector<Rgb> out;
    out.reserve(channels);
    for (uint16_t c = 0; c < channels; ++c) out.push_back(primaries[c % 3]);
    return out;
}

void SimParams::finalize() {
    const auto defaults = default_channel_colors(channels);
    for (size_t c = palette.channel_colors.size(); c < defaults.size(); ++c) {
        palette.channel_colors.push_back(defaults[c]);
    }
}

void SimParams::validate() const {
    require(width >= 1, "field.width must be >= 1");
    require(height >= 1, "field.height must be >= 1");
    require(channels >= 1, "field.channels must be >= 1");
    const auto total = static_cast<uint64_t>(width) * height * channels;
    require(total <= 1'000'000'000ull,
            "field.width * field.height * field.channels exceeds the "
            "1e9 value budget");
    require(agent_max >= 1, "agents.max must be >= 1");
    require(agent_count <= agent_max,
            "agents.count (" + std::to_string(agent_count) +
                ") exceeds agents.max (" + std::to_string(agent_max) + ")");

    check_min(behavior.theta, "behavior.theta", 0.0, true);
    check_min(behavior.n, "behavior.n", 1.0, false);
    check_range(behavior.p0, "behavior.p0", 0.0, 1.0);
    check_min(behavior.q_amount, "behavior.q_amount", 0.0, true);
    check_min(behavior.beta, "behavior.beta", 0.0, false);
    check_min(behavior.delta, "behavior.delta", 0.0, false);
    require(std::isfinite(behavior.w_own), "behavior.w_own must be finite");
    require(std::isfinite(behavior.w_other), "behavior.w_other must be finite");
    double inertia_sum = 0.0;
    for (int i = 0; i < 5; ++i) {
        check_min(behavior.inertia[i], kInertiaKeys[i], 0.0, false);
        inertia_sum += behavior.inertia[i];
    }
    require(inertia_sum > 0.0,
            "behavior.inertia table must contain at least one positive entry");

    check_range(rho, "dynamics.rho", 0.0, 1.0);
    check_range(lambda, "dynamics.lambda", 0.0, 1.0);
    check_min(sigma_max, "dynamics.sigma_max", 0.0, true);
    check_min(eps_floor, "dynamics.eps_floor", 0.0, false);

    require(metrics_every >= 1, "run.metrics_every must be >= 1");

    check_min(palette.exposure, "palette.exposure", 0.0, true);
    require(palette.channel_colors.size() == channels,
            "palette must define exactly one color per channel (have " +
                std::to_string(palette.channel_colors.size()) + ", need " +
                std::to_string(channels) + ")");
}

}  // namespace swarm
