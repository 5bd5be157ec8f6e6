#include "swarm/behavior.hpp"

#include <cmath>
#include <vector>

namespace swarm {

double perceived_stimulus(std::span<const double> stimulus, uint16_t own_channel,
                          double w_own, double w_other) {
    double others = 0.0;
    for (size_t c = 0; c < stimulus.size(); ++c) {
        if (c != own_channel) others += stimulus[c];
    }
    const double s = w_own * stimulus[own_channel] + w_other * others;
    return s > 0.0 ? s : 0.0;
}

double deposit_probability(double s, double theta, double n, double p0) {
    if (s <= 0.0) return p0;
    // ratio form of s^n / (s^n + theta^n); immune to pow overflow for huge s
    const double t = std::pow(theta / s, n);
    return p0 + (1.0 - p0) / (1.0 + t);
}

double movement_weight(double sigma, double beta, double delta) {
    return std::pow(1.0 + sigma / (1.0 + delta * sigma), beta);
}

MoveDistribution movement_distribution(const AgentState& agent,
                                       const CanvasField& field,
                                       const BehaviorParams& params) {
    MoveDistribution out;
    std::vector<double> stim(field.channels());
    double mass_sum = 0.0;
    for (int d = 0; d < kCompassCount; ++d) {
        const auto target = field.offset(agent.pos, kCompassDx[d], kCompassDy[d]);
        if (!target) continue;
        out.valid[d] = true;
        ++out.valid_count;
        field.sense_into(*target, stim);
        const double sigma =
            perceived_stimulus(stim, agent.channel, params.w_own, params.w_other);
        const double w = movement_weight(sigma, params.beta, params.delta);
        const double turn_prior = params.inertia[turn_magnitude(agent.heading, d)];
        out.prob[d] = w * turn_prior;
        mass_sum += out.prob[d];
    }
    if (out.valid_count == 0) return out;
    if (mass_sum <= 0.0) {
        // every usable direction carried zero prior: move blind
        const double u = 1.0 / out.valid_count;
        for (int d = 0; d < kCompassCount; ++d) out.prob[d] = out.valid[d] ? u : 0.0;
        return out;
    }
    const double inv = 1.0 / mass_sum;
    for (double& p : out.prob) p *= inv;
    return out;
}

AgentStepResult agent_step(const AgentState& agent, const CanvasField& field,
                           const BehaviorParams& params, RandomStream& rng) {
    AgentStepResult result{agent, false};

    const auto stim = field.sense(agent.pos);
    const double s =
        perceived_stimulus(stim, agent.channel, params.w_own, params.w_other);
    const double p =
        deposit_probability(s, agent.theta, params.n, params.p0);
    const double u1 = rng.next_uniform();
    if (u1 < p) {
        result.deposited = true;
        result.agent.steps_since_deposit = 0;
    } else {
        ++result.agent.steps_since_deposit;
    }

    const auto dist = movement_distribution(agent, field, params);
    const double u2 = rng.next_uniform();
    if (dist.valid_count == 0) return result;  // nowhere to go (1x1 Bounded)

    int chosen = -1;
    double acc = 0.0;
    for (int d = 0; d < kCompassCount; ++d) {
        if (!dist.valid[d]) continue;
        acc += dist.prob[d];
        chosen = d;
        if (u2 < acc) break;
    }
    const auto target =
        field.offset(agent.pos, kCompassDx[chosen], kCompassDy[chosen]);
    result.agent.pos = *target;
    result.agent.heading = static_cast<uint8_t>(chosen);
    return result;
}

}  // namespace swarm
