#pragma once

#include <array>
#include <cstdint>

#include "swarm/field.hpp"
#include "swarm/rng.hpp"

namespace swarm {

// Compass directions, clockwise from north. Grid y grows downward, so
// north is (0, -1).
inline constexpr int kCompassCount = 8;
inline constexpr std::array<int, 8> kCompassDx = {0, 1, 1, 1, 0, -1, -1, -1};
inline constexpr std::array<int, 8> kCompassDy = {-1, -1, 0, 1, 1, 1, 0, -1};

enum : uint8_t { DirN = 0, DirNE, DirE, DirSE, DirS, DirSW, DirW, DirNW };

// Magnitude of the turn between two headings, in 45-degree steps (0..4).
inline int turn_magnitude(uint8_t from, uint8_t to) {
    const int d = (to - from + 8) % 8;
    return d <= 4 ? d : 8 - d;
}

// One swarm member. Agents are pointlike, may share a cell, and interact
// only through the canvas.
struct AgentState {
    uint32_t id = 0;
    Coord pos{};
    uint8_t heading = DirN;
    uint16_t channel = 0;
    float theta = 0.15f;             // response threshold, > 0
    uint32_t steps_since_deposit = 0;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

// Global behavioral constants shared by the roster.
struct BehaviorParams {
    double theta = 0.15;    // response threshold assigned to new agents
    double n = 2.0;         // response-function steepness, >= 1
    double p0 = 0.001;      // spontaneous deposit probability
    double q_amount = 1.0;  // ink laid per deposit event
    double beta = 3.5;      // stimulus amplification in movement weights
    double delta = 0.2;     // stimulus saturation in movement weights
    double w_own = 1.0;     // affinity for the agent's own ink channel
    double w_other = 0.5;   // affinity for teammates' channels
    // heading-relative movement prior, indexed by |turn| in 45-degree
    // steps: straight, 45, 90, 135, reverse
    std::array<double, 5> inertia = {6.0, 3.0, 1.0, 0.3, 0.1};

    friend bool operator==(const BehaviorParams&, const BehaviorParams&) = default;
};

// Collapses a per-channel stimulus vector into one scalar drive:
// max(0, w_own * own + w_other * sum of the others).
double perceived_stimulus(std::span<const double> stimulus, uint16_t own_channel,
                          double w_own, double w_other);

// Threshold response p0 + (1 - p0) * s^n / (s^n + theta^n): p0 at zero
// stimulus, the midpoint p0 + (1 - p0)/2 at s == theta, saturating
// toward 1.
double deposit_probability(double s, double theta, double n, double p0);

// Candidate-cell attractiveness (1 + sigma / (1 + delta * sigma))^beta.
// Always >= 1; bounded by (1 + 1/delta)^beta when delta > 0.
double movement_weight(double sigma, double beta, double delta);

// Movement probabilities over the 8 Moore neighbors in compass order.
// Invalid directions (off a Bounded canvas) carry probability 0.
struct MoveDistribution {
    std::array<double, 8> prob{};
    std::array<bool, 8> valid{};
    int valid_count = 0;
};

MoveDistribution movement_distribution(const AgentState& agent,
                                       const CanvasField& field,
                                       const BehaviorParams& params);

// Outcome of one agent decision. `deposited` marks a deposit event of
// params.q_amount on the agent's channel at its pre-move position; the
// caller applies it to the field.
struct AgentStepResult {
    AgentState agent;
    bool deposited = false;
};

// One stimulus-response step. Draws exactly two variates in fixed order:
// u1 against the deposit probability at the current cell, u2 to pick the
// move by cumulative inversion over neighbors in compass order. Reads
// only (agent, field, params, rng); never mutates the field.
AgentStepResult agent_step(const AgentState& agent, const CanvasField& field,
                           const BehaviorParams& params, RandomStream& rng);

}  // namespace swarm
