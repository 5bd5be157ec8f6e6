#include "swarm/world.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace swarm {

WorldState init_world(SimParams params) {
    params.finalize();
    params.validate();

    CanvasField field(params.width, params.height, params.channels,
                      params.boundary);
    CanvasField permanent(params.width, params.height, params.channels,
                          params.boundary);
    RandomStream rng(params.seed);

    std::vector<AgentState> agents;
    agents.reserve(params.agent_count);
    for (uint32_t id = 0; id < params.agent_count; ++id) {
        AgentState a;
        a.id = id;
        a.pos.x = rng.next_index(params.width);
        a.pos.y = rng.next_index(params.height);
        a.heading = static_cast<uint8_t>(rng.next_index(8));
        a.channel = static_cast<uint16_t>(id % params.channels);
        a.theta = static_cast<float>(params.behavior.theta);
        a.steps_since_deposit = 0;
        agents.push_back(a);
    }

    const uint16_t channels = params.channels;
    return WorldState{std::move(params),
                      std::move(field),
                      std::move(permanent),
                      std::move(agents),
                      0,
                      rng,
                      std::vector<uint64_t>(channels, 0)};
}

void step(WorldState& world) {
    constexpr double kNoCap = std::numeric_limits<double>::infinity();
    const BehaviorParams& bp = world.params.behavior;
    for (AgentState& agent : world.agents) {
        const Coord at = agent.pos;
        const uint16_t channel = agent.channel;
        const AgentStepResult result = agent_step(agent, world.field, bp, world.rng);
        if (result.deposited) {
            world.field.deposit(at, channel, bp.q_amount, world.params.sigma_max);
            world.permanent.deposit(at, channel, bp.q_amount, kNoCap);
            ++world.deposit_events[channel];
        }
        agent = result.agent;
    }
    world.field.evaporate(world.params.rho, world.params.eps_floor);
    world.field.diffuse(world.params.lambda);
    ++world.tick;
}

void run(WorldState& world, uint64_t ticks, const TickObserver& observer) {
    for (uint64_t i = 0; i < ticks; ++i) {
        step(world);
        if (observer) {
            try {
                observer(static_cast<const WorldState&>(world));
            } catch (const std::exception& e) {
                throw std::runtime_error("observer failed at tick " +
                                         std::to_string(world.tick) + ": " +
                                         e.what());
            }
        }
    }
}

}  // namespace swarm
