#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swarm/behavior.hpp"
#include "swarm/field.hpp"
#include "swarm/params.hpp"
#include "swarm/rng.hpp"

namespace swarm {

// The habitat plus its inhabitants: everything a tick reads or writes,
// and the unit of snapshot/restore. `field` is the decaying stimulus
// medium; `permanent` accumulates every deposit forever and is only used
// for rendering. `deposit_events` counts deposits per channel since tick 0.
struct WorldState {
    SimParams params;
    CanvasField field;
    CanvasField permanent;
    std::vector<AgentState> agents;
    uint64_t tick = 0;
    RandomStream rng;
    std::vector<uint64_t> deposit_events;

    friend bool operator==(const WorldState&, const WorldState&) = default;
};

// Blank field; agents placed uniformly at random, consuming the stream in
// id order (x, y, heading per agent); channels round-robin by id; tick 0.
// Throws ConfigError when params are invalid or agent_count > agent_max.
WorldState init_world(SimParams params);

// One tick: agents act in ascending id order (deposits land immediately,
// so later agents sense earlier agents' fresh ink), then the field
// evaporates, then diffuses. Consumes exactly 2 * agent_count variates.
void step(WorldState& world);

using TickObserver = std::function<void(const WorldState&)>;

// Applies step() exactly `ticks` times, invoking the observer after each
// step with read-only access. An observer exception aborts the run and is
// rethrown with the tick number attached.
void run(WorldState& world, uint64_t ticks, const TickObserver& observer = {});

}  // namespace swarm
