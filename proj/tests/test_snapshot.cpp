#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "swarm/errors.hpp"
#include "swarm/snapshot.hpp"
#include "swarm/world.hpp"

using swarm::DataError;
using swarm::SimParams;
using swarm::WorldState;

namespace {

WorldState evolved_world() {
    SimParams params;
    params.width = 11;
    params.height = 9;
    params.channels = 3;
    params.agent_count = 14;
    params.behavior.p0 = 0.3;
    params.seed = 4242;
    auto world = swarm::init_world(params);
    swarm::run(world, 40);
    return world;
}

// recompute the trailing FNV-1a checksum after tampering with the payload
void reseal(std::vector<std::byte>& bytes) {
    uint64_t hash = UINT64_C(14695981039346656037);
    for (size_t i = 0; i + 8 < bytes.size(); ++i) {
        hash ^= static_cast<uint64_t>(bytes[i]);
        hash *= UINT64_C(1099511628211);
    }
    for (int i = 0; i < 8; ++i) {
        bytes[bytes.size() - 8 + i] =
            static_cast<std::byte>((hash >> (8 * i)) & 0xFF);
    }
}

}  // namespace

TEST_CASE("snapshot round-trips bit for bit") {
    const auto world = evolved_world();
    const auto bytes = swarm::save_snapshot(world);
    const auto reloaded = swarm::load_snapshot(bytes);
    CHECK(reloaded == world);
    CHECK(swarm::save_snapshot(reloaded) == bytes);
    CHECK(swarm::snapshot_digest(reloaded) == swarm::snapshot_digest(world));
}

TEST_CASE("a reloaded world continues exactly like the original") {
    auto original = evolved_world();
    auto resumed = swarm::load_snapshot(swarm::save_snapshot(original));
    swarm::run(original, 25);
    swarm::run(resumed, 25);
    CHECK(resumed == original);
    CHECK(swarm::save_snapshot(resumed) == swarm::save_snapshot(original));
}

TEST_CASE("the encoding is little-endian with a fixed preamble") {
    SimParams params;
    params.width = 258;  // 0x0102, pins byte order
    params.height = 2;
    params.channels = 1;
    params.agent_count = 0;
    const auto bytes = swarm::save_snapshot(swarm::init_world(params));
    REQUIRE(bytes.size() > 16);
    CHECK(bytes[0] == std::byte{'S'});
    CHECK(bytes[1] == std::byte{'W'});
    CHECK(bytes[2] == std::byte{'R'});
    CHECK(bytes[3] == std::byte{'M'});
    CHECK(bytes[4] == std::byte{1});  // version, low byte first
    CHECK(bytes[5] == std::byte{0});
    CHECK(bytes[6] == std::byte{0x02});  // width
    CHECK(bytes[7] == std::byte{0x01});
    CHECK(bytes[8] == std::byte{0});
    CHECK(bytes[9] == std::byte{0});
}

TEST_CASE("the encoded size follows the layout formula") {
    SimParams params;
    params.width = 2;
    params.height = 2;
    params.channels = 1;
    params.agent_count = 1;
    const auto bytes = swarm::save_snapshot(swarm::init_world(params));
    // 6 preamble + 194 params + 24 clock/rng + 32 field + 32 mural
    // + 19 roster + 8 counters + 8 checksum
    CHECK(bytes.size() == 323);
}

TEST_CASE("every single-byte corruption is rejected") {
    const auto world = evolved_world();
    const auto pristine = swarm::save_snapshot(world);
    // stride through the file so the sweep stays fast but covers all regions
    for (size_t i = 0; i < pristine.size(); i += 97) {
        CAPTURE(i);
        auto bytes = pristine;
        bytes[i] ^= std::byte{0x40};
        CHECK_THROWS_AS(swarm::load_snapshot(bytes), DataError);
    }
}

TEST_CASE("resealed structural corruption is still rejected") {
    const auto pristine = swarm::save_snapshot(evolved_world());

    SUBCASE("wrong magic") {
        auto bytes = pristine;
        bytes[0] = std::byte{'X'};
        reseal(bytes);
        CHECK_THROWS_WITH_AS(swarm::load_snapshot(bytes),
                             doctest::Contains("magic"), DataError);
    }
    SUBCASE("unsupported version") {
        auto bytes = pristine;
        bytes[4] = std::byte{9};
        reseal(bytes);
        CHECK_THROWS_WITH_AS(swarm::load_snapshot(bytes),
                             doctest::Contains("version"), DataError);
    }
    SUBCASE("boundary byte out of range") {
        auto bytes = pristine;
        bytes[16] = std::byte{7};  // follows width, height, channels
        reseal(bytes);
        CHECK_THROWS_AS(swarm::load_snapshot(bytes), DataError);
    }
    SUBCASE("payload bytes after the roster") {
        auto bytes = pristine;
        bytes.insert(bytes.end() - 8, 4, std::byte{0});
        reseal(bytes);
        CHECK_THROWS_AS(swarm::load_snapshot(bytes), DataError);
    }
}

TEST_CASE("truncated snapshots are rejected at any cut point") {
    const auto pristine = swarm::save_snapshot(evolved_world());
    for (const size_t keep :
         {size_t{0}, size_t{5}, size_t{13}, size_t{100}, pristine.size() / 2,
          pristine.size() - 1}) {
        CAPTURE(keep);
        std::vector<std::byte> bytes(pristine.begin(),
                                     pristine.begin() + keep);
        CHECK_THROWS_AS(swarm::load_snapshot(bytes), DataError);
    }
}

TEST_CASE("worlds that violate invariants cannot be smuggled through") {
    SUBCASE("agent outside the canvas") {
        auto world = evolved_world();
        world.agents[3].pos = {999, 0};
        CHECK_THROWS_WITH_AS(swarm::load_snapshot(swarm::save_snapshot(world)),
                             doctest::Contains("agent 3"), DataError);
    }
    SUBCASE("agent heading beyond the compass") {
        auto world = evolved_world();
        world.agents[0].heading = 8;
        CHECK_THROWS_WITH_AS(swarm::load_snapshot(swarm::save_snapshot(world)),
                             doctest::Contains("agent 0"), DataError);
    }
    SUBCASE("agent channel beyond the palette") {
        auto world = evolved_world();
        world.agents[5].channel = 3;
        CHECK_THROWS_AS(swarm::load_snapshot(swarm::save_snapshot(world)),
                        DataError);
    }
    SUBCASE("non-positive agent threshold") {
        auto world = evolved_world();
        world.agents[1].theta = 0.0f;
        CHECK_THROWS_AS(swarm::load_snapshot(swarm::save_snapshot(world)),
                        DataError);
    }
    SUBCASE("parameters outside their ranges") {
        auto world = evolved_world();
        world.params.rho = 2.0;
        CHECK_THROWS_WITH_AS(swarm::load_snapshot(swarm::save_snapshot(world)),
                             doctest::Contains("snapshot parameters"),
                             DataError);
    }
}

TEST_CASE("snapshot files round-trip through disk") {
    testsupport::TempDir dir;
    const auto world = evolved_world();
    const auto path = dir.path() / "state.swrm";
    swarm::write_snapshot_file(world, path);
    CHECK(swarm::read_snapshot_file(path) == world);

    CHECK_THROWS_AS(swarm::read_snapshot_file(dir.path() / "missing.swrm"),
                    DataError);
}

TEST_CASE("the digest tracks every state change") {
    auto world = evolved_world();
    const auto before = swarm::snapshot_digest(world);
    CHECK(swarm::snapshot_digest(world) == before);
    swarm::step(world);
    CHECK(swarm::snapshot_digest(world) != before);
}
