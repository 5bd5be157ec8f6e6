#include "swarm/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <utility>

#include "swarm/errors.hpp"

namespace swarm {

namespace {

constexpr char kMagic[4] = {'S', 'W', 'R', 'M'};

uint64_t fnv1a(std::span<const std::byte> bytes) {
    uint64_t hash = 14695981039346656037ull;
    for (std::byte b : bytes) {
        hash ^= static_cast<uint64_t>(b);
        hash *= 1099511628211ull;
    }
    return hash;
}

class Writer {
public:
    void u8(uint8_t v) { out_.push_back(static_cast<std::byte>(v)); }
    void u16(uint16_t v) { le(v, 2); }
    void u32(uint32_t v) { le(v, 4); }
    void u64(uint64_t v) { le(v, 8); }
    void f32(float v) { u32(std::bit_cast<uint32_t>(v)); }
    void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
    std::vector<std::byte> take() && { return std::move(out_); }

private:
    void le(uint64_t v, int width) {
        for (int i = 0; i < width; ++i) {
            out_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
        }
    }
    std::vector<std::byte> out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::byte> bytes) : bytes_(bytes) {}

    uint8_t u8() { return static_cast<uint8_t>(le(1)); }
    uint16_t u16() { return static_cast<uint16_t>(le(2)); }
    uint32_t u32() { return static_cast<uint32_t>(le(4)); }
    uint64_t u64() { return le(8); }
    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }
    size_t offset() const { return offset_; }
    size_t remaining() const { return bytes_.size() - offset_; }

private:
    uint64_t le(int width) {
        if (remaining() < static_cast<size_t>(width)) {
            throw DataError("snapshot truncated at byte " +
                            std::to_string(offset_));
        }
        uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
            v |= static_cast<uint64_t>(bytes_[offset_ + i]) << (8 * i);
        }
        offset_ += width;
        return v;
    }

    std::span<const std::byte> bytes_;
    size_t offset_ = 0;
};

void write_params(Writer& w, const SimParams& p) {
    w.u32(p.width);
    w.u32(p.height);
    w.u16(p.channels);
    w.u8(static_cast<uint8_t>(p.boundary));
    w.u32(p.agent_count);
    w.u32(p.agent_max);
    const BehaviorParams& b = p.behavior;
    w.f64(b.theta);
    w.f64(b.n);
    w.f64(b.p0);
    w.f64(b.q_amount);
    w.f64(b.beta);
    w.f64(b.delta);
    w.f64(b.w_own);
    w.f64(b.w_other);
    for (double v : b.inertia) w.f64(v);
    w.f64(p.rho);
    w.f64(p.lambda);
    w.f64(p.sigma_max);
    w.f64(p.eps_floor);
    w.u64(p.seed);
    w.u64(p.ticks);
    w.u64(p.metrics_every);
    w.u8(p.render_permanent ? 1 : 0);
    w.f64(p.palette.exposure);
    w.u8(p.palette.background.r);
    w.u8(p.palette.background.g);
    w.u8(p.palette.background.b);
    for (const Rgb& c : p.palette.channel_colors) {
        w.u8(c.r);
        w.u8(c.g);
        w.u8(c.b);
    }
}

SimParams read_params(Reader& r) {
    SimParams p;
    p.width = r.u32();
    p.height = r.u32();
    p.channels = r.u16();
    const uint8_t boundary = r.u8();
    if (boundary > 1) {
        throw DataError("snapshot boundary byte out of range: " +
                        std::to_string(boundary));
    }
    p.boundary = static_cast<Boundary>(boundary);
    p.agent_count = r.u32();
    p.agent_max = r.u32();
    BehaviorParams& b = p.behavior;
    b.theta = r.f64();
    b.n = r.f64();
    b.p0 = r.f64();
    b.q_amount = r.f64();
    b.beta = r.f64();
    b.delta = r.f64();
    b.w_own = r.f64();
    b.w_other = r.f64();
    for (double& v : b.inertia) v = r.f64();
    p.rho = r.f64();
    p.lambda = r.f64();
    p.sigma_max = r.f64();
    p.eps_floor = r.f64();
    p.seed = r.u64();
    p.ticks = r.u64();
    p.metrics_every = r.u64();
    const uint8_t permanent = r.u8();
    if (permanent > 1) {
        throw DataError("snapshot render flag out of range: " +
                        std::to_string(permanent));
    }
    p.render_permanent = permanent == 1;
    p.palette.exposure = r.f64();
    p.palette.background = {r.u8(), r.u8(), r.u8()};
    if (p.channels < 1 || p.channels > 4096) {
        throw DataError("snapshot channel count out of range: " +
                        std::to_string(p.channels));
    }
    p.palette.channel_colors.resize(p.channels);
    for (Rgb& c : p.palette.channel_colors) c = {r.u8(), r.u8(), r.u8()};
    try {
        p.validate();
    } catch (const ConfigError& e) {
        throw DataError(std::string("snapshot parameters invalid: ") +
                        e.what());
    }
    return p;
}

CanvasField read_field(Reader& r, const SimParams& p) {
    const size_t n =
        static_cast<size_t>(p.width) * p.height * p.channels;
    if (r.remaining() < n * 8) {
        throw DataError("snapshot truncated inside field values");
    }
    CanvasField field(p.width, p.height, p.channels, p.boundary);
    std::vector<double> raw(n);
    for (double& v : raw) v = r.f64();
    try {
        field.load_values(raw);
    } catch (const std::exception& e) {
        throw DataError(std::string("snapshot field values invalid: ") +
                        e.what());
    }
    return field;
}

}  // namespace

std::vector<std::byte> save_snapshot(const WorldState& world) {
    Writer w;
    for (char c : kMagic) w.u8(static_cast<uint8_t>(c));
    w.u16(kSnapshotVersion);
    write_params(w, world.params);
    w.u64(world.tick);
    w.u64(world.rng.seed());
    w.u64(world.rng.counter());
    for (double v : world.field.values()) w.f64(v);
    for (double v : world.permanent.values()) w.f64(v);
    for (const AgentState& a : world.agents) {
        w.u32(a.pos.x);
        w.u32(a.pos.y);
        w.u8(a.heading);
        w.u16(a.channel);
        w.f32(a.theta);
        w.u32(a.steps_since_deposit);
    }
    for (uint64_t n : world.deposit_events) w.u64(n);
    auto bytes = std::move(w).take();
    const uint64_t checksum = fnv1a(bytes);
    for (int i = 0; i < 8; ++i) {
        bytes.push_back(static_cast<std::byte>((checksum >> (8 * i)) & 0xFF));
    }
    return bytes;
}

WorldState load_snapshot(std::span<const std::byte> bytes) {
    if (bytes.size() < 14) throw DataError("snapshot too short");
    const size_t body = bytes.size() - 8;
    const uint64_t expected = fnv1a(bytes.subspan(0, body));
    Reader tail(bytes.subspan(body));
    if (tail.u64() != expected) throw DataError("snapshot checksum mismatch");

    Reader r(bytes.subspan(0, body));
    for (char c : kMagic) {
        if (r.u8() != static_cast<uint8_t>(c)) {
            throw DataError("not a snapshot: bad magic bytes");
        }
    }
    const uint16_t version = r.u16();
    if (version != kSnapshotVersion) {
        throw DataError("unsupported snapshot version " +
                        std::to_string(version));
    }

    SimParams params = read_params(r);
    const uint64_t tick = r.u64();
    const uint64_t rng_seed = r.u64();
    const uint64_t rng_counter = r.u64();
    CanvasField field = read_field(r, params);
    CanvasField permanent = read_field(r, params);

    constexpr size_t kAgentRecord = 4 + 4 + 1 + 2 + 4 + 4;
    if (r.remaining() < params.agent_count * kAgentRecord) {
        throw DataError("snapshot truncated inside agent roster");
    }
    std::vector<AgentState> agents;
    agents.reserve(params.agent_count);
    for (uint32_t id = 0; id < params.agent_count; ++id) {
        AgentState a;
        a.id = id;
        a.pos.x = r.u32();
        a.pos.y = r.u32();
        a.heading = r.u8();
        a.channel = r.u16();
        a.theta = r.f32();
        a.steps_since_deposit = r.u32();
        const std::string tag = "snapshot agent " + std::to_string(id);
        if (!field.in_bounds(a.pos)) throw DataError(tag + ": position out of bounds");
        if (a.heading >= 8) throw DataError(tag + ": heading out of range");
        if (a.channel >= params.channels) throw DataError(tag + ": channel out of range");
        if (!std::isfinite(a.theta) || a.theta <= 0.0f) {
            throw DataError(tag + ": theta must be finite and > 0");
        }
        agents.push_back(a);
    }

    std::vector<uint64_t> deposit_events(params.channels);
    for (uint64_t& n : deposit_events) n = r.u64();

    if (r.remaining() != 0) {
        throw DataError("snapshot has " + std::to_string(r.remaining()) +
                        " trailing bytes");
    }

    return WorldState{std::move(params),
                      std::move(field),
                      std::move(permanent),
                      std::move(agents),
                      tick,
                      RandomStream(rng_seed, rng_counter),
                      std::move(deposit_events)};
}

void write_snapshot_file(const WorldState& world,
                         const std::filesystem::path& path) {
    const auto bytes = save_snapshot(world);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("failed writing " + path.string());
}

WorldState read_snapshot_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
    if (in.bad()) throw DataError("failed reading " + path.string());
    return load_snapshot(
        std::span(reinterpret_cast<const std::byte*>(raw.data()), raw.size()));
}

uint64_t snapshot_digest(const WorldState& world) {
    const auto bytes = save_snapshot(world);
    return fnv1a(bytes);
}

}  // namespace swarm
