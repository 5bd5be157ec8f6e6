#include "swarm/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "swarm/errors.hpp"

namespace swarm {

namespace {

struct Entry {
    std::string value;
    size_t line = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string where(const Entry& e, std::string_view key) {
    return "line " + std::to_string(e.line) + ": " + std::string(key);
}

uint64_t parse_unsigned(const Entry& e, std::string_view key, uint64_t lo,
                        uint64_t hi) {
    uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw ConfigError(where(e, key) + " expects an unsigned integer (got '" +
                          e.value + "')");
    }
    if (v < lo || v > hi) {
        throw ConfigError(where(e, key) + " must be within [" +
                          std::to_string(lo) + "," + std::to_string(hi) +
                          "] (got " + e.value + ")");
    }
    return v;
}

double parse_double(const Entry& e, std::string_view key) {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw ConfigError(where(e, key) + " expects a number (got '" + e.value +
                          "')");
    }
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Rgb parse_color(const Entry& e, std::string_view key) {
    const std::string& v = e.value;
    bool ok = v.size() == 6;
    for (char c : v) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) ok = false;
    }
    uint32_t packed = 0;
    if (ok) {
        const auto res = std::from_chars(v.data(), v.data() + 6, packed, 16);
        ok = res.ec == std::errc() && res.ptr == v.data() + 6;
    }
    if (!ok) {
        throw ConfigError(where(e, key) +
                          " expects a 6-digit hex color like FF8800 (got '" +
                          v + "')");
    }
    return Rgb{static_cast<uint8_t>(packed >> 16),
               static_cast<uint8_t>((packed >> 8) & 0xFF),
               static_cast<uint8_t>(packed & 0xFF)};
}

char hex_digit(unsigned v) { return "0123456789ABCDEF"[v & 0xF]; }

std::string color_text(Rgb c) {
    std::string out(6, '0');
    out[0] = hex_digit(c.r >> 4);
    out[1] = hex_digit(c.r);
    out[2] = hex_digit(c.g >> 4);
    out[3] = hex_digit(c.g);
    out[4] = hex_digit(c.b >> 4);
    out[5] = hex_digit(c.b);
    return out;
}

std::string double_text(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

SimParams parse_config(std::string_view text) {
    std::map<std::string, Entry> entries;
    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos
                                              : nl - pos);
        ++lineno;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        const size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": missing key before '='");
        }
        if (value.empty()) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": missing value for key '" + key + "'");
        }
        const auto [it, inserted] = entries.emplace(key, Entry{value, lineno});
        if (!inserted) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": duplicate key '" + key + "' (first set on line " +
                              std::to_string(it->second.line) + ")");
        }
    }

    auto take = [&entries](std::string_view key) -> std::optional<Entry> {
        const auto it = entries.find(std::string(key));
        if (it == entries.end()) return std::nullopt;
        Entry e = std::move(it->second);
        entries.erase(it);
        return e;
    };

    SimParams p;

    // double value with a half-open or closed range; bounds are ranges the
    // validator enforces too, but here the error can cite the line
    auto get_double = [&](std::string_view key, double& out, double lo,
                          double hi, bool lo_strict) {
        const auto e = take(key);
        if (!e) return;
        const double v = parse_double(*e, key);
        const bool above = lo_strict ? v > lo : v >= lo;
        if (!std::isfinite(v) || !above || v > hi) {
            std::string range;
            if (std::isfinite(lo) && std::isfinite(hi)) {
                range = "within [" + fmt(lo) + "," + fmt(hi) + "]";
            } else if (std::isfinite(lo)) {
                range = (lo_strict ? "> " : ">= ") + fmt(lo);
            } else {
                range = "finite";
            }
            throw ConfigError(where(*e, key) + " must be " + range + " (got " +
                              e->value + ")");
        }
        out = v;
    };
    constexpr double kInf = std::numeric_limits<double>::infinity();

    if (const auto e = take("field.width")) {
        p.width = static_cast<uint32_t>(parse_unsigned(*e, "field.width", 1, UINT32_MAX));
    }
    if (const auto e = take("field.height")) {
        p.height = static_cast<uint32_t>(parse_unsigned(*e, "field.height", 1, UINT32_MAX));
    }
    if (const auto e = take("field.channels")) {
        p.channels = static_cast<uint16_t>(parse_unsigned(*e, "field.channels", 1, UINT16_MAX));
    }
    if (const auto e = take("field.boundary")) {
        if (e->value == "bounded") {
            p.boundary = Boundary::Bounded;
        } else if (e->value == "toroidal") {
            p.boundary = Boundary::Toroidal;
        } else {
            throw ConfigError(where(*e, "field.boundary") +
                              " must be 'bounded' or 'toroidal' (got '" +
                              e->value + "')");
        }
    }

    if (const auto e = take("agents.count")) {
        p.agent_count = static_cast<uint32_t>(parse_unsigned(*e, "agents.count", 0, UINT32_MAX));
    }
    if (const auto e = take("agents.max")) {
        p.agent_max = static_cast<uint32_t>(parse_unsigned(*e, "agents.max", 1, UINT32_MAX));
    }

    get_double("behavior.theta", p.behavior.theta, 0.0, kInf, true);
    get_double("behavior.n", p.behavior.n, 1.0, kInf, false);
    get_double("behavior.p0", p.behavior.p0, 0.0, 1.0, false);
    get_double("behavior.q_amount", p.behavior.q_amount, 0.0, kInf, true);
    get_double("behavior.beta", p.behavior.beta, 0.0, kInf, false);
    get_double("behavior.delta", p.behavior.delta, 0.0, kInf, false);
    get_double("behavior.w_own", p.behavior.w_own, -kInf, kInf, true);
    get_double("behavior.w_other", p.behavior.w_other, -kInf, kInf, true);
    get_double("behavior.inertia0", p.behavior.inertia[0], 0.0, kInf, false);
    get_double("behavior.inertia45", p.behavior.inertia[1], 0.0, kInf, false);
    get_double("behavior.inertia90", p.behavior.inertia[2], 0.0, kInf, false);
    get_double("behavior.inertia135", p.behavior.inertia[3], 0.0, kInf, false);
    get_double("behavior.inertia180", p.behavior.inertia[4], 0.0, kInf, false);

    get_double("dynamics.rho", p.rho, 0.0, 1.0, false);
    get_double("dynamics.lambda", p.lambda, 0.0, 1.0, false);
    get_double("dynamics.sigma_max", p.sigma_max, 0.0, kInf, true);
    get_double("dynamics.eps_floor", p.eps_floor, 0.0, kInf, false);

    if (const auto e = take("run.seed")) {
        p.seed = parse_unsigned(*e, "run.seed", 0, UINT64_MAX);
    }
    if (const auto e = take("run.ticks")) {
        p.ticks = parse_unsigned(*e, "run.ticks", 0, UINT64_MAX);
    }
    if (const auto e = take("run.metrics_every")) {
        p.metrics_every = parse_unsigned(*e, "run.metrics_every", 1, UINT64_MAX);
    }

    if (const auto e = take("render.permanent")) {
        if (e->value == "true") {
            p.render_permanent = true;
        } else if (e->value == "false") {
            p.render_permanent = false;
        } else {
            throw ConfigError(where(*e, "render.permanent") +
                              " must be 'true' or 'false' (got '" + e->value +
                              "')");
        }
    }

    if (const auto e = take("palette.background")) {
        p.palette.background = parse_color(*e, "palette.background");
    }
    get_double("palette.exposure", p.palette.exposure, 0.0, kInf, true);

    p.palette.channel_colors = default_channel_colors(p.channels);
    for (uint16_t c = 0; c < p.channels; ++c) {
        const std::string key = "palette.channel" + std::to_string(c);
        if (const auto e = take(key)) {
            p.palette.channel_colors[c] = parse_color(*e, key);
        }
    }

    if (!entries.empty()) {
        const Entry* first = nullptr;
        std::string_view first_key;
        for (const auto& [key, entry] : entries) {
            if (!first || entry.line < first->line) {
                first = &entry;
                first_key = key;
            }
        }
        constexpr std::string_view kChannelPrefix = "palette.channel";
        if (first_key.starts_with(kChannelPrefix) &&
            first_key.size() > kChannelPrefix.size()) {
            const auto suffix = first_key.substr(kChannelPrefix.size());
            bool numeric = true;
            for (char c : suffix) {
                if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
            }
            if (numeric) {
                throw ConfigError(where(*first, first_key) +
                                  " exceeds field.channels (" +
                                  std::to_string(p.channels) + ")");
            }
        }
        throw ConfigError("line " + std::to_string(first->line) +
                          ": unknown key '" + std::string(first_key) + "'");
    }

    p.finalize();
    p.validate();
    return p;
}

SimParams load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw DataError("failed reading " + path.string());
    return parse_config(buffer.str());
}

std::string serialize_config(const SimParams& params) {
    std::string out;
    auto put = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };

    put("field.width", std::to_string(params.width));
    put("field.height", std::to_string(params.height));
    put("field.channels", std::to_string(params.channels));
    put("field.boundary",
        params.boundary == Boundary::Bounded ? "bounded" : "toroidal");
    put("agents.count", std::to_string(params.agent_count));
    put("agents.max", std::to_string(params.agent_max));
    const BehaviorParams& b = params.behavior;
    put("behavior.theta", double_text(b.theta));
    put("behavior.n", double_text(b.n));
    put("behavior.p0", double_text(b.p0));
    put("behavior.q_amount", double_text(b.q_amount));
    put("behavior.beta", double_text(b.beta));
    put("behavior.delta", double_text(b.delta));
    put("behavior.w_own", double_text(b.w_own));
    put("behavior.w_other", double_text(b.w_other));
    put("behavior.inertia0", double_text(b.inertia[0]));
    put("behavior.inertia45", double_text(b.inertia[1]));
    put("behavior.inertia90", double_text(b.inertia[2]));
    put("behavior.inertia135", double_text(b.inertia[3]));
    put("behavior.inertia180", double_text(b.inertia[4]));
    put("dynamics.rho", double_text(params.rho));
    put("dynamics.lambda", double_text(params.lambda));
    put("dynamics.sigma_max", double_text(params.sigma_max));
    put("dynamics.eps_floor", double_text(params.eps_floor));
    put("run.seed", std::to_string(params.seed));
    put("run.ticks", std::to_string(params.ticks));
    put("run.metrics_every", std::to_string(params.metrics_every));
    put("render.permanent", params.render_permanent ? "true" : "false");
    put("palette.background", color_text(params.palette.background));
    put("palette.exposure", double_text(params.palette.exposure));
    for (size_t c = 0; c < params.palette.channel_colors.size(); ++c) {
        put("palette.channel" + std::to_string(c),
            color_text(params.palette.channel_colors[c]));
    }
    return out;
}

}  // namespace swarm
