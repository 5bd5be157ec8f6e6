#include "swarm/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "swarm/errors.hpp"

namespace swarm {

namespace {

double cell_sum(const CanvasField& field, uint32_t x, uint32_t y) {
    double sum = 0.0;
    for (uint16_t c = 0; c < field.channels(); ++c) sum += field.at(x, y, c);
    return sum;
}

void append_number(std::string& out, double v) {
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    out.append(buf, res.ptr);
}

void append_number(std::string& out, uint64_t v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

}  // namespace

double spatial_entropy(const CanvasField& field, uint16_t channel) {
    const double total = field.total_mass(channel);
    const auto cells = static_cast<double>(field.cell_count());
    if (total <= 0.0) return std::log2(cells);
    double bits = 0.0;
    const auto values = field.values();
    const uint16_t stride = field.channels();
    for (size_t i = channel; i < values.size(); i += stride) {
        const double v = values[i];
        if (v <= 0.0) continue;
        const double p = v / total;
        bits -= p * std::log2(p);
    }
    return bits < 0.0 ? 0.0 : bits;
}

double local_similarity(const CanvasField& field) {
    const uint16_t channels = field.channels();
    std::vector<double> mean(channels);
    double score_sum = 0.0;
    size_t positive_cells = 0;

    for (uint32_t y = 0; y < field.height(); ++y) {
        for (uint32_t x = 0; x < field.width(); ++x) {
            if (cell_sum(field, x, y) <= 0.0) continue;
            ++positive_cells;

            std::fill(mean.begin(), mean.end(), 0.0);
            size_t neighbors = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const auto nb = field.offset({x, y}, dx, dy);
                    if (!nb || cell_sum(field, nb->x, nb->y) <= 0.0) continue;
                    ++neighbors;
                    for (uint16_t c = 0; c < channels; ++c) {
                        mean[c] += field.at(nb->x, nb->y, c);
                    }
                }
            }
            if (neighbors == 0) continue;  // contributes 0

            double dot = 0.0;
            double norm_cell = 0.0;
            double norm_mean = 0.0;
            const double inv = 1.0 / static_cast<double>(neighbors);
            for (uint16_t c = 0; c < channels; ++c) {
                const double u = field.at(x, y, c);
                const double m = mean[c] * inv;
                dot += u * m;
                norm_cell += u * u;
                norm_mean += m * m;
            }
            score_sum += dot / std::sqrt(norm_cell * norm_mean);
        }
    }

    if (positive_cells == 0) {
        throw DataError("local_similarity is undefined on a blank field");
    }
    return score_sum / static_cast<double>(positive_cells);
}

double coverage(const CanvasField& field, double threshold) {
    size_t covered = 0;
    for (uint32_t y = 0; y < field.height(); ++y) {
        for (uint32_t x = 0; x < field.width(); ++x) {
            if (cell_sum(field, x, y) > threshold) ++covered;
        }
    }
    return static_cast<double>(covered) /
           static_cast<double>(field.cell_count());
}

MetricsRecord sample_metrics(const WorldState& world) {
    const CanvasField& field = world.field;
    MetricsRecord rec;
    rec.tick = world.tick;
    rec.entropy.reserve(field.channels());
    rec.mass.reserve(field.channels());
    bool blank = true;
    for (uint16_t c = 0; c < field.channels(); ++c) {
        rec.entropy.push_back(spatial_entropy(field, c));
        const double mass = field.total_mass(c);
        rec.mass.push_back(mass);
        if (mass > 0.0) blank = false;
    }
    rec.similarity = blank ? 0.0 : local_similarity(field);
    rec.coverage = coverage(field, 0.0);
    rec.deposits = world.deposit_events;
    return rec;
}

std::string metrics_header(uint16_t channels) {
    std::string out = "tick";
    for (uint16_t c = 0; c < channels; ++c) {
        out += ",entropy" + std::to_string(c);
    }
    out += ",similarity,coverage";
    for (uint16_t c = 0; c < channels; ++c) {
        out += ",mass" + std::to_string(c);
    }
    for (uint16_t c = 0; c < channels; ++c) {
        out += ",deposits" + std::to_string(c);
    }
    return out;
}

std::string metrics_row(const MetricsRecord& record) {
    std::string out;
    append_number(out, record.tick);
    for (double v : record.entropy) {
        out += ',';
        append_number(out, v);
    }
    out += ',';
    append_number(out, record.similarity);
    out += ',';
    append_number(out, record.coverage);
    for (double v : record.mass) {
        out += ',';
        append_number(out, v);
    }
    for (uint64_t v : record.deposits) {
        out += ',';
        append_number(out, v);
    }
    return out;
}

std::vector<MetricsRecord> run_collecting_metrics(WorldState& world,
                                                  uint64_t ticks,
                                                  uint64_t every,
                                                  const TickObserver& extra) {
    std::vector<MetricsRecord> series;
    series.push_back(sample_metrics(world));
    const uint64_t final_tick = world.tick + ticks;
    run(world, ticks, [&](const WorldState& w) {
        if (extra) extra(w);
        if ((every > 0 && w.tick % every == 0) || w.tick == final_tick) {
            series.push_back(sample_metrics(w));
        }
    });
    return series;
}

NullComparison run_with_null(const SimParams& params) {
    WorldState coupled = init_world(params);
    auto coupled_series = run_collecting_metrics(coupled, params.ticks,
                                                 params.metrics_every);

    uint64_t events = 0;
    for (uint64_t n : coupled.deposit_events) events += n;
    const auto draws = static_cast<double>(params.agent_count) *
                       static_cast<double>(params.ticks);
    const double rate =
        draws > 0.0 ? static_cast<double>(events) / draws : 0.0;

    SimParams null_params = params;
    null_params.behavior.w_own = 0.0;
    null_params.behavior.w_other = 0.0;
    null_params.behavior.p0 = rate;
    WorldState null_world = init_world(null_params);
    auto null_series = run_collecting_metrics(null_world, null_params.ticks,
                                              null_params.metrics_every);

    return NullComparison{std::move(coupled_series), std::move(null_series),
                          std::move(coupled), std::move(null_world), rate};
}

std::vector<MetricsRecord> null_model_run(const SimParams& params) {
    return run_with_null(params).null_series;
}

}  // namespace swarm
