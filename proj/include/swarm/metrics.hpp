#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarm/field.hpp"
#include "swarm/params.hpp"
#include "swarm/world.hpp"

namespace swarm {

// Order statistics for one sampled tick. `deposits` is cumulative since
// tick 0. On a fully blank field `similarity` is recorded as 0 because the
// underlying score is undefined there.
struct MetricsRecord {
    uint64_t tick = 0;
    std::vector<double> entropy;  // bits, per channel
    double similarity = 0.0;
    double coverage = 0.0;
    std::vector<double> mass;  // per channel
    std::vector<uint64_t> deposits;
};

// Shannon entropy in bits of one channel's intensities normalized over
// cells. A massless channel carries no spatial information and returns the
// maximum log2(cell count) by convention.
double spatial_entropy(const CanvasField& field, uint16_t channel);

// Mean cosine similarity between each positive-mass cell's channel vector
// and the mean vector of its positive-mass Moore neighbors. Cells with no
// positive-mass neighbor contribute 0. Throws DataError on a blank field.
double local_similarity(const CanvasField& field);

// Fraction of cells whose summed-channel intensity strictly exceeds the
// threshold.
double coverage(const CanvasField& field, double threshold);

MetricsRecord sample_metrics(const WorldState& world);

// Delimiter-separated table: fixed column order, 9 significant digits.
std::string metrics_header(uint16_t channels);
std::string metrics_row(const MetricsRecord& record);

// Runs `ticks` steps recording a row for the starting tick, every
// `every`-th tick, and the final tick. `extra` (optional) fires after each
// step before sampling.
std::vector<MetricsRecord> run_collecting_metrics(WorldState& world,
                                                  uint64_t ticks,
                                                  uint64_t every,
                                                  const TickObserver& extra = {});

// A coupled run and its coupling-severed twin. The null run reuses the
// same seed with w_own = w_other = 0 and the deposit probability pinned to
// the coupled run's realized per-step deposit rate, so both runs lay
// statistically equal ink.
struct NullComparison {
    std::vector<MetricsRecord> coupled_series;
    std::vector<MetricsRecord> null_series;
    WorldState coupled_final;
    WorldState null_final;
    double matched_rate = 0.0;
};

NullComparison run_with_null(const SimParams& params);

// Just the severed twin's metric series.
std::vector<MetricsRecord> null_model_run(const SimParams& params);

}  // namespace swarm
