#pragma once
// Synthetic cohort generator with planted ground truth. Each ego gets
// layered alter pools; per period, a layer activates a random subset of its
// pool and every activated tie receives enough events to clear the activity
// threshold plus a Poisson excess, so the planted active sets are exact.
// Per-period multipliers plant shocks in size, negativity, and topic breadth.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "egonets/records.hpp"
#include "egonets/time.hpp"

namespace egonets {

struct SynthLayer {
    double mean_size = 0.0;       // expected active alters per period
    double frequency_mean = 0.0;  // target contact frequency, events/year
};

struct ShockConfig {
    std::size_t cohort_size = 100;
    std::uint64_t seed = 1;
    // Inner to outer; frequency means must be strictly decreasing.
    std::vector<SynthLayer> layers = {{5.0, 50.0}, {15.0, 15.0}, {60.0, 4.0}};
    // Per-period multipliers; empty means flat 1.0 everywhere.
    std::vector<double> size_multipliers;
    std::vector<double> topic_pool_multipliers;
    // Per-period probability that a non-retweet interaction is negative.
    std::vector<double> negative_probability;
    double base_negative_probability = 0.10;

    std::size_t topic_pool_base = 400;
    double topic_outlier_probability = 0.10;
    // Per-alter activation probability at multiplier 1. Headroom for the
    // usual 1.5x size shock: participation * multiplier must stay <= 1.
    double participation = 0.6;
    double active_threshold = 1.0;

    // Interaction kind mix (normalized at generation time).
    double p_reply = 0.40;
    double p_mention = 0.40;
    double p_retweet = 0.15;
    double p_quote = 0.05;
};

struct GroundTruth {
    ShockConfig config;
    // Per ego: the half-open alter-id range of each layer's pool.
    std::map<UserId, std::vector<std::pair<UserId, UserId>>> layer_pools;
    // Per ego: realized planted active size per period.
    std::map<UserId, std::vector<std::size_t>> planted_active_size;

    int layer_of(UserId ego, UserId alter) const;  // -1 if not planted
    std::string to_json() const;
};

struct SynthResult {
    std::vector<InteractionRecord> records;  // ordered by (ego, period, alter, event)
    GroundTruth truth;
};

// Deterministic given (config, schedule); throws std::invalid_argument on an
// infeasible config (e.g. participation * multiplier > 1).
SynthResult generate_cohort(const ShockConfig& config, const PeriodSchedule& schedule);

// Events granted to every planted tie before the Poisson excess: enough to
// clear the activity threshold in the longest period, so planted ties are
// active everywhere and event counts are identically distributed across
// periods (leap-year lengths leak no period signal into the null scenario).
std::uint64_t synth_floor_events(const ShockConfig& config, const PeriodSchedule& schedule);

// Direct frequency-profile generator for ring-recovery checks: layer values
// drawn uniformly from [mean - half_width, mean + half_width].
struct PlantedLayer {
    std::size_t size = 0;
    double mean = 0.0;
    double half_width = 0.0;
};

struct PlantedProfile {
    std::vector<double> frequencies;
    std::vector<int> layer_of;  // planted layer per frequency, 0 = innermost
};

PlantedProfile planted_profile(const std::vector<PlantedLayer>& layers, std::uint64_t seed);

}  // namespace egonets
