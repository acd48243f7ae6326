#include "egonets/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "egonets/rng.hpp"
#include "json.hpp"

namespace egonets {

namespace {

constexpr UserId kEgoBase = 1000;
constexpr UserId kAlterBase = 10'000'000;
constexpr UserId kAlterStride = 100'000;  // id space reserved per ego

double multiplier_at(const std::vector<double>& multipliers, int period) {
    if (multipliers.empty()) return 1.0;
    return multipliers.at(static_cast<std::size_t>(period));
}

void validate(const ShockConfig& config, const PeriodSchedule& schedule) {
    if (config.cohort_size == 0) throw std::invalid_argument("synth: empty cohort");
    if (config.layers.empty()) throw std::invalid_argument("synth: no layers");
    for (std::size_t l = 1; l < config.layers.size(); ++l) {
        if (!(config.layers[l].frequency_mean < config.layers[l - 1].frequency_mean)) {
            throw std::invalid_argument("synth: layer frequency means must decrease outward");
        }
    }
    if (!(config.participation > 0.0) || config.participation > 1.0) {
        throw std::invalid_argument("synth: participation must be in (0, 1]");
    }
    for (const auto& multipliers :
         {config.size_multipliers, config.topic_pool_multipliers, config.negative_probability}) {
        if (!multipliers.empty() &&
            multipliers.size() != static_cast<std::size_t>(schedule.count())) {
            throw std::invalid_argument("synth: per-period vectors must match the schedule");
        }
    }
    for (int k = 0; k < schedule.count(); ++k) {
        if (config.participation * multiplier_at(config.size_multipliers, k) > 1.0 + 1e-12) {
            throw std::invalid_argument(
                "synth: size multiplier pushes layer participation above its alter pool");
        }
        const double neg = config.negative_probability.empty()
                               ? config.base_negative_probability
                               : config.negative_probability[static_cast<std::size_t>(k)];
        if (neg < 0.0 || neg > 1.0) throw std::invalid_argument("synth: negative probability outside [0, 1]");
    }
    const double kind_sum = config.p_reply + config.p_mention + config.p_retweet + config.p_quote;
    if (!(kind_sum > 0.0)) throw std::invalid_argument("synth: interaction kind mix is empty");
    if (config.p_reply + config.p_mention + config.p_retweet <= 0.0) {
        throw std::invalid_argument("synth: need a frequency-bearing interaction kind");
    }
}

InteractionKind draw_kind(Rng& rng, double p_reply, double p_mention, double p_retweet,
                          double p_quote) {
    const double total = p_reply + p_mention + p_retweet + p_quote;
    const double u = rng.uniform01() * total;
    if (u < p_reply) return InteractionKind::reply;
    if (u < p_reply + p_mention) return InteractionKind::mention;
    if (u < p_reply + p_mention + p_retweet) return InteractionKind::retweet;
    return InteractionKind::quote;
}

}  // namespace

int GroundTruth::layer_of(UserId ego, UserId alter) const {
    const auto it = layer_pools.find(ego);
    if (it == layer_pools.end()) return -1;
    for (std::size_t l = 0; l < it->second.size(); ++l) {
        if (alter >= it->second[l].first && alter < it->second[l].second) {
            return static_cast<int>(l);
        }
    }
    return -1;
}

std::string GroundTruth::to_json() const {
    nlohmann::json j;
    j["cohort_size"] = config.cohort_size;
    j["seed"] = config.seed;
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : config.layers) {
        layers.push_back({{"mean_size", layer.mean_size}, {"frequency_mean", layer.frequency_mean}});
    }
    j["layers"] = layers;
    j["size_multipliers"] = config.size_multipliers;
    j["topic_pool_multipliers"] = config.topic_pool_multipliers;
    j["negative_probability"] = config.negative_probability;
    j["topic_pool_base"] = config.topic_pool_base;
    j["topic_outlier_probability"] = config.topic_outlier_probability;
    j["participation"] = config.participation;

    nlohmann::json egos = nlohmann::json::object();
    for (const auto& [ego, pools] : layer_pools) {
        nlohmann::json pool_ranges = nlohmann::json::array();
        for (const auto& [lo, hi] : pools) pool_ranges.push_back({lo, hi});
        nlohmann::json sizes = nlohmann::json::array();
        const auto planted = planted_active_size.find(ego);
        if (planted != planted_active_size.end()) {
            for (const std::size_t s : planted->second) sizes.push_back(s);
        }
        egos[std::to_string(ego)] = {{"layer_pools", pool_ranges},
                                     {"planted_active_size", sizes}};
    }
    j["egos"] = egos;
    return j.dump(2);
}

std::uint64_t synth_floor_events(const ShockConfig& config, const PeriodSchedule& schedule) {
    double max_length = 0.0;
    for (const auto& period : schedule.periods()) {
        max_length = std::max(max_length, period.length_years());
    }
    return std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(config.active_threshold * max_length - 1e-9)));
}

SynthResult generate_cohort(const ShockConfig& config, const PeriodSchedule& schedule) {
    validate(config, schedule);
    SynthResult result;
    result.truth.config = config;

    const int period_count = schedule.count();
    const std::uint64_t floor_events = synth_floor_events(config, schedule);

    for (std::size_t e = 0; e < config.cohort_size; ++e) {
        const UserId ego = kEgoBase + e;
        Rng rng(Rng::mix(config.seed, ego));

        // Layer pools sized so that full participation covers the mean.
        std::vector<std::pair<UserId, UserId>> pools;
        UserId next_alter = kAlterBase + static_cast<UserId>(e) * kAlterStride;
        for (const auto& layer : config.layers) {
            const auto pool =
                static_cast<UserId>(std::ceil(layer.mean_size / config.participation));
            pools.emplace_back(next_alter, next_alter + pool);
            next_alter += pool;
        }
        result.truth.layer_pools[ego] = pools;
        auto& planted_sizes = result.truth.planted_active_size[ego];
        planted_sizes.assign(static_cast<std::size_t>(period_count), 0);

        for (int k = 0; k < period_count; ++k) {
            const Period& period = schedule.period(k);
            const double span = static_cast<double>(period.end - period.start);
            const double p_active =
                std::min(1.0, config.participation * multiplier_at(config.size_multipliers, k));
            const double p_negative = config.negative_probability.empty()
                                          ? config.base_negative_probability
                                          : config.negative_probability[static_cast<std::size_t>(k)];
            const auto topic_pool = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(
                       static_cast<double>(config.topic_pool_base) *
                       multiplier_at(config.topic_pool_multipliers, k))));

            for (std::size_t l = 0; l < config.layers.size(); ++l) {
                const double excess = std::max(
                    0.0, config.layers[l].frequency_mean - static_cast<double>(floor_events));
                for (UserId alter = pools[l].first; alter < pools[l].second; ++alter) {
                    if (!rng.bernoulli(p_active)) continue;
                    ++planted_sizes[static_cast<std::size_t>(k)];
                    const std::uint64_t events = floor_events + rng.poisson(excess);
                    for (std::uint64_t j = 0; j < events; ++j) {
                        InteractionRecord rec;
                        rec.ego_id = ego;
                        rec.alter_id = alter;
                        rec.timestamp =
                            period.start + static_cast<Timestamp>(rng.uniform01() * span);
                        // The first floor_events stay quote-free so the
                        // frequency numerator itself clears the threshold.
                        rec.kind = j < floor_events
                                       ? draw_kind(rng, config.p_reply, config.p_mention,
                                                   config.p_retweet, 0.0)
                                       : draw_kind(rng, config.p_reply, config.p_mention,
                                                   config.p_retweet, config.p_quote);
                        if (rec.kind == InteractionKind::retweet) {
                            rec.polarity = PolarityLabel::neutral;
                        } else {
                            rec.polarity = rng.bernoulli(p_negative) ? PolarityLabel::negative
                                                                     : PolarityLabel::positive;
                            rec.topic = rng.bernoulli(config.topic_outlier_probability)
                                            ? kTopicOutlier
                                            : static_cast<TopicId>(rng.bounded(topic_pool));
                        }
                        result.records.push_back(std::move(rec));
                    }
                }
            }
        }
    }
    return result;
}

PlantedProfile planted_profile(const std::vector<PlantedLayer>& layers, std::uint64_t seed) {
    PlantedProfile profile;
    Rng rng(seed);
    for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t i = 0; i < layers[l].size; ++i) {
            profile.frequencies.push_back(
                rng.uniform(layers[l].mean - layers[l].half_width,
                            layers[l].mean + layers[l].half_width));
            profile.layer_of.push_back(static_cast<int>(l));
        }
    }
    return profile;
}

}  // namespace egonets
