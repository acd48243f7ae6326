#include "egonets/synth.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "egonets/cohort.hpp"
#include "egonets/polarity.hpp"
#include "egonets/tally.hpp"

using namespace egonets;

namespace {

const PeriodSchedule kSchedule;

// Exact Poisson pmf by recurrence.
std::vector<double> poisson_pmf(double lambda, std::size_t max_k) {
    std::vector<double> pmf(max_k + 1);
    pmf[0] = std::exp(-lambda);
    for (std::size_t k = 1; k <= max_k; ++k) {
        pmf[k] = pmf[k - 1] * lambda / static_cast<double>(k);
    }
    return pmf;
}

// Distribution of negatives out of n slots with per-slot probability p.
std::vector<double> binomial_pmf(std::size_t n, double p) {
    std::vector<double> pmf(n + 1, 0.0);
    pmf[0] = 1.0;
    for (std::size_t slot = 0; slot < n; ++slot) {
        for (std::size_t k = slot + 1; k > 0; --k) {
            pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
        }
        pmf[0] *= 1.0 - p;
    }
    return pmf;
}

// Analytic P(tie negative) for one layer under the generator's model:
// count = floor + Poisson(excess); the first `floor` slots draw kinds
// without quotes, the rest with quotes; non-retweet slots are negative with
// probability q; sign is negative iff negatives > threshold * count.
double tie_negative_probability(const ShockConfig& config, double frequency_mean,
                                std::size_t floor_events, double q, double threshold) {
    const double excess = std::max(0.0, frequency_mean - static_cast<double>(floor_events));

    const double core_total = config.p_reply + config.p_mention + config.p_retweet;
    const double full_total = core_total + config.p_quote;
    const double q_core = (1.0 - config.p_retweet / core_total) * q;
    const double q_full = (1.0 - config.p_retweet / full_total) * q;

    const auto max_extra = static_cast<std::size_t>(excess + 12.0 * std::sqrt(excess + 1.0)) + 8;
    const auto pois = poisson_pmf(excess, max_extra);
    const auto core_pmf = binomial_pmf(floor_events, q_core);

    double p_negative = 0.0;
    for (std::size_t extra = 0; extra <= max_extra; ++extra) {
        const std::size_t total = floor_events + extra;
        const auto extra_pmf = binomial_pmf(extra, q_full);
        double p_exceeds = 0.0;
        for (std::size_t a = 0; a <= floor_events; ++a) {
            for (std::size_t b = 0; b <= extra; ++b) {
                if (static_cast<double>(a + b) > threshold * static_cast<double>(total)) {
                    p_exceeds += core_pmf[a] * extra_pmf[b];
                }
            }
        }
        p_negative += pois[extra] * p_exceeds;
    }
    return p_negative;
}

}  // namespace

TEST_CASE("generation is deterministic and validated") {
    ShockConfig config;
    config.cohort_size = 8;
    config.seed = 99;
    const auto a = generate_cohort(config, kSchedule);
    const auto b = generate_cohort(config, kSchedule);
    CHECK(a.records == b.records);

    std::ostringstream sa, sb;
    write_store(sa, a.records);
    write_store(sb, b.records);
    CHECK(sa.str() == sb.str());

    config.seed = 100;
    const auto c = generate_cohort(config, kSchedule);
    CHECK(a.records != c.records);

    ShockConfig infeasible;
    infeasible.participation = 0.9;
    infeasible.size_multipliers.assign(7, 1.0);
    infeasible.size_multipliers[5] = 1.5;  // 0.9 * 1.5 > 1
    CHECK_THROWS(generate_cohort(infeasible, kSchedule));

    ShockConfig bad_layers;
    bad_layers.layers = {{5.0, 10.0}, {10.0, 20.0}};  // frequencies increase outward
    CHECK_THROWS(generate_cohort(bad_layers, kSchedule));
}

TEST_CASE("planted active ties are exactly the active ego network") {
    ShockConfig config;
    config.cohort_size = 25;
    config.seed = 7;
    const auto result = generate_cohort(config, kSchedule);
    const auto index = TallyIndex::build(result.records, kSchedule);

    for (const auto& [ego, planted] : result.truth.planted_active_size) {
        for (int k = 0; k < kSchedule.count(); ++k) {
            const auto size = index.active_size(ego, kSchedule.period(k), 1.0, {});
            CHECK(size == planted[static_cast<std::size_t>(k)]);
        }
    }

    // Every planted alter belongs to a known layer.
    for (const auto& tie : index.ties_of(1000, 0)) {
        CHECK(result.truth.layer_of(1000, tie.alter) >= 0);
    }

    // Size multiplier moves the mean active size as planted.
    ShockConfig shocked = config;
    shocked.size_multipliers.assign(7, 1.0);
    shocked.size_multipliers[5] = 1.5;
    const auto shock_result = generate_cohort(shocked, kSchedule);
    double base = 0.0, peak = 0.0;
    for (const auto& [ego, planted] : shock_result.truth.planted_active_size) {
        base += static_cast<double>(planted[4]);
        peak += static_cast<double>(planted[5]);
    }
    CHECK(peak / base > 1.35);
    CHECK(peak / base < 1.65);
}

TEST_CASE("planted sign model matches the binomial-threshold oracle") {
    ShockConfig config;
    config.cohort_size = 150;
    config.seed = 21;
    config.negative_probability.assign(7, 0.10);
    config.negative_probability[5] = 0.18;
    const auto result = generate_cohort(config, kSchedule);
    const auto index = TallyIndex::build(result.records, kSchedule);
    const PolarityOptions polarity_options;

    const auto floor_events = static_cast<std::size_t>(synth_floor_events(config, kSchedule));
    for (const int k : {1, 5}) {
        const Period& period = kSchedule.period(k);
        const double q = config.negative_probability[static_cast<std::size_t>(k)];

        // Analytic expectation: layer-weighted tie-negative probability.
        double weighted = 0.0, weight = 0.0;
        for (const auto& layer : config.layers) {
            const double p_neg =
                tie_negative_probability(config, layer.frequency_mean, floor_events, q, 0.17);
            weighted += layer.mean_size * p_neg;
            weight += layer.mean_size;
        }
        const double expected_pct = 100.0 * weighted / weight;

        double total_pct = 0.0;
        std::size_t egos = 0;
        for (const auto& [ego, pools] : result.truth.layer_pools) {
            EgoNetworkSnapshot snap;
            snap.ego_id = ego;
            snap.period = k;
            snap.ties = active_ties(index.tie_frequencies(ego, period, {}), 1.0);
            snap.active_size = snap.ties.size();
            const auto classified = classify_active_ties(snap, index, polarity_options);
            const auto summary =
                polarity_percentages(snap, classified.ties, classified.n_unlabeled_excluded);
            if (!summary) continue;
            total_pct += summary->pct_negative;
            ++egos;
        }
        REQUIRE(egos > 100);
        const double observed_pct = total_pct / static_cast<double>(egos);
        CHECK(std::abs(observed_pct - expected_pct) < 2.0);
    }
}

TEST_CASE("topic draws follow the coupon-collector expectation") {
    ShockConfig config;
    config.cohort_size = 60;
    config.seed = 5;
    config.topic_pool_base = 300;
    const auto result = generate_cohort(config, kSchedule);

    const int k = 2;
    const Period& period = kSchedule.period(k);
    const double pool = static_cast<double>(config.topic_pool_base);
    const double q_out = config.topic_outlier_probability;

    // Tally per-ego topic-bearing records and unique topics in period k.
    struct Cell {
        std::size_t draws = 0;
        std::set<TopicId> topics;
    };
    std::map<UserId, Cell> cells;
    for (const auto& r : result.records) {
        if (!period.contains(r.timestamp) || !r.topic) continue;
        auto& cell = cells[r.ego_id];
        ++cell.draws;
        if (*r.topic >= 0) cell.topics.insert(*r.topic);
    }
    REQUIRE(cells.size() == config.cohort_size);

    double observed = 0.0, expected = 0.0;
    for (const auto& [ego, cell] : cells) {
        observed += static_cast<double>(cell.topics.size());
        expected += pool * (1.0 - std::pow(1.0 - (1.0 - q_out) / pool,
                                           static_cast<double>(cell.draws)));
    }
    observed /= static_cast<double>(cells.size());
    expected /= static_cast<double>(cells.size());
    CHECK(std::abs(observed - expected) / expected < 0.02);
}

TEST_CASE("synthetic cohort passes the longitudinal filters") {
    ShockConfig config;
    config.cohort_size = 40;
    config.seed = 3;
    const auto result = generate_cohort(config, kSchedule);
    const auto cohort = longitudinal_cohort(result.records, kSchedule);
    // All egos are regular and active; only IQR outliers may drop.
    CHECK(cohort.report.per_stage_counts[0].second == 40);
    CHECK(cohort.report.per_stage_counts[1].second == 40);
    CHECK(cohort.users.size() >= 35);
}
