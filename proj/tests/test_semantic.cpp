#include "egonets/semantic.hpp"

#include <map>

#include "doctest.h"
#include "egonets/rng.hpp"

using namespace egonets;

namespace {

const PeriodSchedule kSchedule;

InteractionRecord labeled(UserId ego, int period, std::optional<TopicId> topic,
                          InteractionKind kind = InteractionKind::reply) {
    static int counter = 0;
    InteractionRecord r;
    r.ego_id = ego;
    r.alter_id = ego + 1;
    r.kind = kind;
    r.topic = topic;
    r.timestamp = kSchedule.period(period).start + (++counter % 360) * kSecondsPerDay;
    return r;
}

}  // namespace

TEST_CASE("topic profile: set semantics, outliers, retweets") {
    std::vector<InteractionRecord> records;
    for (const TopicId t : {3, 3, 7, -1, 12}) {
        records.push_back(labeled(1, 0, t));
    }
    records.push_back(labeled(1, 0, 5, InteractionKind::retweet));  // ignored
    records.push_back(labeled(1, 0, std::nullopt));                 // unlabeled, not considered
    records.push_back(labeled(2, 0, 9));                            // other ego
    records.push_back(labeled(1, 1, 8));                            // other period

    const auto profile = topic_profile(1, kSchedule.period(0), records);
    CHECK(profile.topics == std::set<TopicId>{3, 7, 12});
    CHECK(profile.unique_count() == 3);
    CHECK(profile.n_outlier_tweets == 1);
    CHECK(profile.n_considered_tweets == 5);

    // All-outlier case.
    std::vector<InteractionRecord> outliers;
    for (int i = 0; i < 4; ++i) outliers.push_back(labeled(1, 0, kTopicOutlier));
    const auto all_outlier = topic_profile(1, kSchedule.period(0), outliers);
    CHECK(all_outlier.unique_count() == 0);
    CHECK(all_outlier.n_outlier_tweets == 4);

    // No labeled records: flagged by considered == 0.
    const auto none = topic_profile(42, kSchedule.period(0), records);
    CHECK(none.n_considered_tweets == 0);
    CHECK(none.unique_count() == 0);
}

TEST_CASE("unique count invariances") {
    Rng rng(47);
    std::vector<InteractionRecord> records;
    for (int i = 0; i < 60; ++i) {
        records.push_back(labeled(1, 0, static_cast<TopicId>(rng.bounded(12)) - 1));
    }
    const auto base = topic_profile(1, kSchedule.period(0), records);

    // Duplicating records with the same label changes nothing.
    auto doubled = records;
    doubled.insert(doubled.end(), records.begin(), records.end());
    CHECK(topic_profile(1, kSchedule.period(0), doubled).unique_count() == base.unique_count());

    // A record with a brand-new label adds exactly one.
    auto extended = records;
    extended.push_back(labeled(1, 0, 999));
    CHECK(topic_profile(1, kSchedule.period(0), extended).unique_count() ==
          base.unique_count() + 1);

    // Relabeling by a bijection on non-negative labels preserves the count.
    std::map<TopicId, TopicId> bijection;
    auto relabeled = records;
    for (auto& r : relabeled) {
        if (r.topic && *r.topic >= 0) {
            if (!bijection.contains(*r.topic)) {
                bijection[*r.topic] = static_cast<TopicId>(1000 + 7 * *r.topic);
            }
            r.topic = bijection[*r.topic];
        }
    }
    CHECK(topic_profile(1, kSchedule.period(0), relabeled).unique_count() == base.unique_count());
}

TEST_CASE("diversity series: pass-through and missing cells") {
    std::vector<InteractionRecord> records;
    const std::vector<int> counts{2, 2, 2, 2, 2, 4, 2};
    for (int k = 0; k < 7; ++k) {
        for (int t = 0; t < counts[static_cast<std::size_t>(k)]; ++t) {
            records.push_back(labeled(1, k, t));
        }
    }
    // User 2 has labels only in period 0.
    records.push_back(labeled(2, 0, 1));

    const std::vector<UserId> cohort{1, 2};
    const MetricSeries series = diversity_series(cohort, kSchedule, records);
    for (int k = 0; k < 7; ++k) {
        REQUIRE(series.get(1, k).has_value());
        CHECK(*series.get(1, k) == counts[static_cast<std::size_t>(k)]);
    }
    CHECK(series.get(2, 0).has_value());
    CHECK(!series.get(2, 3).has_value());  // no labeled records -> missing

    const MetricSeries empty = diversity_series(std::vector<UserId>{}, kSchedule, records);
    CHECK(empty.values.empty());
}
