#pragma once
// Topic-diversity profiles per (ego, period) from externally supplied topic
// labels. Retweets never contribute; the -1 outlier label is counted but
// never enters the topic set.

#include <set>
#include <span>
#include <vector>

#include "egonets/records.hpp"
#include "egonets/stats.hpp"
#include "egonets/time.hpp"

namespace egonets {

struct TopicProfile {
    UserId ego_id = 0;
    int period = 0;
    std::set<TopicId> topics;  // non-negative labels only
    std::size_t n_outlier_tweets = 0;
    std::size_t n_considered_tweets = 0;  // non-retweet records carrying a label

    std::size_t unique_count() const { return topics.size(); }
};

TopicProfile topic_profile(UserId ego, const Period& period,
                           std::span<const InteractionRecord> records);

// user x period matrix of unique topic counts ("unique_topics"); entries with
// no labeled records stay missing and are excluded from growth statistics.
MetricSeries diversity_series(std::span<const UserId> cohort, const PeriodSchedule& schedule,
                              std::span<const InteractionRecord> records);

}  // namespace egonets
