#include "egonets/semantic.hpp"

#include <unordered_map>
#include <unordered_set>

namespace egonets {

TopicProfile topic_profile(UserId ego, const Period& period,
                           std::span<const InteractionRecord> records) {
    TopicProfile profile;
    profile.ego_id = ego;
    profile.period = period.index;
    for (const auto& r : records) {
        if (r.ego_id != ego || !period.contains(r.timestamp)) continue;
        if (r.kind == InteractionKind::retweet) continue;
        if (!r.topic) continue;
        ++profile.n_considered_tweets;
        if (*r.topic == kTopicOutlier) {
            ++profile.n_outlier_tweets;
        } else {
            profile.topics.insert(*r.topic);
        }
    }
    return profile;
}

MetricSeries diversity_series(std::span<const UserId> cohort, const PeriodSchedule& schedule,
                              std::span<const InteractionRecord> records) {
    MetricSeries series;
    series.name = "unique_topics";
    series.period_count = schedule.count();

    const std::unordered_set<UserId> members(cohort.begin(), cohort.end());
    struct Cell {
        std::unordered_set<TopicId> topics;
        std::size_t considered = 0;
    };
    std::unordered_map<UserId, std::vector<Cell>> cells;
    for (const auto& r : records) {
        if (!members.contains(r.ego_id) || r.kind == InteractionKind::retweet || !r.topic) {
            continue;
        }
        const auto period = period_of(r.timestamp, schedule);
        if (!period) continue;
        auto& row = cells[r.ego_id];
        if (row.empty()) row.resize(static_cast<std::size_t>(schedule.count()));
        auto& cell = row[static_cast<std::size_t>(period->index)];
        ++cell.considered;
        if (*r.topic != kTopicOutlier) cell.topics.insert(*r.topic);
    }
    for (const UserId user : cohort) {
        const auto it = cells.find(user);
        if (it == cells.end()) continue;
        for (int k = 0; k < schedule.count(); ++k) {
            const auto& cell = it->second[static_cast<std::size_t>(k)];
            if (cell.considered == 0) continue;
            series.set(user, k, static_cast<double>(cell.topics.size()));
        }
    }
    return series;
}

}  // namespace egonets
