#include "egonets/egonet.hpp"

#include <algorithm>
#include <map>

namespace egonets {

std::vector<TieFrequency> contact_frequencies(UserId ego, const Period& period,
                                              std::span<const InteractionRecord> records,
                                              const FrequencyOptions& options) {
    std::map<UserId, TieFrequency> by_alter;
    for (const auto& r : records) {
        if (r.ego_id != ego || !period.contains(r.timestamp)) continue;
        auto& tie = by_alter[r.alter_id];
        tie.alter_id = r.alter_id;
        ++tie.events_by_kind[static_cast<std::size_t>(r.kind)];
    }
    std::vector<TieFrequency> ties;
    ties.reserve(by_alter.size());
    const double years = period.length_years();
    for (auto& [alter, tie] : by_alter) {
        double numerator = tie.events(InteractionKind::reply) +
                           tie.events(InteractionKind::mention) +
                           tie.events(InteractionKind::retweet);
        if (options.include_quotes) numerator += tie.events(InteractionKind::quote);
        tie.frequency = numerator / years;
        ties.push_back(tie);
    }
    return ties;
}

std::vector<TieFrequency> active_ties(std::vector<TieFrequency> ties, double threshold) {
    std::erase_if(ties, [threshold](const TieFrequency& t) { return t.frequency < threshold; });
    return ties;
}

double EgoNetworkSnapshot::normalized_rank(UserId alter) const {
    for (std::size_t r = 0; r < rings.size(); ++r) {
        if (std::binary_search(rings[r].begin(), rings[r].end(), alter)) {
            return static_cast<double>(r + 1) / static_cast<double>(rings.size());
        }
    }
    return 0.0;
}

EgoNetworkSnapshot snapshot_from_ties(UserId ego, const Period& period,
                                      std::vector<TieFrequency> ties,
                                      const SnapshotOptions& options) {
    EgoNetworkSnapshot snap;
    snap.ego_id = ego;
    snap.period = period.index;

    snap.ties = active_ties(std::move(ties), options.active_threshold);
    std::sort(snap.ties.begin(), snap.ties.end(),
              [](const TieFrequency& a, const TieFrequency& b) { return a.alter_id < b.alter_id; });
    snap.active_size = snap.ties.size();
    if (snap.ties.empty()) return snap;  // flagged by active_size == 0

    std::vector<double> frequencies;
    frequencies.reserve(snap.ties.size());
    for (const auto& t : snap.ties) frequencies.push_back(t.frequency);

    const MeanShiftResult ms = mean_shift_rings(frequencies, options.meanshift);
    snap.bandwidth = ms.bandwidth;
    snap.ring_means = ms.ring_means;
    snap.rings.assign(static_cast<std::size_t>(ms.ring_count()), {});
    for (std::size_t i = 0; i < snap.ties.size(); ++i) {
        snap.rings[static_cast<std::size_t>(ms.labels[i])].push_back(snap.ties[i].alter_id);
    }
    // Ties are alter-sorted, so each ring inherits sorted order.
    std::size_t cumulative = 0;
    for (const auto& ring : snap.rings) {
        cumulative += ring.size();
        snap.circle_sizes.push_back(cumulative);
    }
    return snap;
}

EgoNetworkSnapshot build_snapshot(UserId ego, const Period& period,
                                  std::span<const InteractionRecord> records,
                                  const SnapshotOptions& options) {
    return snapshot_from_ties(ego, period,
                              contact_frequencies(ego, period, records, options.frequency),
                              options);
}

RingTransitionSummary ring_transition_summary(const EgoNetworkSnapshot& a,
                                              const EgoNetworkSnapshot& b) {
    RingTransitionSummary out;
    for (const auto& tie : a.ties) {
        const double rank_a = a.normalized_rank(tie.alter_id);
        const double rank_b = b.normalized_rank(tie.alter_id);
        if (rank_b == 0.0) {
            ++out.exited;
        } else if (rank_b < rank_a) {
            ++out.moved_inward;
        } else if (rank_b > rank_a) {
            ++out.moved_outward;
        } else {
            ++out.stayed;
        }
    }
    for (const auto& tie : b.ties) {
        if (a.normalized_rank(tie.alter_id) == 0.0) ++out.entered;
    }
    return out;
}

}  // namespace egonets
