#pragma once
// Layered ego networks per (ego, period): contact frequencies, the active
// tie set, Mean Shift rings, cumulative circles, and cross-period ring
// transitions.

#include <array>
#include <span>
#include <vector>

#include "egonets/meanshift.hpp"
#include "egonets/records.hpp"
#include "egonets/time.hpp"

namespace egonets {

struct TieFrequency {
    UserId alter_id = 0;
    std::array<std::uint32_t, kKindCount> events_by_kind{};  // indexed by InteractionKind
    double frequency = 0.0;  // events per year; quotes excluded unless toggled

    std::uint32_t events(InteractionKind k) const {
        return events_by_kind[static_cast<std::size_t>(k)];
    }
    std::uint32_t total_events() const {
        std::uint32_t n = 0;
        for (auto c : events_by_kind) n += c;
        return n;
    }
};

struct FrequencyOptions {
    bool include_quotes = false;
};

struct SnapshotOptions {
    FrequencyOptions frequency;
    double active_threshold = 1.0;  // contacts per year
    MeanShiftParams meanshift;
};

struct EgoNetworkSnapshot {
    UserId ego_id = 0;
    int period = 0;
    std::vector<TieFrequency> ties;          // active ties, sorted by alter_id
    std::vector<std::vector<UserId>> rings;  // sorted alter ids; ring 0 innermost
    std::vector<std::size_t> circle_sizes;   // |C_1| .. |C_m|
    std::vector<double> ring_means;          // descending
    std::size_t active_size = 0;
    double bandwidth = 0.0;

    int ring_count() const { return static_cast<int>(rings.size()); }
    // 1-based ring index of an alter divided by ring count, in (0, 1];
    // lower is more intimate. Returns 0 for unknown alters.
    double normalized_rank(UserId alter) const;
};

struct RingTransitionSummary {
    std::size_t moved_inward = 0;
    std::size_t moved_outward = 0;
    std::size_t stayed = 0;
    std::size_t entered = 0;
    std::size_t exited = 0;
};

// One entry per distinct alter the ego contacted in the period; quotes are
// tallied but excluded from the frequency numerator unless toggled.
std::vector<TieFrequency> contact_frequencies(UserId ego, const Period& period,
                                              std::span<const InteractionRecord> records,
                                              const FrequencyOptions& options = {});

std::vector<TieFrequency> active_ties(std::vector<TieFrequency> ties, double threshold = 1.0);

// Rings via Mean Shift over active-tie frequencies, circles by cumulative
// union. No active ties yields an empty snapshot (active_size 0).
EgoNetworkSnapshot build_snapshot(UserId ego, const Period& period,
                                  std::span<const InteractionRecord> records,
                                  const SnapshotOptions& options = {});

// Same, starting from precomputed tie frequencies.
EgoNetworkSnapshot snapshot_from_ties(UserId ego, const Period& period,
                                      std::vector<TieFrequency> ties,
                                      const SnapshotOptions& options = {});

// a and b must belong to the same ego in consecutive periods; ring positions
// are compared by normalized rank so differing ring counts stay comparable.
RingTransitionSummary ring_transition_summary(const EgoNetworkSnapshot& a,
                                              const EgoNetworkSnapshot& b);

}  // namespace egonets
