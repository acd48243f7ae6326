#pragma once
// Single-pass aggregation of a record store into per-(ego, period, alter)
// tallies and per-user activity summaries. Stages share this index instead
// of rescanning raw records.

#include <array>
#include <map>
#include <span>
#include <vector>

#include "egonets/egonet.hpp"
#include "egonets/records.hpp"
#include "egonets/time.hpp"

namespace egonets {

struct TieTally {
    UserId ego = 0;
    UserId alter = 0;
    int period = 0;
    std::array<std::uint32_t, kKindCount> by_kind{};
    std::array<std::uint32_t, 3> by_polarity{};  // indexed by PolarityLabel

    std::uint32_t events(InteractionKind k) const {
        return by_kind[static_cast<std::size_t>(k)];
    }
    std::uint32_t labeled(PolarityLabel p) const {
        return by_polarity[static_cast<std::size_t>(p)];
    }
    std::uint32_t total_events() const {
        std::uint32_t n = 0;
        for (auto c : by_kind) n += c;
        return n;
    }
    std::uint32_t total_labeled() const {
        std::uint32_t n = 0;
        for (auto c : by_polarity) n += c;
        return n;
    }
    double frequency(const Period& period_def, const FrequencyOptions& options) const;
};

struct PeriodActivity {
    std::uint64_t months_all = 0;        // bitmask of months with any interaction
    std::uint64_t months_no_quotes = 0;  // same, quotes excluded
    std::uint64_t count = 0;
    Timestamp first = 0;
    Timestamp last = 0;
};

class TallyIndex {
public:
    static TallyIndex build(std::span<const InteractionRecord> records,
                            const PeriodSchedule& schedule);

    std::span<const TieTally> ties_of(UserId ego, int period) const;
    const std::vector<UserId>& egos() const { return egos_; }
    const std::vector<PeriodActivity>& activity_of(UserId user) const;
    int period_count() const { return period_count_; }

    std::vector<TieFrequency> tie_frequencies(UserId ego, const Period& period,
                                              const FrequencyOptions& options) const;
    // Number of alters at or above the activity threshold.
    std::size_t active_size(UserId ego, const Period& period, double threshold,
                            const FrequencyOptions& options) const;

private:
    struct Block {
        UserId ego;
        int period;
        std::size_t begin;
        std::size_t end;
    };

    std::vector<TieTally> ties_;
    std::vector<Block> blocks_;  // sorted by (ego, period)
    std::vector<UserId> egos_;
    std::map<UserId, std::vector<PeriodActivity>> activity_;
    int period_count_ = 0;
};

}  // namespace egonets
