#include "egonets/tally.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace egonets {

double TieTally::frequency(const Period& period_def, const FrequencyOptions& options) const {
    double numerator = events(InteractionKind::reply) + events(InteractionKind::mention) +
                       events(InteractionKind::retweet);
    if (options.include_quotes) numerator += events(InteractionKind::quote);
    return numerator / period_def.length_years();
}

namespace {

struct TieKey {
    UserId ego;
    UserId alter;
    int period;

    bool operator==(const TieKey&) const = default;
};

struct TieKeyHash {
    std::size_t operator()(const TieKey& k) const {
        std::uint64_t h = k.ego * 0x9e3779b97f4a7c15ULL;
        h ^= k.alter + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(k.period) + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

TallyIndex TallyIndex::build(std::span<const InteractionRecord> records,
                             const PeriodSchedule& schedule) {
    TallyIndex index;
    index.period_count_ = schedule.count();

    std::unordered_map<TieKey, TieTally, TieKeyHash> tallies;
    tallies.reserve(records.size() / 4 + 16);
    for (const auto& r : records) {
        const auto period = period_of(r.timestamp, schedule);
        if (!period) continue;
        const int k = period->index;

        auto& tally = tallies[TieKey{r.ego_id, r.alter_id, k}];
        tally.ego = r.ego_id;
        tally.alter = r.alter_id;
        tally.period = k;
        ++tally.by_kind[static_cast<std::size_t>(r.kind)];
        if (r.polarity) ++tally.by_polarity[static_cast<std::size_t>(*r.polarity)];

        auto& user = index.activity_[r.ego_id];
        if (user.empty()) user.resize(static_cast<std::size_t>(index.period_count_));
        auto& act = user[static_cast<std::size_t>(k)];
        const auto offset = month_index(r.timestamp) - month_index(period->start);
        if (offset < 0 || offset >= 64) {
            throw std::invalid_argument("tally: periods longer than 64 months are unsupported");
        }
        const std::uint64_t bit = 1ULL << offset;
        act.months_all |= bit;
        if (r.kind != InteractionKind::quote) act.months_no_quotes |= bit;
        if (act.count == 0 || r.timestamp < act.first) act.first = r.timestamp;
        if (act.count == 0 || r.timestamp > act.last) act.last = r.timestamp;
        ++act.count;
    }

    index.ties_.reserve(tallies.size());
    for (auto& [key, tally] : tallies) index.ties_.push_back(tally);
    std::sort(index.ties_.begin(), index.ties_.end(), [](const TieTally& a, const TieTally& b) {
        return std::tie(a.ego, a.period, a.alter) < std::tie(b.ego, b.period, b.alter);
    });

    for (std::size_t i = 0; i < index.ties_.size();) {
        std::size_t j = i;
        const UserId ego = index.ties_[i].ego;
        const int period = index.ties_[i].period;
        while (j < index.ties_.size() && index.ties_[j].ego == ego &&
               index.ties_[j].period == period) {
            ++j;
        }
        index.blocks_.push_back(Block{ego, period, i, j});
        i = j;
    }
    for (const auto& [user, activity] : index.activity_) index.egos_.push_back(user);
    return index;
}

std::span<const TieTally> TallyIndex::ties_of(UserId ego, int period) const {
    const auto it = std::lower_bound(
        blocks_.begin(), blocks_.end(), std::pair{ego, period},
        [](const Block& b, const std::pair<UserId, int>& key) {
            return std::tie(b.ego, b.period) < std::tie(key.first, key.second);
        });
    if (it == blocks_.end() || it->ego != ego || it->period != period) return {};
    return std::span<const TieTally>(ties_.data() + it->begin, it->end - it->begin);
}

const std::vector<PeriodActivity>& TallyIndex::activity_of(UserId user) const {
    static const std::vector<PeriodActivity> empty;
    const auto it = activity_.find(user);
    return it == activity_.end() ? empty : it->second;
}

std::vector<TieFrequency> TallyIndex::tie_frequencies(UserId ego, const Period& period,
                                                      const FrequencyOptions& options) const {
    std::vector<TieFrequency> out;
    for (const auto& tally : ties_of(ego, period.index)) {
        TieFrequency tie;
        tie.alter_id = tally.alter;
        tie.events_by_kind = tally.by_kind;
        tie.frequency = tally.frequency(period, options);
        out.push_back(tie);
    }
    return out;
}

std::size_t TallyIndex::active_size(UserId ego, const Period& period, double threshold,
                                    const FrequencyOptions& options) const {
    std::size_t n = 0;
    for (const auto& tally : ties_of(ego, period.index)) {
        if (tally.frequency(period, options) >= threshold) ++n;
    }
    return n;
}

}  // namespace egonets
