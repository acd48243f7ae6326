#include "egonets/cohort.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace egonets {

namespace {

int required_months(int month_count, double share) {
    return static_cast<int>(std::ceil(share * month_count - 1e-9));
}

double slack_seconds(double slack_months) { return slack_months * kSecondsPerMonth; }

}  // namespace

bool is_regular(UserId user, const Period& period, std::span<const InteractionRecord> records,
                const CohortOptions& options) {
    std::set<std::int64_t> months;
    for (const auto& r : records) {
        if (r.ego_id != user || !period.contains(r.timestamp)) continue;
        if (!options.quotes_count_for_regularity && r.kind == InteractionKind::quote) continue;
        months.insert(month_index(r.timestamp));
    }
    return static_cast<int>(months.size()) >=
           required_months(period.month_count(), options.regular_month_share);
}

bool is_account_active(UserId user, const Period& period,
                       std::span<const InteractionRecord> records,
                       const CohortOptions& options) {
    std::uint64_t count = 0;
    Timestamp first = 0, last = 0;
    for (const auto& r : records) {
        if (r.ego_id != user || r.timestamp >= period.end) continue;
        if (count == 0 || r.timestamp < first) first = r.timestamp;
        if (count == 0 || r.timestamp > last) last = r.timestamp;
        ++count;
    }
    if (count < 2) return false;
    const double gap = static_cast<double>(period.end - last);
    const double mean_interval = static_cast<double>(last - first) / static_cast<double>(count - 1);
    return gap < mean_interval + slack_seconds(options.activity_slack_months);
}

double interpolated_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::pair<double, double> iqr_outlier_fences(std::span<const double> values, double multiplier) {
    if (values.empty()) throw std::invalid_argument("iqr_outlier_fences: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    const double q1 = interpolated_quantile(sorted, 0.25);
    const double q3 = interpolated_quantile(sorted, 0.75);
    const double iqr = q3 - q1;
    return {q1 - multiplier * iqr, q3 + multiplier * iqr};
}

std::string CohortFilterReport::to_json() const {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& [name, count] : per_stage_counts) {
        stages.push_back({{"stage", name}, {"users", count}});
    }
    nlohmann::json fences = nlohmann::json::object();
    for (const auto& [period, fence] : outlier_fences) {
        fences["I" + std::to_string(period)] = {{"lower", fence.first}, {"upper", fence.second}};
    }
    return nlohmann::json{{"per_stage_counts", stages}, {"outlier_fences", fences}}.dump(2);
}

CohortResult longitudinal_cohort(std::span<const InteractionRecord> records,
                                 const PeriodSchedule& schedule, const CohortOptions& options) {
    return longitudinal_cohort(TallyIndex::build(records, schedule), schedule, options);
}

CohortResult longitudinal_cohort(const TallyIndex& index, const PeriodSchedule& schedule,
                                 const CohortOptions& options) {
    const int period_count = schedule.count();
    CohortResult result;

    // Per-period regular+active sets, evaluated per user from the activity
    // summaries; the account-active test looks at history up to each period
    // end (in-span records only — earlier history is not ingested).
    std::vector<std::vector<UserId>> regular_active(static_cast<std::size_t>(period_count));
    std::vector<UserId> in_all;
    for (const UserId user : index.egos()) {
        const auto& activity = index.activity_of(user);
        bool all = true;
        std::uint64_t cum_count = 0;
        Timestamp cum_first = 0, cum_last = 0;
        for (int k = 0; k < period_count; ++k) {
            const auto& act = activity[static_cast<std::size_t>(k)];
            const Period& period = schedule.period(k);
            if (act.count > 0) {
                if (cum_count == 0) {
                    cum_first = act.first;
                    cum_last = act.last;
                } else {
                    cum_first = std::min(cum_first, act.first);
                    cum_last = std::max(cum_last, act.last);
                }
                cum_count += act.count;
            }
            const std::uint64_t months =
                options.quotes_count_for_regularity ? act.months_all : act.months_no_quotes;
            const bool regular = std::popcount(months) >=
                                 required_months(period.month_count(), options.regular_month_share);
            bool active = false;
            if (cum_count >= 2) {
                const double gap = static_cast<double>(period.end - cum_last);
                const double mean_interval =
                    static_cast<double>(cum_last - cum_first) / static_cast<double>(cum_count - 1);
                active = gap < mean_interval + slack_seconds(options.activity_slack_months);
            }
            if (regular && active) {
                regular_active[static_cast<std::size_t>(k)].push_back(user);
            } else {
                all = false;
            }
        }
        if (all) in_all.push_back(user);
    }

    // Outlier fences per period over active ego-network sizes.
    std::set<UserId> outliers;
    for (int k = 0; k < period_count; ++k) {
        const auto& population =
            options.fences_on_intersection ? in_all : regular_active[static_cast<std::size_t>(k)];
        if (population.empty()) continue;
        const Period& period = schedule.period(k);
        std::vector<double> sizes;
        sizes.reserve(population.size());
        for (const UserId user : population) {
            sizes.push_back(static_cast<double>(
                index.active_size(user, period, options.active_threshold, options.frequency)));
        }
        const auto fence = iqr_outlier_fences(sizes, options.iqr_multiplier);
        result.report.outlier_fences[k] = fence;
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (sizes[i] < fence.first || sizes[i] > fence.second) outliers.insert(population[i]);
        }
    }

    for (const UserId user : in_all) {
        if (!outliers.contains(user)) result.users.push_back(user);
    }

    result.report.per_stage_counts = {
        {"all_users", index.egos().size()},
        {"regular_active_all_periods", in_all.size()},
        {"after_outlier_removal", result.users.size()},
    };
    return result;
}

}  // namespace egonets
