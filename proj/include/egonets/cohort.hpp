#pragma once
// Longitudinal cohort selection: users regular and account-active in every
// period, minus ego-network-size outliers (Tukey fences) in any period.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "egonets/egonet.hpp"
#include "egonets/records.hpp"
#include "egonets/tally.hpp"
#include "egonets/time.hpp"

namespace egonets {

struct CohortOptions {
    double regular_month_share = 0.5;
    double activity_slack_months = 6.0;
    double iqr_multiplier = 1.5;
    bool quotes_count_for_regularity = true;
    // Fences over each period's regular users by default; optionally over
    // the already-intersected cohort instead.
    bool fences_on_intersection = false;
    double active_threshold = 1.0;
    FrequencyOptions frequency;
};

// True iff the user interacted in at least ceil(share * M) distinct calendar
// months of the period's M months.
bool is_regular(UserId user, const Period& period, std::span<const InteractionRecord> records,
                const CohortOptions& options = {});

// True iff the gap from the user's last record before period end to the
// period end is under their mean inter-event interval plus the slack.
// Users with fewer than two records are never active.
bool is_account_active(UserId user, const Period& period,
                       std::span<const InteractionRecord> records,
                       const CohortOptions& options = {});

// Tukey fences (Q1 - m*IQR, Q3 + m*IQR) with linear-interpolation quartiles.
// Throws std::invalid_argument on empty input.
std::pair<double, double> iqr_outlier_fences(std::span<const double> values,
                                             double multiplier = 1.5);

// Linear-interpolation quantile of unsorted values, p in [0, 1].
double interpolated_quantile(std::vector<double> values, double p);

struct CohortFilterReport {
    std::vector<std::pair<std::string, std::size_t>> per_stage_counts;  // non-increasing
    std::map<int, std::pair<double, double>> outlier_fences;            // period -> (lo, hi)
    std::string to_json() const;
};

struct CohortResult {
    std::vector<UserId> users;  // sorted
    CohortFilterReport report;
};

CohortResult longitudinal_cohort(std::span<const InteractionRecord> records,
                                 const PeriodSchedule& schedule,
                                 const CohortOptions& options = {});

// Same selection on a prebuilt index.
CohortResult longitudinal_cohort(const TallyIndex& index, const PeriodSchedule& schedule,
                                 const CohortOptions& options = {});

}  // namespace egonets
