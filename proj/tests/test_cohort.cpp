#include "egonets/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "egonets/rng.hpp"

using namespace egonets;

namespace {

const PeriodSchedule kSchedule;

InteractionRecord at_month(UserId ego, int period, int month, int day = 5) {
    const Period& p = kSchedule.period(period);
    const CivilDate start = civil_of(p.start);
    InteractionRecord r;
    r.ego_id = ego;
    r.alter_id = ego + 1000;
    r.kind = InteractionKind::reply;
    const std::int64_t idx = static_cast<std::int64_t>(start.year) * 12 + (start.month - 1) + month;
    const CivilDate date{static_cast<int>(idx / 12), static_cast<int>(idx % 12) + 1, day};
    r.timestamp = timestamp_from_civil(date, 12, 0, 0);
    return r;
}

// Reference quantile: textbook linear interpolation on the sorted sample,
// written independently of the implementation.
double reference_quantile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double pos = p * (static_cast<double>(v.size()) - 1.0);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double g = pos - std::floor(pos);
    if (i + 1 >= v.size()) return v.back();
    return (1.0 - g) * v[i] + g * v[i + 1];
}

}  // namespace

TEST_CASE("is_regular month-count rule") {
    std::vector<InteractionRecord> records;
    for (int m = 0; m < 6; ++m) records.push_back(at_month(1, 0, m));
    for (int m = 0; m < 5; ++m) records.push_back(at_month(2, 0, m));
    // User 3: 6 interactions all in one month.
    for (int d = 1; d <= 6; ++d) records.push_back(at_month(3, 0, 0, d));

    CHECK(is_regular(1, kSchedule.period(0), records));        // 6 of 12 months
    CHECK(!is_regular(2, kSchedule.period(0), records));       // 5 of 12 months
    CHECK(!is_regular(3, kSchedule.period(0), records));       // 1 distinct month
    CHECK(!is_regular(99, kSchedule.period(0), records));      // no activity

    // Monotonicity: adding interactions never flips true -> false.
    Rng rng(13);
    std::vector<InteractionRecord> grown = records;
    for (int extra = 0; extra < 40; ++extra) {
        grown.push_back(at_month(1, 0, static_cast<int>(rng.bounded(12)),
                                 1 + static_cast<int>(rng.bounded(28))));
        CHECK(is_regular(1, kSchedule.period(0), grown));
    }
}

TEST_CASE("is_account_active gap rule") {
    const Period& p0 = kSchedule.period(0);

    // Last record 1 day before period end, mean interval ~10 days.
    std::vector<InteractionRecord> records;
    for (int i = 0; i < 30; ++i) {
        InteractionRecord r;
        r.ego_id = 1;
        r.alter_id = 2;
        r.kind = InteractionKind::mention;
        r.timestamp = p0.end - (1 + 10 * i) * kSecondsPerDay;
        records.push_back(r);
    }
    CHECK(is_account_active(1, p0, records));

    // Last record 8 months before period end, mean interval ~1 month.
    std::vector<InteractionRecord> stale;
    for (int i = 0; i < 12; ++i) {
        InteractionRecord r;
        r.ego_id = 1;
        r.alter_id = 2;
        r.kind = InteractionKind::mention;
        r.timestamp = p0.end - static_cast<Timestamp>((8.0 + i) * 30.4 * kSecondsPerDay);
        stale.push_back(r);
    }
    CHECK(!is_account_active(1, p0, stale));

    // Exactly one lifetime record: interval undefined.
    std::vector<InteractionRecord> lone{records[0]};
    CHECK(!is_account_active(1, p0, lone));
}

TEST_CASE("iqr fences: examples and reference-quantile agreement") {
    const std::vector<double> flat{5.0, 5.0, 5.0, 5.0};
    CHECK(iqr_outlier_fences(flat) == std::pair{5.0, 5.0});

    const std::vector<double> spiked{1, 2, 3, 4, 5, 6, 7, 8, 9, 500};
    const auto fence = iqr_outlier_fences(spiked);
    CHECK(500.0 > fence.second);
    CHECK(1.0 >= fence.first);
    // Frozen expectation from the reference quantile routine:
    // Q1 = 3.25, Q3 = 7.75, IQR = 4.5 -> (-3.5, 14.5).
    CHECK(fence.first == doctest::Approx(-3.5).epsilon(1e-12));
    CHECK(fence.second == doctest::Approx(14.5).epsilon(1e-12));

    CHECK_THROWS(iqr_outlier_fences(std::vector<double>{}));

    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> values(1 + rng.bounded(200));
        for (double& v : values) v = rng.uniform(-50.0, 50.0);
        const auto [lo, hi] = iqr_outlier_fences(values, 1.5);
        const double q1 = reference_quantile(values, 0.25);
        const double q3 = reference_quantile(values, 0.75);
        CHECK(std::abs(lo - (q1 - 1.5 * (q3 - q1))) < 1e-12);
        CHECK(std::abs(hi - (q3 + 1.5 * (q3 - q1))) < 1e-12);
    }
}

namespace {

// A user contacting `alters` alters monthly in every period.
void add_steady_user(std::vector<InteractionRecord>& records, UserId ego, int alters,
                     int periods = 7) {
    for (int k = 0; k < periods; ++k) {
        for (int a = 0; a < alters; ++a) {
            for (int m = 0; m < 12; ++m) {
                auto r = at_month(ego, k, m);
                r.alter_id = 10000 + static_cast<UserId>(a);
                records.push_back(r);
            }
        }
    }
}

}  // namespace

TEST_CASE("longitudinal cohort: intersection and outlier removal") {
    std::vector<InteractionRecord> records;
    // Ten steady users with sizes spread over 8..17 alters.
    for (UserId u = 1; u <= 10; ++u) {
        add_steady_user(records, u, 8 + static_cast<int>(u - 1));
    }
    // User 20: huge network (size 500) in period 3 only, steady otherwise.
    add_steady_user(records, 20, 10);
    for (int a = 0; a < 490; ++a) {
        for (int m = 0; m < 12; ++m) {
            auto r = at_month(20, 3, m);
            r.alter_id = 20000 + static_cast<UserId>(a);
            records.push_back(r);
        }
    }
    // User 30: regular in 6 of 7 periods only.
    for (int k = 0; k < 7; ++k) {
        const int months = k == 3 ? 5 : 12;
        for (int m = 0; m < months; ++m) records.push_back(at_month(30, k, m));
    }

    const auto result = longitudinal_cohort(records, kSchedule);

    // The user with the planted period-3 spike is fenced out; the
    // sometimes-irregular user never reaches the intersection.
    for (UserId u = 1; u <= 10; ++u) {
        CHECK(std::count(result.users.begin(), result.users.end(), u) == 1);
    }
    CHECK(std::count(result.users.begin(), result.users.end(), 20) == 0);
    CHECK(std::count(result.users.begin(), result.users.end(), 30) == 0);

    // Report stages are non-increasing and fences exist per period.
    REQUIRE(result.report.per_stage_counts.size() == 3);
    CHECK(result.report.per_stage_counts[0].second >= result.report.per_stage_counts[1].second);
    CHECK(result.report.per_stage_counts[1].second >= result.report.per_stage_counts[2].second);
    CHECK(result.report.per_stage_counts[0].second == 12);
    CHECK(result.report.per_stage_counts[1].second == 11);
    CHECK(result.report.per_stage_counts[2].second == 10);
    CHECK(result.report.outlier_fences.size() == 7);
    const auto fence3 = result.report.outlier_fences.at(3);
    CHECK(500.0 > fence3.second);

    // Order independence.
    Rng rng(43);
    for (std::size_t i = records.size(); i > 1; --i) {
        std::swap(records[i - 1], records[rng.bounded(i)]);
    }
    const auto shuffled = longitudinal_cohort(records, kSchedule);
    CHECK(shuffled.users == result.users);

    // Empty record set: empty cohort with a report.
    const auto empty = longitudinal_cohort(std::vector<InteractionRecord>{}, kSchedule);
    CHECK(empty.users.empty());
    CHECK(empty.report.per_stage_counts.size() == 3);
}
