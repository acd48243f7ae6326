#pragma once
// Calendar periods over UTC instants. The default schedule is seven yearly
// intervals anchored on March 1, 2015; period boundaries are start-inclusive,
// end-exclusive, so a schedule partitions its span.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egonets {

// Seconds since the Unix epoch, UTC. No leap-second handling.
using Timestamp = std::int64_t;

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr double kDaysPerYear = 365.25;
inline constexpr double kSecondsPerMonth = kDaysPerYear / 12.0 * kSecondsPerDay;

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    bool operator==(const CivilDate&) const = default;
};

bool civil_valid(CivilDate d);
int days_in_month(int year, int month);

// Days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(CivilDate d);
CivilDate civil_from_days(std::int64_t z);

Timestamp timestamp_from_civil(CivilDate d, int hour = 0, int minute = 0, int second = 0);
CivilDate civil_of(Timestamp t);

// year*12 + (month-1) of the instant's calendar month.
std::int64_t month_index(Timestamp t);

// RFC 3339 instant ("2020-03-01T00:00:00Z", numeric offsets applied,
// subseconds truncated) or a bare date ("2020-03-01").
std::optional<Timestamp> parse_timestamp(std::string_view s);

// Canonical form: YYYY-MM-DDTHH:MM:SSZ.
std::string format_timestamp(Timestamp t);

struct Period {
    int index = 0;
    Timestamp start = 0;
    Timestamp end = 0;  // exclusive

    double length_years() const {
        return static_cast<double>(end - start) / (kDaysPerYear * kSecondsPerDay);
    }
    bool contains(Timestamp t) const { return t >= start && t < end; }
    // Calendar months intersecting [start, end).
    int month_count() const;
    std::string label() const;  // "I0", "I1", ...

    bool operator==(const Period&) const = default;
};

// Generates `count` contiguous periods from the anchor. Integer strides step
// by civil years, strides that are a whole number of months step by civil
// months, anything else steps by round(stride * 365.25) days.
class PeriodSchedule {
public:
    PeriodSchedule() : PeriodSchedule(CivilDate{2015, 3, 1}, 7, 1.0) {}
    PeriodSchedule(CivilDate anchor, int count, double stride_years);

    const std::vector<Period>& periods() const { return periods_; }
    int count() const { return static_cast<int>(periods_.size()); }
    const Period& period(int k) const { return periods_.at(static_cast<std::size_t>(k)); }

    Timestamp span_begin() const { return periods_.front().start; }
    Timestamp span_end() const { return periods_.back().end; }
    bool in_span(Timestamp t) const { return t >= span_begin() && t < span_end(); }

    CivilDate anchor() const { return anchor_; }
    double stride_years() const { return stride_years_; }

private:
    CivilDate anchor_;
    double stride_years_;
    std::vector<Period> periods_;
};

// Unique period containing t, or nullopt outside the span.
std::optional<Period> period_of(Timestamp t, const PeriodSchedule& schedule);

}  // namespace egonets
