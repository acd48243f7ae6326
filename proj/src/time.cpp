#include "egonets/time.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace egonets {

int days_in_month(int year, int month) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return (month == 2 && leap) ? 29 : lengths[month - 1];
}

bool civil_valid(CivilDate d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

// Howard Hinnant's branchless civil-date algorithms.
std::int64_t days_from_civil(CivilDate d) {
    auto y = static_cast<std::int64_t>(d.year);
    const int m = d.month;
    const int day = d.day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const auto doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned day = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(day)};
}

Timestamp timestamp_from_civil(CivilDate d, int hour, int minute, int second) {
    return days_from_civil(d) * kSecondsPerDay + hour * 3600 + minute * 60 + second;
}

CivilDate civil_of(Timestamp t) {
    std::int64_t days = t / kSecondsPerDay;
    if (t % kSecondsPerDay < 0) --days;
    return civil_from_days(days);
}

std::int64_t month_index(Timestamp t) {
    const CivilDate d = civil_of(t);
    return static_cast<std::int64_t>(d.year) * 12 + (d.month - 1);
}

namespace {

bool parse_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    const char* first = s.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc{} && ptr == first + len;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view s) {
    int year = 0, month = 0, day = 0;
    if (!parse_int(s, 0, 4, year) || s.size() < 10 || s[4] != '-' || s[7] != '-' ||
        !parse_int(s, 5, 2, month) || !parse_int(s, 8, 2, day)) {
        return std::nullopt;
    }
    const CivilDate date{year, month, day};
    if (!civil_valid(date)) return std::nullopt;
    if (s.size() == 10) return timestamp_from_civil(date);

    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
    int hour = 0, minute = 0, second = 0;
    if (s.size() < 19 || s[13] != ':' || s[16] != ':' || !parse_int(s, 11, 2, hour) ||
        !parse_int(s, 14, 2, minute) || !parse_int(s, 17, 2, second)) {
        return std::nullopt;
    }
    if (hour > 23 || minute > 59 || second > 59) return std::nullopt;

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        const std::size_t frac_begin = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == frac_begin) return std::nullopt;
    }

    std::int64_t offset = 0;
    if (pos < s.size()) {
        const char c = s[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            int oh = 0, om = 0;
            if (pos + 6 > s.size() || s[pos + 3] != ':' || !parse_int(s, pos + 1, 2, oh) ||
                !parse_int(s, pos + 4, 2, om)) {
                return std::nullopt;
            }
            offset = (oh * 3600 + om * 60) * (c == '+' ? 1 : -1);
            pos += 6;
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;
    return timestamp_from_civil(date, hour, minute, second) - offset;
}

std::string format_timestamp(Timestamp t) {
    const CivilDate d = civil_of(t);
    std::int64_t rem = t - days_from_civil(d) * kSecondsPerDay;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year, d.month, d.day,
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

int Period::month_count() const {
    if (end <= start) return 0;
    return static_cast<int>(month_index(end - 1) - month_index(start)) + 1;
}

std::string Period::label() const { return "I" + std::to_string(index); }

namespace {

CivilDate add_months(CivilDate d, std::int64_t months) {
    const std::int64_t idx = static_cast<std::int64_t>(d.year) * 12 + (d.month - 1) + months;
    std::int64_t y = idx / 12;
    int m = static_cast<int>(idx % 12);
    if (m < 0) {
        m += 12;
        --y;
    }
    CivilDate out{static_cast<int>(y), m + 1, d.day};
    out.day = std::min(out.day, days_in_month(out.year, out.month));
    return out;
}

bool nearly_integral(double x, double& rounded) {
    rounded = std::round(x);
    return std::abs(x - rounded) < 1e-9;
}

}  // namespace

PeriodSchedule::PeriodSchedule(CivilDate anchor, int count, double stride_years)
    : anchor_(anchor), stride_years_(stride_years) {
    if (!civil_valid(anchor)) throw std::invalid_argument("schedule anchor is not a valid date");
    if (count < 1) throw std::invalid_argument("schedule count must be >= 1");
    if (!(stride_years > 0.0)) throw std::invalid_argument("schedule stride must be positive");

    std::vector<Timestamp> starts;
    starts.reserve(static_cast<std::size_t>(count) + 1);
    double whole_years = 0.0, whole_months = 0.0;
    const bool year_stride = nearly_integral(stride_years, whole_years);
    const bool month_stride = !year_stride && nearly_integral(stride_years * 12.0, whole_months);
    for (int k = 0; k <= count; ++k) {
        if (year_stride) {
            starts.push_back(timestamp_from_civil(
                add_months(anchor, k * static_cast<std::int64_t>(whole_years) * 12)));
        } else if (month_stride) {
            starts.push_back(timestamp_from_civil(
                add_months(anchor, k * static_cast<std::int64_t>(whole_months))));
        } else {
            const auto days = static_cast<std::int64_t>(std::round(k * stride_years * kDaysPerYear));
            starts.push_back(timestamp_from_civil(anchor) + days * kSecondsPerDay);
        }
    }
    periods_.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        periods_.push_back(Period{k, starts[static_cast<std::size_t>(k)],
                                  starts[static_cast<std::size_t>(k) + 1]});
    }
}

std::optional<Period> period_of(Timestamp t, const PeriodSchedule& schedule) {
    if (!schedule.in_span(t)) return std::nullopt;
    const auto& ps = schedule.periods();
    auto it = std::upper_bound(ps.begin(), ps.end(), t,
                               [](Timestamp v, const Period& p) { return v < p.start; });
    assert(it != ps.begin());
    return *std::prev(it);
}

}  // namespace egonets
