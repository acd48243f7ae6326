#include "egonets/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "egonets/kernels.hpp"
#include "egonets/student_t.hpp"

namespace egonets {

void MetricSeries::set(UserId user, int period, double value) {
    auto& row = values[user];
    if (row.empty()) row.resize(static_cast<std::size_t>(period_count));
    row.at(static_cast<std::size_t>(period)) = value;
}

std::optional<double> MetricSeries::get(UserId user, int period) const {
    const auto it = values.find(user);
    if (it == values.end()) return std::nullopt;
    return it->second.at(static_cast<std::size_t>(period));
}

std::optional<double> growth_rate(double x_i, double x_next) {
    if (x_i == 0.0) return std::nullopt;
    return (x_next - x_i) / x_i;
}

std::vector<TripleSamples> growth_triple_samples(const MetricSeries& series) {
    std::vector<TripleSamples> out;
    if (series.period_count < 3) return out;
    out.resize(static_cast<std::size_t>(series.period_count - 2));
    for (int i = 1; i + 1 < series.period_count; ++i) out[static_cast<std::size_t>(i - 1)].i = i;

    for (const auto& [user, row] : series.values) {
        for (int i = 1; i + 1 < series.period_count; ++i) {
            auto& triple = out[static_cast<std::size_t>(i - 1)];
            const auto& prev = row[static_cast<std::size_t>(i - 1)];
            const auto& mid = row[static_cast<std::size_t>(i)];
            const auto& next = row[static_cast<std::size_t>(i + 1)];
            if (!prev || !mid || !next) {
                ++triple.excluded_missing;
                continue;
            }
            const auto g_prev = growth_rate(*prev, *mid);
            const auto g_next = growth_rate(*mid, *next);
            if (!g_prev || !g_next) {
                ++triple.excluded_zero_base;
                continue;
            }
            triple.d.push_back(*g_next - *g_prev);
        }
    }
    return out;
}

std::vector<GrowthTriple> growth_second_difference(const MetricSeries& series) {
    if (series.period_count < 3) {
        throw std::invalid_argument("growth_second_difference: need at least 3 periods");
    }
    std::vector<GrowthTriple> out;
    for (const auto& [user, row] : series.values) {
        for (int i = 1; i + 1 < series.period_count; ++i) {
            const auto& prev = row[static_cast<std::size_t>(i - 1)];
            const auto& mid = row[static_cast<std::size_t>(i)];
            const auto& next = row[static_cast<std::size_t>(i + 1)];
            if (!prev || !mid || !next) continue;
            const auto g_prev = growth_rate(*prev, *mid);
            const auto g_next = growth_rate(*mid, *next);
            if (!g_prev || !g_next) continue;
            out.push_back(GrowthTriple{user, i, *g_prev, *g_next, *g_next - *g_prev});
        }
    }
    return out;
}

TTestResult one_sided_t_test(std::span<const double> sample, Hypothesis hypothesis, double alpha) {
    if (sample.size() < 2) throw std::invalid_argument("one_sided_t_test: need n >= 2");
    TTestResult result;
    result.hypothesis = hypothesis;
    result.alpha = alpha;
    result.n = sample.size();

    const double n = static_cast<double>(sample.size());
    const double mean = kernels::mean(sample);
    const double variance = kernels::sample_variance(sample);

    if (variance <= 0.0) {
        result.degenerate = true;
        result.t_stat = mean > 0.0 ? std::numeric_limits<double>::infinity()
                        : mean < 0.0 ? -std::numeric_limits<double>::infinity()
                                     : 0.0;
        if (mean == 0.0) {
            result.p_value = 0.5;
        } else if (hypothesis == Hypothesis::h0_minus) {
            result.p_value = mean > 0.0 ? 0.0 : 1.0;
        } else {
            result.p_value = mean < 0.0 ? 0.0 : 1.0;
        }
    } else {
        result.t_stat = mean / std::sqrt(variance / n);
        const double nu = n - 1.0;
        // H0-: mean <= 0, rejected by large positive t (upper tail).
        result.p_value = hypothesis == Hypothesis::h0_minus ? student_t_sf(result.t_stat, nu)
                                                            : student_t_cdf(result.t_stat, nu);
    }
    result.outcome = result.p_value < alpha ? TestOutcome::rejected : TestOutcome::accepted;
    return result;
}

IntervalEstimate confidence_interval(std::span<const double> sample, double level) {
    if (sample.size() < 2) throw std::invalid_argument("confidence_interval: need n >= 2");
    if (!(level > 0.0) || !(level < 1.0)) {
        throw std::invalid_argument("confidence_interval: level outside (0, 1)");
    }
    IntervalEstimate est;
    est.n = sample.size();
    est.level = level;
    est.mean = kernels::mean(sample);
    const double variance = kernels::sample_variance(sample);
    const double n = static_cast<double>(sample.size());
    const double half = variance <= 0.0
                            ? 0.0
                            : student_t_quantile((1.0 + level) / 2.0, n - 1.0) *
                                  std::sqrt(variance / n);
    est.lower = est.mean - half;
    est.upper = est.mean + half;
    return est;
}

std::string LockdownRow::periods_label() const {
    return "(I" + std::to_string(i - 1) + ",I" + std::to_string(i) + ",I" + std::to_string(i + 1) +
           ")";
}

std::vector<LockdownRow> lockdown_report(std::span<const MetricSeries> series,
                                         const std::map<std::string, double>& alpha_by_metric) {
    std::vector<LockdownRow> rows;
    for (const auto& metric : series) {
        const auto alpha_it = alpha_by_metric.find(metric.name);
        const double alpha = alpha_it == alpha_by_metric.end() ? 0.01 : alpha_it->second;
        for (const auto& triple : growth_triple_samples(metric)) {
            LockdownRow row;
            row.metric = metric.name;
            row.i = triple.i;
            row.n = triple.d.size();
            row.excluded_zero_base = triple.excluded_zero_base;
            row.excluded_missing = triple.excluded_missing;
            if (triple.d.size() >= 2) {
                row.minus = one_sided_t_test(triple.d, Hypothesis::h0_minus, alpha);
                row.plus = one_sided_t_test(triple.d, Hypothesis::h0_plus, alpha);
            } else {
                row.minus.hypothesis = Hypothesis::h0_minus;
                row.plus.hypothesis = Hypothesis::h0_plus;
                row.minus.alpha = row.plus.alpha = alpha;
                row.minus.degenerate = row.plus.degenerate = true;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace egonets
