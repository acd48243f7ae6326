#pragma once
// Longitudinal statistics: per-user growth rates, growth-rate second
// differences, one-sided t-tests of the mean second difference against
// H0- (mean <= 0) and H0+ (mean >= 0), and confidence intervals.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egonets/records.hpp"

namespace egonets {

struct MetricSeries {
    std::string name;
    int period_count = 0;
    std::map<UserId, std::vector<std::optional<double>>> values;

    void set(UserId user, int period, double value);
    std::optional<double> get(UserId user, int period) const;
};

// (x_next - x_i) / x_i; nullopt when the base is zero (excluded upstream).
std::optional<double> growth_rate(double x_i, double x_next);

struct GrowthTriple {
    UserId user = 0;
    int i = 0;  // center period; triple is (i-1, i, i+1)
    double g_prev = 0.0;
    double g_next = 0.0;
    double d = 0.0;  // g_next - g_prev
};

// One triple per user per interior period where both growth rates exist.
std::vector<GrowthTriple> growth_second_difference(const MetricSeries& series);

// Per-triple paired samples plus exclusion accounting, for reports.
struct TripleSamples {
    int i = 0;
    std::vector<double> d;
    std::uint64_t excluded_zero_base = 0;
    std::uint64_t excluded_missing = 0;
};
std::vector<TripleSamples> growth_triple_samples(const MetricSeries& series);

enum class Hypothesis : std::uint8_t { h0_minus, h0_plus };
enum class TestOutcome : std::uint8_t { accepted, rejected };

struct TTestResult {
    Hypothesis hypothesis = Hypothesis::h0_minus;
    std::size_t n = 0;
    double t_stat = 0.0;
    double p_value = 1.0;
    double alpha = 0.01;
    TestOutcome outcome = TestOutcome::accepted;
    bool degenerate = false;  // zero sample variance; p forced by sign of mean
};

// One-sample one-sided Student t-test of the mean against 0. Requires
// n >= 2. Zero variance yields a degenerate result: p = 0.5 for a zero
// mean, otherwise p = 0 or 1 by the sign of the mean.
TTestResult one_sided_t_test(std::span<const double> sample, Hypothesis hypothesis, double alpha);

struct IntervalEstimate {
    int period = 0;
    double mean = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.99;
    std::size_t n = 0;
};

// mean +- t_{(1+level)/2, n-1} * s / sqrt(n); requires n >= 2.
IntervalEstimate confidence_interval(std::span<const double> sample, double level);

struct LockdownRow {
    std::string metric;
    int i = 0;  // triple (I_{i-1}, I_i, I_{i+1})
    std::size_t n = 0;
    std::uint64_t excluded_zero_base = 0;
    std::uint64_t excluded_missing = 0;
    TTestResult minus;
    TTestResult plus;

    std::string periods_label() const;  // "(I2,I3,I4)"
};

// Both hypotheses per consecutive triple per metric, at per-metric alpha.
std::vector<LockdownRow> lockdown_report(std::span<const MetricSeries> series,
                                         const std::map<std::string, double>& alpha_by_metric);

}  // namespace egonets
