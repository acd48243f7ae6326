#pragma once
// Pipeline configuration with the paper-faithful defaults, JSON load/save,
// range validation, and a content hash embedded in every stage output.

#include <map>
#include <stdexcept>
#include <string>

#include "egonets/cohort.hpp"
#include "egonets/egonet.hpp"
#include "egonets/polarity.hpp"
#include "egonets/time.hpp"

namespace egonets {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineConfig {
    struct Schedule {
        CivilDate anchor{2015, 3, 1};
        int count = 7;
        double stride_years = 1.0;
    } schedule;

    struct Thresholds {
        double active_frequency = 1.0;
        double negative_fraction = 0.17;
        double regular_month_share = 0.5;
        double activity_slack_months = 6.0;
        double iqr_multiplier = 1.5;
    } thresholds;

    struct Alphas {
        double structure = 0.01;
        double polarity = 0.01;
        double topics = 0.05;
    } alphas;

    struct Toggles {
        bool quotes_in_frequency = false;
        bool neutral_in_denominator = true;
        bool log_scale_meanshift = false;
        bool fences_on_intersection = false;
        bool quotes_count_for_regularity = true;
    } toggles;

    struct MeanShift {
        double bandwidth = 0.0;  // <= 0: estimate from data
        double bandwidth_quantile = 0.3;
        int max_iterations = 300;
        double tolerance = 1e-6;
    } meanshift;

    static PipelineConfig defaults() { return {}; }
    static PipelineConfig from_json_text(const std::string& text);  // throws ConfigError
    std::string to_json_text() const;
    void validate() const;  // throws ConfigError

    std::string hash() const;  // FNV-1a of the canonical JSON

    PeriodSchedule make_schedule() const;
    SnapshotOptions snapshot_options() const;
    CohortOptions cohort_options() const;
    PolarityOptions polarity_options() const;
    // Test significance per metric name (active_size, pct_negative, ...).
    std::map<std::string, double> alpha_by_metric() const;
    // Confidence level per metric, 1 - alpha of its family.
    std::map<std::string, double> ci_level_by_metric() const;
};

}  // namespace egonets
