#include "egonets/config.hpp"

#include <cstdio>

#include "egonets/io.hpp"
#include "json.hpp"

namespace egonets {

using nlohmann::json;

namespace {

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError("config: " + message);
}

template <typename T>
void load_field(const json& j, const char* key, T& out) {
    if (const auto it = j.find(key); it != j.end()) out = it->get<T>();
}

}  // namespace

void PipelineConfig::validate() const {
    check(civil_valid(schedule.anchor), "schedule.anchor is not a valid date");
    check(schedule.count >= 1, "schedule.count must be >= 1");
    check(schedule.stride_years > 0.0 && schedule.stride_years <= 5.0,
          "schedule.stride_years must be in (0, 5]");
    check(thresholds.active_frequency > 0.0, "thresholds.active_frequency must be positive");
    check(thresholds.negative_fraction >= 0.0 && thresholds.negative_fraction <= 1.0,
          "thresholds.negative_fraction must be in [0, 1]");
    check(thresholds.regular_month_share > 0.0 && thresholds.regular_month_share <= 1.0,
          "thresholds.regular_month_share must be in (0, 1]");
    check(thresholds.activity_slack_months >= 0.0,
          "thresholds.activity_slack_months must be non-negative");
    check(thresholds.iqr_multiplier >= 0.0, "thresholds.iqr_multiplier must be non-negative");
    for (const double alpha : {alphas.structure, alphas.polarity, alphas.topics}) {
        check(alpha > 0.0 && alpha < 1.0, "alphas must be in (0, 1)");
    }
    check(meanshift.bandwidth_quantile > 0.0 && meanshift.bandwidth_quantile <= 1.0,
          "meanshift.bandwidth_quantile must be in (0, 1]");
    check(meanshift.max_iterations >= 1, "meanshift.max_iterations must be >= 1");
    check(meanshift.tolerance > 0.0, "meanshift.tolerance must be positive");
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text) {
    const json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) throw ConfigError("config: not a JSON object");

    PipelineConfig config;
    if (const auto it = j.find("schedule"); it != j.end()) {
        if (const auto anchor = it->find("anchor"); anchor != it->end()) {
            const auto parsed = parse_timestamp(anchor->get<std::string>());
            if (!parsed) throw ConfigError("config: schedule.anchor is not a date");
            config.schedule.anchor = civil_of(*parsed);
        }
        load_field(*it, "count", config.schedule.count);
        load_field(*it, "stride_years", config.schedule.stride_years);
    }
    if (const auto it = j.find("thresholds"); it != j.end()) {
        load_field(*it, "active_frequency", config.thresholds.active_frequency);
        load_field(*it, "negative_fraction", config.thresholds.negative_fraction);
        load_field(*it, "regular_month_share", config.thresholds.regular_month_share);
        load_field(*it, "activity_slack_months", config.thresholds.activity_slack_months);
        load_field(*it, "iqr_multiplier", config.thresholds.iqr_multiplier);
    }
    if (const auto it = j.find("alphas"); it != j.end()) {
        load_field(*it, "structure", config.alphas.structure);
        load_field(*it, "polarity", config.alphas.polarity);
        load_field(*it, "topics", config.alphas.topics);
    }
    if (const auto it = j.find("toggles"); it != j.end()) {
        load_field(*it, "quotes_in_frequency", config.toggles.quotes_in_frequency);
        load_field(*it, "neutral_in_denominator", config.toggles.neutral_in_denominator);
        load_field(*it, "log_scale_meanshift", config.toggles.log_scale_meanshift);
        load_field(*it, "fences_on_intersection", config.toggles.fences_on_intersection);
        load_field(*it, "quotes_count_for_regularity", config.toggles.quotes_count_for_regularity);
    }
    if (const auto it = j.find("meanshift"); it != j.end()) {
        load_field(*it, "bandwidth", config.meanshift.bandwidth);
        load_field(*it, "bandwidth_quantile", config.meanshift.bandwidth_quantile);
        load_field(*it, "max_iterations", config.meanshift.max_iterations);
        load_field(*it, "tolerance", config.meanshift.tolerance);
    }
    config.validate();
    return config;
}

std::string PipelineConfig::to_json_text() const {
    char anchor[16];
    std::snprintf(anchor, sizeof(anchor), "%04d-%02d-%02d", schedule.anchor.year,
                  schedule.anchor.month, schedule.anchor.day);
    const json j{
        {"schedule",
         {{"anchor", anchor}, {"count", schedule.count}, {"stride_years", schedule.stride_years}}},
        {"thresholds",
         {{"active_frequency", thresholds.active_frequency},
          {"negative_fraction", thresholds.negative_fraction},
          {"regular_month_share", thresholds.regular_month_share},
          {"activity_slack_months", thresholds.activity_slack_months},
          {"iqr_multiplier", thresholds.iqr_multiplier}}},
        {"alphas",
         {{"structure", alphas.structure},
          {"polarity", alphas.polarity},
          {"topics", alphas.topics}}},
        {"toggles",
         {{"quotes_in_frequency", toggles.quotes_in_frequency},
          {"neutral_in_denominator", toggles.neutral_in_denominator},
          {"log_scale_meanshift", toggles.log_scale_meanshift},
          {"fences_on_intersection", toggles.fences_on_intersection},
          {"quotes_count_for_regularity", toggles.quotes_count_for_regularity}}},
        {"meanshift",
         {{"bandwidth", meanshift.bandwidth},
          {"bandwidth_quantile", meanshift.bandwidth_quantile},
          {"max_iterations", meanshift.max_iterations},
          {"tolerance", meanshift.tolerance}}},
    };
    return j.dump(2);
}

std::string PipelineConfig::hash() const { return fnv1a64_hex(to_json_text()); }

PeriodSchedule PipelineConfig::make_schedule() const {
    return PeriodSchedule(schedule.anchor, schedule.count, schedule.stride_years);
}

SnapshotOptions PipelineConfig::snapshot_options() const {
    SnapshotOptions options;
    options.frequency.include_quotes = toggles.quotes_in_frequency;
    options.active_threshold = thresholds.active_frequency;
    options.meanshift.bandwidth = meanshift.bandwidth;
    options.meanshift.bandwidth_quantile = meanshift.bandwidth_quantile;
    options.meanshift.max_iterations = meanshift.max_iterations;
    options.meanshift.tolerance = meanshift.tolerance;
    options.meanshift.log_scale = toggles.log_scale_meanshift;
    return options;
}

CohortOptions PipelineConfig::cohort_options() const {
    CohortOptions options;
    options.regular_month_share = thresholds.regular_month_share;
    options.activity_slack_months = thresholds.activity_slack_months;
    options.iqr_multiplier = thresholds.iqr_multiplier;
    options.quotes_count_for_regularity = toggles.quotes_count_for_regularity;
    options.fences_on_intersection = toggles.fences_on_intersection;
    options.active_threshold = thresholds.active_frequency;
    options.frequency.include_quotes = toggles.quotes_in_frequency;
    return options;
}

PolarityOptions PipelineConfig::polarity_options() const {
    return PolarityOptions{thresholds.negative_fraction, toggles.neutral_in_denominator};
}

std::map<std::string, double> PipelineConfig::alpha_by_metric() const {
    return {
        {"active_size", alphas.structure},
        {"pct_negative", alphas.polarity},
        {"pct_positive", alphas.polarity},
        {"unique_topics", alphas.topics},
    };
}

std::map<std::string, double> PipelineConfig::ci_level_by_metric() const {
    return {
        {"active_size", 1.0 - alphas.structure},
        {"pct_negative", 1.0 - alphas.polarity},
        {"pct_positive", 1.0 - alphas.polarity},
        {"unique_topics", 1.0 - alphas.topics},
    };
}

}  // namespace egonets
