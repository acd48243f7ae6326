#include "egonets/stages.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "egonets/cohort.hpp"
#include "egonets/io.hpp"
#include "egonets/polarity.hpp"
#include "egonets/semantic.hpp"
#include "egonets/stats.hpp"
#include "egonets/tally.hpp"
#include "json.hpp"

namespace egonets {

using nlohmann::json;

namespace artifact {
std::string snapshots(int period) { return "snapshots_I" + std::to_string(period) + ".json"; }
std::string means_csv(const std::string& metric) { return "means_" + metric + ".csv"; }
std::string growthdiff_csv(const std::string& metric) { return "growthdiff_" + metric + ".csv"; }
}  // namespace artifact

namespace {

std::filesystem::path require_artifact(const StageContext& ctx, const std::string& name,
                                       const std::string& producing_stage) {
    const auto path = ctx.out_dir / name;
    if (!std::filesystem::exists(path)) {
        throw StageError(3, "missing stage: " + producing_stage + " (" + name + " not found)");
    }
    return path;
}

void update_manifest(const StageContext& ctx, const std::string& stage,
                     const std::vector<std::string>& inputs,
                     const std::vector<std::string>& outputs) {
    const auto manifest_path = ctx.out_dir / artifact::manifest;
    json manifest = json::object();
    if (const auto current = read_file(manifest_path)) {
        manifest = json::parse(*current, nullptr, /*allow_exceptions=*/false);
        if (!manifest.is_object()) manifest = json::object();
    }
    json entry;
    entry["config_hash"] = ctx.config.hash();
    json in = json::object(), out = json::object();
    for (const auto& name : inputs) {
        if (const auto h = hash_file_hex(ctx.out_dir / name)) in[name] = *h;
    }
    for (const auto& name : outputs) {
        if (const auto h = hash_file_hex(ctx.out_dir / name)) out[name] = *h;
    }
    entry["inputs"] = in;
    entry["outputs"] = out;
    manifest[stage] = entry;
    atomic_write_file(manifest_path, manifest.dump(2) + "\n");
}

std::vector<InteractionRecord> read_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError(4, "cannot open record store: " + path.string());
    std::vector<InteractionRecord> records;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::string error;
        auto rec = record_from_json_line(line, &error);
        if (!rec) {
            throw StageError(4, path.string() + ":" + std::to_string(line_no) +
                                    ": malformed store line (" + error + ")");
        }
        records.push_back(std::move(*rec));
    }
    return records;
}

std::vector<UserId> read_cohort_ids(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StageError(4, "cannot open cohort list: " + path.string());
    std::vector<UserId> users;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        users.push_back(std::stoull(line));
    }
    return users;
}

std::string csv_preamble(const StageContext& ctx, const std::string& header) {
    return "# config_hash=" + ctx.config.hash() + "\n" + header + "\n";
}

// Tidy CSV reader: skips '#' comment lines, validates the header.
std::vector<std::vector<std::string>> read_tidy_csv(const std::filesystem::path& path,
                                                    const std::string& expected_header) {
    const auto content = read_file(path);
    if (!content) throw StageError(4, "cannot open: " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(*content);
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != expected_header) {
                throw StageError(4, path.string() + ": unexpected header '" + line + "'");
            }
            saw_header = true;
            continue;
        }
        auto fields = csv_split(line);
        if (!fields) throw StageError(4, path.string() + ": malformed CSV line");
        rows.push_back(std::move(*fields));
    }
    return rows;
}

// Minimal snapshot for stages that need active ties but not rings.
EgoNetworkSnapshot active_only_snapshot(UserId ego, const Period& period, const TallyIndex& index,
                                        const PipelineConfig& config) {
    EgoNetworkSnapshot snap;
    snap.ego_id = ego;
    snap.period = period.index;
    snap.ties = active_ties(
        index.tie_frequencies(ego, period, config.snapshot_options().frequency),
        config.thresholds.active_frequency);
    std::sort(snap.ties.begin(), snap.ties.end(),
              [](const TieFrequency& a, const TieFrequency& b) { return a.alter_id < b.alter_id; });
    snap.active_size = snap.ties.size();
    return snap;
}

}  // namespace

ShockConfig null_scenario(std::size_t cohort_size, std::uint64_t seed, int period_count) {
    ShockConfig config;
    config.cohort_size = cohort_size;
    config.seed = seed;
    config.size_multipliers.assign(static_cast<std::size_t>(period_count), 1.0);
    config.topic_pool_multipliers.assign(static_cast<std::size_t>(period_count), 1.0);
    config.negative_probability.assign(static_cast<std::size_t>(period_count),
                                       config.base_negative_probability);
    return config;
}

ShockConfig lockdown_scenario(std::size_t cohort_size, std::uint64_t seed, int period_count,
                              int shock_period) {
    ShockConfig config = null_scenario(cohort_size, seed, period_count);
    if (shock_period >= 0 && shock_period < period_count) {
        const auto k = static_cast<std::size_t>(shock_period);
        config.size_multipliers[k] = 1.5;
        config.topic_pool_multipliers[k] = 1.5;
        config.negative_probability[k] = 0.18;
    }
    return config;
}

void run_synth(const StageContext& ctx, const ShockConfig& synth_config) {
    ctx.config.validate();
    SynthResult result;
    try {
        result = generate_cohort(synth_config, ctx.config.make_schedule());
    } catch (const std::invalid_argument& e) {
        throw StageError(2, e.what());
    }
    std::ostringstream store;
    write_store(store, result.records);
    atomic_write_file(ctx.out_dir / artifact::records, store.str());
    json truth = json::parse(result.truth.to_json());
    truth["config_hash"] = ctx.config.hash();
    atomic_write_file(ctx.out_dir / artifact::ground_truth, truth.dump(2) + "\n");
    update_manifest(ctx, "synth", {}, {artifact::records, artifact::ground_truth});
}

void run_ingest(const StageContext& ctx, const std::filesystem::path& input) {
    ctx.config.validate();
    std::ifstream in(input, std::ios::binary);
    if (!in) throw StageError(3, "missing input: " + input.string());
    const InputFormat format =
        input.extension() == ".csv" ? InputFormat::csv : InputFormat::jsonl;
    ParseResult parsed = parse_interactions(in, ctx.config.make_schedule(), format);
    for (const auto& warning : parsed.warnings) {
        std::cerr << "ingest: " << warning << "\n";
    }

    std::ostringstream store;
    write_store(store, parsed.records);
    atomic_write_file(ctx.out_dir / artifact::store, store.str());

    json stats = json::parse(parsed.stats.to_json());
    stats["config_hash"] = ctx.config.hash();
    atomic_write_file(ctx.out_dir / artifact::ingest_stats, stats.dump(2) + "\n");
    update_manifest(ctx, "ingest", {}, {artifact::store, artifact::ingest_stats});
}

void run_cohort(const StageContext& ctx) {
    ctx.config.validate();
    const auto store_path = require_artifact(ctx, artifact::store, "ingest");
    const auto records = read_store(store_path);
    const auto schedule = ctx.config.make_schedule();
    const auto index = TallyIndex::build(records, schedule);
    const CohortResult cohort = longitudinal_cohort(index, schedule, ctx.config.cohort_options());

    std::string ids;
    for (const UserId user : cohort.users) {
        ids += std::to_string(user);
        ids += '\n';
    }
    atomic_write_file(ctx.out_dir / artifact::cohort_ids, ids);

    json report = json::parse(cohort.report.to_json());
    report["config_hash"] = ctx.config.hash();
    atomic_write_file(ctx.out_dir / artifact::cohort_report, report.dump(2) + "\n");
    update_manifest(ctx, "cohort", {artifact::store},
                    {artifact::cohort_ids, artifact::cohort_report});
}

void run_egonet(const StageContext& ctx) {
    ctx.config.validate();
    const auto store_path = require_artifact(ctx, artifact::store, "ingest");
    const auto cohort_path = require_artifact(ctx, artifact::cohort_ids, "cohort");
    const auto records = read_store(store_path);
    const auto cohort = read_cohort_ids(cohort_path);
    const auto schedule = ctx.config.make_schedule();
    const auto index = TallyIndex::build(records, schedule);
    const auto options = ctx.config.snapshot_options();
    const int period_count = schedule.count();

    std::vector<std::vector<EgoNetworkSnapshot>> per_user(cohort.size());
    parallel_for(cohort.size(), ctx.jobs, [&](std::size_t u) {
        auto& snaps = per_user[u];
        snaps.reserve(static_cast<std::size_t>(period_count));
        for (int k = 0; k < period_count; ++k) {
            snaps.push_back(snapshot_from_ties(
                cohort[u], schedule.period(k),
                index.tie_frequencies(cohort[u], schedule.period(k), options.frequency), options));
        }
    });

    // Per-period snapshot JSON files.
    std::vector<std::string> outputs;
    for (int k = 0; k < period_count; ++k) {
        json snaps = json::array();
        for (std::size_t u = 0; u < cohort.size(); ++u) {
            const auto& snap = per_user[u][static_cast<std::size_t>(k)];
            json rings = json::array();
            for (const auto& ring : snap.rings) rings.push_back(ring);
            snaps.push_back({{"ego", snap.ego_id},
                             {"active_size", snap.active_size},
                             {"bandwidth", snap.bandwidth},
                             {"rings", rings},
                             {"ring_means", snap.ring_means},
                             {"circle_sizes", snap.circle_sizes}});
        }
        const json file{{"config_hash", ctx.config.hash()},
                        {"period", k},
                        {"label", schedule.period(k).label()},
                        {"snapshots", snaps}};
        const auto name = artifact::snapshots(k);
        atomic_write_file(ctx.out_dir / name, file.dump() + "\n");
        outputs.push_back(name);
    }

    // Tidy CSV of per-(ego, period) structure metrics.
    std::string csv =
        csv_preamble(ctx, "ego_id,period,active_size,n_rings,circle_sizes");
    for (std::size_t u = 0; u < cohort.size(); ++u) {
        for (int k = 0; k < period_count; ++k) {
            const auto& snap = per_user[u][static_cast<std::size_t>(k)];
            std::string circles;
            for (std::size_t c = 0; c < snap.circle_sizes.size(); ++c) {
                if (c) circles += ';';
                circles += std::to_string(snap.circle_sizes[c]);
            }
            csv += std::to_string(snap.ego_id) + "," + std::to_string(k) + "," +
                   std::to_string(snap.active_size) + "," + std::to_string(snap.ring_count()) +
                   "," + circles + "\n";
        }
    }
    atomic_write_file(ctx.out_dir / artifact::egonet_csv, csv);
    outputs.push_back(artifact::egonet_csv);

    // Ring transitions between consecutive periods.
    std::string transitions = csv_preamble(
        ctx, "ego_id,from_period,to_period,moved_inward,moved_outward,stayed,entered,exited");
    for (std::size_t u = 0; u < cohort.size(); ++u) {
        for (int k = 0; k + 1 < period_count; ++k) {
            const auto& a = per_user[u][static_cast<std::size_t>(k)];
            const auto& b = per_user[u][static_cast<std::size_t>(k) + 1];
            const auto t = ring_transition_summary(a, b);
            transitions += std::to_string(cohort[u]) + "," + std::to_string(k) + "," +
                           std::to_string(k + 1) + "," + std::to_string(t.moved_inward) + "," +
                           std::to_string(t.moved_outward) + "," + std::to_string(t.stayed) + "," +
                           std::to_string(t.entered) + "," + std::to_string(t.exited) + "\n";
        }
    }
    atomic_write_file(ctx.out_dir / artifact::transitions_csv, transitions);
    outputs.push_back(artifact::transitions_csv);

    update_manifest(ctx, "egonet", {artifact::store, artifact::cohort_ids}, outputs);
}

void run_signed(const StageContext& ctx) {
    ctx.config.validate();
    const auto store_path = require_artifact(ctx, artifact::store, "ingest");
    const auto cohort_path = require_artifact(ctx, artifact::cohort_ids, "cohort");
    const auto records = read_store(store_path);
    const auto cohort = read_cohort_ids(cohort_path);
    const auto schedule = ctx.config.make_schedule();
    const auto index = TallyIndex::build(records, schedule);
    const auto polarity_options = ctx.config.polarity_options();

    std::string csv = csv_preamble(
        ctx, "ego_id,period,pct_negative,pct_positive,n_ties,n_negative_ties,n_unlabeled_excluded");
    std::string ties_lines;
    std::uint64_t egos_excluded = 0;
    for (const UserId user : cohort) {
        for (int k = 0; k < schedule.count(); ++k) {
            const auto snap = active_only_snapshot(user, schedule.period(k), index, ctx.config);
            const auto classified = classify_active_ties(snap, index, polarity_options);
            for (const auto& tie : classified.ties) {
                const json line{{"ego_id", tie.ego_id},
                                {"alter_id", tie.alter_id},
                                {"period", tie.period},
                                {"n_positive", tie.n_positive},
                                {"n_negative", tie.n_negative},
                                {"n_neutral", tie.n_neutral},
                                {"negative_fraction", tie.negative_fraction},
                                {"sign", tie.sign == TieSign::negative ? "negative" : "positive"}};
                ties_lines += line.dump();
                ties_lines += '\n';
            }
            const auto summary =
                polarity_percentages(snap, classified.ties, classified.n_unlabeled_excluded);
            if (!summary) {
                ++egos_excluded;
                continue;
            }
            csv += std::to_string(user) + "," + std::to_string(k) + "," +
                   format_double(summary->pct_negative) + "," +
                   format_double(summary->pct_positive) + "," + std::to_string(summary->n_ties) +
                   "," + std::to_string(summary->n_negative_ties) + "," +
                   std::to_string(summary->n_unlabeled_excluded) + "\n";
        }
    }
    atomic_write_file(ctx.out_dir / artifact::signed_csv, csv);
    atomic_write_file(ctx.out_dir / artifact::ties_jsonl, ties_lines);
    if (egos_excluded > 0) {
        std::cerr << "signed: " << egos_excluded
                  << " (ego, period) cells had no classifiable active ties\n";
    }
    update_manifest(ctx, "signed", {artifact::store, artifact::cohort_ids},
                    {artifact::signed_csv, artifact::ties_jsonl});
}

void run_topics(const StageContext& ctx) {
    ctx.config.validate();
    const auto store_path = require_artifact(ctx, artifact::store, "ingest");
    const auto cohort_path = require_artifact(ctx, artifact::cohort_ids, "cohort");
    const auto records = read_store(store_path);
    const auto cohort = read_cohort_ids(cohort_path);
    const auto schedule = ctx.config.make_schedule();

    const std::unordered_set<UserId> cohort_set(cohort.begin(), cohort.end());
    struct Cell {
        std::set<TopicId> topics;
        std::size_t outliers = 0;
        std::size_t considered = 0;
    };
    std::map<UserId, std::vector<Cell>> cells;
    for (const auto& r : records) {
        if (!cohort_set.contains(r.ego_id) || r.kind == InteractionKind::retweet || !r.topic) {
            continue;
        }
        const auto period = period_of(r.timestamp, schedule);
        if (!period) continue;
        auto& row = cells[r.ego_id];
        if (row.empty()) row.resize(static_cast<std::size_t>(schedule.count()));
        auto& cell = row[static_cast<std::size_t>(period->index)];
        ++cell.considered;
        if (*r.topic == kTopicOutlier) {
            ++cell.outliers;
        } else {
            cell.topics.insert(*r.topic);
        }
    }

    std::string csv =
        csv_preamble(ctx, "ego_id,period,unique_count,n_outlier_tweets,n_considered_tweets");
    for (const UserId user : cohort) {
        const auto it = cells.find(user);
        for (int k = 0; k < schedule.count(); ++k) {
            if (it == cells.end()) continue;
            const auto& cell = it->second[static_cast<std::size_t>(k)];
            if (cell.considered == 0) continue;  // flagged: no labeled records
            csv += std::to_string(user) + "," + std::to_string(k) + "," +
                   std::to_string(cell.topics.size()) + "," + std::to_string(cell.outliers) + "," +
                   std::to_string(cell.considered) + "\n";
        }
    }
    atomic_write_file(ctx.out_dir / artifact::topics_csv, csv);
    update_manifest(ctx, "topics", {artifact::store, artifact::cohort_ids},
                    {artifact::topics_csv});
}

namespace {

MetricSeries series_from_rows(const std::string& name, int period_count,
                              const std::vector<std::vector<std::string>>& rows,
                              std::size_t value_column) {
    MetricSeries series;
    series.name = name;
    series.period_count = period_count;
    for (const auto& row : rows) {
        const UserId user = std::stoull(row.at(0));
        const int period = std::stoi(row.at(1));
        series.set(user, period, std::stod(row.at(value_column)));
    }
    return series;
}

std::string outcome_name(const TTestResult& r) {
    return r.outcome == TestOutcome::rejected ? "REJECTED" : "ACCEPTED";
}

}  // namespace

void run_stats(const StageContext& ctx) {
    ctx.config.validate();
    const int period_count = ctx.config.schedule.count;
    const auto egonet_path = require_artifact(ctx, artifact::egonet_csv, "egonet");
    const auto signed_path = require_artifact(ctx, artifact::signed_csv, "signed");
    const auto topics_path = require_artifact(ctx, artifact::topics_csv, "topics");

    std::vector<MetricSeries> series;
    series.push_back(series_from_rows(
        "active_size", period_count,
        read_tidy_csv(egonet_path, "ego_id,period,active_size,n_rings,circle_sizes"), 2));
    const auto signed_rows = read_tidy_csv(
        signed_path,
        "ego_id,period,pct_negative,pct_positive,n_ties,n_negative_ties,n_unlabeled_excluded");
    series.push_back(series_from_rows("pct_negative", period_count, signed_rows, 2));
    series.push_back(series_from_rows("pct_positive", period_count, signed_rows, 3));
    series.push_back(series_from_rows(
        "unique_topics", period_count,
        read_tidy_csv(topics_path, "ego_id,period,unique_count,n_outlier_tweets,n_considered_tweets"),
        2));

    const auto rows = lockdown_report(series, ctx.config.alpha_by_metric());

    // Long-form t-test table (CSV + JSON).
    std::string csv = csv_preamble(
        ctx,
        "metric,i,periods,hypothesis,n,excluded_zero_base,excluded_missing,t_stat,p_value,alpha,"
        "outcome,degenerate");
    json jrows = json::array();
    for (const auto& row : rows) {
        for (const auto* result : {&row.minus, &row.plus}) {
            const char* hyp = result->hypothesis == Hypothesis::h0_minus ? "H0_minus" : "H0_plus";
            csv += row.metric + "," + std::to_string(row.i) + "," + row.periods_label() + "," +
                   hyp + "," + std::to_string(result->n) + "," +
                   std::to_string(row.excluded_zero_base) + "," +
                   std::to_string(row.excluded_missing) + "," + format_double(result->t_stat) +
                   "," + format_double(result->p_value) + "," + format_double(result->alpha) +
                   "," + outcome_name(*result) + "," + (result->degenerate ? "1" : "0") + "\n";
            jrows.push_back({{"metric", row.metric},
                             {"i", row.i},
                             {"periods", row.periods_label()},
                             {"hypothesis", hyp},
                             {"n", result->n},
                             {"excluded_zero_base", row.excluded_zero_base},
                             {"excluded_missing", row.excluded_missing},
                             {"t_stat", result->t_stat},
                             {"p_value", result->p_value},
                             {"alpha", result->alpha},
                             {"outcome", outcome_name(*result)},
                             {"degenerate", result->degenerate}});
        }
    }
    atomic_write_file(ctx.out_dir / artifact::ttests_csv, csv);
    const json tests_file{{"config_hash", ctx.config.hash()}, {"tests", jrows}};
    atomic_write_file(ctx.out_dir / artifact::ttests_json, tests_file.dump(2) + "\n");

    // Plot-ready per-period means and per-triple growth-difference means.
    std::vector<std::string> outputs{artifact::ttests_csv, artifact::ttests_json};
    const auto levels = ctx.config.ci_level_by_metric();
    for (const auto& metric : series) {
        const double level = levels.count(metric.name) ? levels.at(metric.name) : 0.99;
        std::string means = csv_preamble(ctx, "period,label,n,mean,ci_lower,ci_upper,level");
        for (int k = 0; k < period_count; ++k) {
            std::vector<double> sample;
            for (const auto& [user, row] : metric.values) {
                if (row[static_cast<std::size_t>(k)]) {
                    sample.push_back(*row[static_cast<std::size_t>(k)]);
                }
            }
            if (sample.empty()) continue;
            double mean_value, lower, upper;
            if (sample.size() >= 2) {
                const auto est = confidence_interval(sample, level);
                mean_value = est.mean;
                lower = est.lower;
                upper = est.upper;
            } else {
                mean_value = lower = upper = sample.front();
            }
            means += std::to_string(k) + ",I" + std::to_string(k) + "," +
                     std::to_string(sample.size()) + "," + format_double(mean_value) + "," +
                     format_double(lower) + "," + format_double(upper) + "," +
                     format_double(level) + "\n";
        }
        const auto means_name = artifact::means_csv(metric.name);
        atomic_write_file(ctx.out_dir / means_name, means);
        outputs.push_back(means_name);

        std::string growth = csv_preamble(ctx, "i,periods,n,mean,ci_lower,ci_upper,level");
        for (const auto& triple : growth_triple_samples(metric)) {
            if (triple.d.size() < 2) continue;
            const auto est = confidence_interval(triple.d, level);
            growth += std::to_string(triple.i) + ",(I" + std::to_string(triple.i - 1) + ";I" +
                      std::to_string(triple.i) + ";I" + std::to_string(triple.i + 1) + ")," +
                      std::to_string(triple.d.size()) + "," + format_double(est.mean) + "," +
                      format_double(est.lower) + "," + format_double(est.upper) + "," +
                      format_double(level) + "\n";
        }
        const auto growth_name = artifact::growthdiff_csv(metric.name);
        atomic_write_file(ctx.out_dir / growth_name, growth);
        outputs.push_back(growth_name);
    }
    update_manifest(ctx, "stats",
                    {artifact::egonet_csv, artifact::signed_csv, artifact::topics_csv}, outputs);
}

void run_report(const StageContext& ctx) {
    ctx.config.validate();
    const auto tests_path = require_artifact(ctx, artifact::ttests_json, "stats");
    const auto content = read_file(tests_path);
    const json tests = json::parse(*content, nullptr, /*allow_exceptions=*/false);
    if (!tests.is_object() || !tests.contains("tests")) {
        throw StageError(4, "unreadable t-test report: " + tests_path.string());
    }

    // Paper-table shape: one CSV per metric, one row per triple, both
    // hypotheses side by side.
    struct Cell {
        std::string outcome;
        double p = 0.0;
    };
    std::map<std::string, std::map<int, std::pair<Cell, Cell>>> tables;
    for (const auto& row : tests["tests"]) {
        auto& pair = tables[row["metric"].get<std::string>()][row["i"].get<int>()];
        Cell cell{row["outcome"].get<std::string>(), row["p_value"].get<double>()};
        if (row["hypothesis"].get<std::string>() == "H0_minus") {
            pair.first = cell;
        } else {
            pair.second = cell;
        }
    }

    std::vector<std::string> outputs;
    const auto report_dir = std::filesystem::path("report");
    for (const auto& [metric, rows] : tables) {
        std::string csv =
            csv_preamble(ctx, "periods,h0_minus_outcome,h0_minus_p,h0_plus_outcome,h0_plus_p");
        for (const auto& [i, cells] : rows) {
            csv += "(I" + std::to_string(i - 1) + ";I" + std::to_string(i) + ";I" +
                   std::to_string(i + 1) + ")," + cells.first.outcome + "," +
                   format_double(cells.first.p) + "," + cells.second.outcome + "," +
                   format_double(cells.second.p) + "\n";
        }
        const auto name = (report_dir / ("table_" + metric + ".csv")).string();
        atomic_write_file(ctx.out_dir / name, csv);
        outputs.push_back(name);
    }

    // Copy plot-ready summaries into the bundle.
    for (const auto& metric :
         {"active_size", "pct_negative", "pct_positive", "unique_topics"}) {
        for (const auto& name : {artifact::means_csv(metric), artifact::growthdiff_csv(metric)}) {
            if (const auto data = read_file(ctx.out_dir / name)) {
                const auto bundled = (report_dir / name).string();
                atomic_write_file(ctx.out_dir / bundled, *data);
                outputs.push_back(bundled);
            }
        }
    }

    json summary{{"config_hash", ctx.config.hash()},
                 {"tables", json::array()}};
    for (const auto& [metric, rows] : tables) summary["tables"].push_back("table_" + metric + ".csv");
    const auto summary_name = (report_dir / "summary.json").string();
    atomic_write_file(ctx.out_dir / summary_name, summary.dump(2) + "\n");
    outputs.push_back(summary_name);

    update_manifest(ctx, "report", {artifact::ttests_json}, outputs);
}

namespace {

LabeledPointSet read_points_and_labels(const DbcvStageArgs& args) {
    LabeledPointSet data;
    if (args.points.extension() == ".bin") {
        const auto raw = read_file(args.points);
        if (!raw) throw StageError(3, "missing input: " + args.points.string());
        if (raw->size() < 8) throw StageError(4, "packed points file too short");
        std::uint32_t n = 0, d = 0;
        std::memcpy(&n, raw->data(), 4);
        std::memcpy(&d, raw->data() + 4, 4);
        const std::size_t expected = 8 + static_cast<std::size_t>(n) * d * sizeof(double);
        if (raw->size() != expected) {
            throw StageError(4, "packed points file size does not match its header");
        }
        data.n = n;
        data.d = d;
        data.points.resize(static_cast<std::size_t>(n) * d);
        std::memcpy(data.points.data(), raw->data() + 8, raw->size() - 8);
    } else {
        const auto raw = read_file(args.points);
        if (!raw) throw StageError(3, "missing input: " + args.points.string());
        std::istringstream in(*raw);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto fields = csv_split(line);
            if (!fields) throw StageError(4, "malformed points CSV line");
            if (data.d == 0) data.d = fields->size();
            if (fields->size() != data.d) throw StageError(4, "ragged points CSV");
            for (const auto& f : *fields) data.points.push_back(std::stod(f));
            ++data.n;
        }
    }
    const auto raw_labels = read_file(args.labels);
    if (!raw_labels) throw StageError(3, "missing input: " + args.labels.string());
    std::istringstream in(*raw_labels);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        data.labels.push_back(std::stoi(line));
    }
    if (data.labels.size() != data.n) {
        throw StageError(4, "labels count does not match points count");
    }
    return data;
}

}  // namespace

void run_dbcv(const StageContext& ctx, const DbcvStageArgs& args) {
    ctx.config.validate();
    LabeledPointSet data = read_points_and_labels(args);
    const std::size_t full_n = data.n;
    try {
        if (args.sample > 0 && args.sample < data.n) {
            data = proportional_sample(data, args.sample, args.seed);
        }
        const DbcvScore score = dbcv_score(data, DbcvOptions{args.metric});
        json per_cluster = json::object();
        for (const auto& [label, v] : score.per_cluster) {
            per_cluster[std::to_string(label)] = v;
        }
        const json out{{"config_hash", ctx.config.hash()},
                       {"overall", score.overall},
                       {"per_cluster", per_cluster},
                       {"noise_fraction", score.noise_fraction},
                       {"n_full", full_n},
                       {"n_scored", data.n},
                       {"d", data.d},
                       {"sample", args.sample},
                       {"seed", args.seed},
                       {"metric", args.metric == DistanceMetric::euclidean ? "euclidean"
                                                                           : "manhattan"}};
        atomic_write_file(ctx.out_dir / artifact::dbcv_json, out.dump(2) + "\n");
    } catch (const std::invalid_argument& e) {
        throw StageError(4, e.what());
    }
    update_manifest(ctx, "dbcv", {}, {artifact::dbcv_json});
}

}  // namespace egonets
