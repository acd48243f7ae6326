// egonets — longitudinal ego-network analytics pipeline.
//
// Stages communicate via files in --out-dir; run them individually or chain
// them with `run`. Exit codes: 0 ok, 2 validation error, 3 missing upstream
// artifact, 4 data error.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "egonets/config.hpp"
#include "egonets/io.hpp"
#include "egonets/stages.hpp"

namespace {

using namespace egonets;

struct CommonArgs {
    std::string out_dir = "out";
    std::string config_path;
    int jobs = 1;
};

StageContext make_context(const CommonArgs& args) {
    StageContext ctx;
    ctx.out_dir = args.out_dir;
    ctx.jobs = args.jobs;
    if (!args.config_path.empty()) {
        const auto text = read_file(args.config_path);
        if (!text) throw StageError(2, "cannot read config: " + args.config_path);
        ctx.config = PipelineConfig::from_json_text(*text);
    } else {
        ctx.config = PipelineConfig::defaults();
    }
    std::filesystem::create_directories(ctx.out_dir);
    return ctx;
}

struct SynthArgs {
    std::size_t users = 100;
    std::uint64_t seed = 1;
    std::string scenario = "lockdown";  // lockdown | null
    int shock_period = 5;
};

ShockConfig make_shock_config(const SynthArgs& args, const PipelineConfig& config) {
    if (args.scenario == "null") {
        return null_scenario(args.users, args.seed, config.schedule.count);
    }
    if (args.scenario == "lockdown") {
        return lockdown_scenario(args.users, args.seed, config.schedule.count, args.shock_period);
    }
    throw StageError(2, "unknown scenario: " + args.scenario);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Longitudinal ego-network analytics pipeline"};
    app.require_subcommand(1);

    CommonArgs common;
    app.add_option("--out-dir", common.out_dir, "Pipeline output directory")->capture_default_str();
    app.add_option("--config", common.config_path, "Pipeline config JSON file");
    app.add_option("--jobs", common.jobs, "Worker threads for parallel stages")
        ->capture_default_str();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic cohort with planted shocks");
    synth->add_option("--users", synth_args.users, "Cohort size")->capture_default_str();
    synth->add_option("--seed", synth_args.seed, "Generator seed")->capture_default_str();
    synth->add_option("--scenario", synth_args.scenario, "lockdown or null")
        ->capture_default_str();
    synth->add_option("--shock-period", synth_args.shock_period, "Period index of the shock")
        ->capture_default_str();

    std::string ingest_input;
    auto* ingest = app.add_subcommand("ingest", "Parse an interaction log into the record store");
    ingest->add_option("--input", ingest_input, "Input file (.jsonl or .csv)")->required();

    auto* cohort = app.add_subcommand("cohort", "Select the longitudinal cohort");
    auto* egonet = app.add_subcommand("egonet", "Build layered ego-network snapshots");
    auto* signed_cmd = app.add_subcommand("signed", "Derive signed ties and polarity percentages");
    auto* topics = app.add_subcommand("topics", "Compute topic-diversity profiles");
    auto* stats = app.add_subcommand("stats", "Growth-rate tests and confidence intervals");
    auto* report = app.add_subcommand("report", "Bundle table- and figure-shaped outputs");

    DbcvStageArgs dbcv_args;
    std::string dbcv_points, dbcv_labels, dbcv_metric = "euclidean";
    auto* dbcv = app.add_subcommand("dbcv", "Score a labeled clustering with DBCV");
    dbcv->add_option("--points", dbcv_points, "Points file (.csv coordinates or packed .bin)")
        ->required();
    dbcv->add_option("--labels", dbcv_labels, "Labels file, one integer per line")->required();
    dbcv->add_option("--sample", dbcv_args.sample, "Proportional sample size (0 = full)")
        ->capture_default_str();
    dbcv->add_option("--seed", dbcv_args.seed, "Sampling seed")->capture_default_str();
    dbcv->add_option("--metric", dbcv_metric, "euclidean or manhattan")->capture_default_str();

    std::string run_stages = "synth,ingest,cohort,egonet,signed,topics,stats,report";
    auto* run = app.add_subcommand("run", "Run a comma-separated chain of stages");
    run->add_option("--stages", run_stages, "Stage chain")->capture_default_str();
    run->add_option("--users", synth_args.users, "Cohort size for the synth stage")
        ->capture_default_str();
    run->add_option("--seed", synth_args.seed, "Synth seed")->capture_default_str();
    run->add_option("--scenario", synth_args.scenario, "lockdown or null")
        ->capture_default_str();
    std::string run_input;
    run->add_option("--input", run_input, "Ingest input (defaults to the synth output)");

    CLI11_PARSE(app, argc, argv);

    try {
        const StageContext ctx = make_context(common);
        if (synth->parsed()) {
            run_synth(ctx, make_shock_config(synth_args, ctx.config));
        } else if (ingest->parsed()) {
            run_ingest(ctx, ingest_input);
        } else if (cohort->parsed()) {
            run_cohort(ctx);
        } else if (egonet->parsed()) {
            run_egonet(ctx);
        } else if (signed_cmd->parsed()) {
            run_signed(ctx);
        } else if (topics->parsed()) {
            run_topics(ctx);
        } else if (stats->parsed()) {
            run_stats(ctx);
        } else if (report->parsed()) {
            run_report(ctx);
        } else if (dbcv->parsed()) {
            dbcv_args.points = dbcv_points;
            dbcv_args.labels = dbcv_labels;
            if (dbcv_metric == "euclidean") {
                dbcv_args.metric = DistanceMetric::euclidean;
            } else if (dbcv_metric == "manhattan") {
                dbcv_args.metric = DistanceMetric::manhattan;
            } else {
                throw StageError(2, "unknown metric: " + dbcv_metric);
            }
            run_dbcv(ctx, dbcv_args);
        } else if (run->parsed()) {
            std::vector<std::string> chain;
            std::string token;
            for (const char c : run_stages + ",") {
                if (c == ',') {
                    if (!token.empty()) chain.push_back(token);
                    token.clear();
                } else {
                    token += c;
                }
            }
            for (const auto& stage : chain) {
                std::cerr << "[egonets] stage " << stage << "\n";
                if (stage == "synth") {
                    run_synth(ctx, make_shock_config(synth_args, ctx.config));
                } else if (stage == "ingest") {
                    const auto input = run_input.empty()
                                           ? (ctx.out_dir / artifact::records).string()
                                           : run_input;
                    run_ingest(ctx, input);
                } else if (stage == "cohort") {
                    run_cohort(ctx);
                } else if (stage == "egonet") {
                    run_egonet(ctx);
                } else if (stage == "signed") {
                    run_signed(ctx);
                } else if (stage == "topics") {
                    run_topics(ctx);
                } else if (stage == "stats") {
                    run_stats(ctx);
                } else if (stage == "report") {
                    run_report(ctx);
                } else {
                    throw StageError(2, "unknown stage: " + stage);
                }
            }
        }
    } catch (const StageError& e) {
        std::cerr << "egonets: " << e.what() << "\n";
        return e.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "egonets: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "egonets: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
