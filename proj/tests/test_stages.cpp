#include "egonets/stages.hpp"

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "egonets/io.hpp"
#include "json.hpp"

using namespace egonets;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("egonets_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

StageContext make_ctx(const fs::path& dir) {
    StageContext ctx;
    ctx.out_dir = dir;
    ctx.config = PipelineConfig::defaults();
    ctx.jobs = 2;
    return ctx;
}

void run_chain(const StageContext& ctx, std::size_t users, std::uint64_t seed) {
    run_synth(ctx, null_scenario(users, seed, ctx.config.schedule.count));
    run_ingest(ctx, ctx.out_dir / artifact::records);
    run_cohort(ctx);
    run_egonet(ctx);
    run_signed(ctx);
    run_topics(ctx);
    run_stats(ctx);
    run_report(ctx);
}

}  // namespace

TEST_CASE("full stage chain produces the expected artifacts") {
    const auto dir = fresh_dir("chain");
    const auto ctx = make_ctx(dir);
    run_chain(ctx, 20, 42);

    for (const char* name :
         {artifact::records, artifact::store, artifact::ingest_stats, artifact::cohort_ids,
          artifact::cohort_report, artifact::egonet_csv, artifact::transitions_csv,
          artifact::signed_csv, artifact::ties_jsonl, artifact::topics_csv, artifact::ttests_csv,
          artifact::ttests_json, artifact::manifest}) {
        CHECK(fs::exists(dir / name));
    }
    for (int k = 0; k < 7; ++k) CHECK(fs::exists(dir / artifact::snapshots(k)));
    CHECK(fs::exists(dir / "report" / "summary.json"));
    CHECK(fs::exists(dir / "report" / "table_active_size.csv"));

    // Every CSV embeds the config hash it was produced under.
    const auto csv = read_file(dir / artifact::egonet_csv);
    REQUIRE(csv.has_value());
    CHECK(csv->starts_with("# config_hash=" + ctx.config.hash()));

    // The manifest records hashes for each stage.
    const auto manifest_text = read_file(dir / artifact::manifest);
    REQUIRE(manifest_text.has_value());
    const auto manifest = nlohmann::json::parse(*manifest_text);
    for (const char* stage : {"synth", "ingest", "cohort", "egonet", "signed", "topics", "stats",
                              "report"}) {
        REQUIRE(manifest.contains(stage));
        CHECK(manifest[stage]["config_hash"] == ctx.config.hash());
    }
    fs::remove_all(dir);
}

TEST_CASE("reruns with identical seed and config are byte-identical") {
    const auto dir_a = fresh_dir("repro_a");
    const auto dir_b = fresh_dir("repro_b");
    run_chain(make_ctx(dir_a), 15, 7);
    run_chain(make_ctx(dir_b), 15, 7);

    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir_a)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), dir_a);
        const auto a = read_file(entry.path());
        const auto b = read_file(dir_b / rel);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(*a == *b);
        ++compared;
    }
    CHECK(compared >= 20);
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("missing upstream artifacts are reported with the stage name") {
    const auto dir = fresh_dir("missing");
    const auto ctx = make_ctx(dir);
    CHECK_THROWS_WITH_AS(run_stats(ctx), doctest::Contains("missing stage: egonet"), StageError);
    CHECK_THROWS_WITH_AS(run_cohort(ctx), doctest::Contains("missing stage: ingest"), StageError);
    CHECK_THROWS_WITH_AS(run_report(ctx), doctest::Contains("missing stage: stats"), StageError);
    try {
        run_stats(ctx);
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.exit_code == 3);
    }
    fs::remove_all(dir);
}

TEST_CASE("config validation errors carry exit code 2") {
    CHECK_THROWS_AS(PipelineConfig::from_json_text(R"({"alphas":{"structure":2.0}})"),
                    ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(PipelineConfig::from_json_text(R"({"schedule":{"count":0}})"), ConfigError);
    // Round trip of defaults.
    const auto config = PipelineConfig::defaults();
    const auto reparsed = PipelineConfig::from_json_text(config.to_json_text());
    CHECK(reparsed.hash() == config.hash());
}

TEST_CASE("dbcv stage scores points and labels files") {
    const auto dir = fresh_dir("dbcv");
    const auto ctx = make_ctx(dir);

    std::string points, labels;
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < 20; ++i) {
            points += format_double(c * 50.0 + 0.01 * i) + "," + format_double(0.02 * i) + "\n";
            labels += std::to_string(c) + "\n";
        }
    }
    atomic_write_file(dir / "points.csv", points);
    atomic_write_file(dir / "labels.txt", labels);

    DbcvStageArgs args;
    args.points = dir / "points.csv";
    args.labels = dir / "labels.txt";
    run_dbcv(ctx, args);

    const auto out = read_file(dir / artifact::dbcv_json);
    REQUIRE(out.has_value());
    const auto j = nlohmann::json::parse(*out);
    CHECK(j["overall"].get<double>() > 0.9);
    CHECK(j["n_scored"] == 40);

    // Sampled scoring path.
    args.sample = 20;
    args.seed = 3;
    run_dbcv(ctx, args);
    const auto sampled = nlohmann::json::parse(*read_file(dir / artifact::dbcv_json));
    CHECK(sampled["n_scored"] == 20);
    CHECK(sampled["overall"].get<double>() > 0.9);

    // Label/point count mismatch is a data error (exit code 4).
    atomic_write_file(dir / "labels.txt", labels + "0\n");
    args.sample = 0;
    try {
        run_dbcv(ctx, args);
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.exit_code == 4);
    }
    fs::remove_all(dir);
}
