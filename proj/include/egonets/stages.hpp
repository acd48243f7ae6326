#pragma once
// Pipeline stages. Stages communicate only via files in the output
// directory, write atomically, and record config and file hashes in
// manifest.json so identical runs are verifiably identical.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "egonets/config.hpp"
#include "egonets/dbcv.hpp"
#include "egonets/ingest.hpp"
#include "egonets/synth.hpp"

namespace egonets {

// Exit codes: 2 validation error, 3 missing upstream artifact, 4 data error.
struct StageError : std::runtime_error {
    StageError(int code, const std::string& message) : std::runtime_error(message), exit_code(code) {}
    int exit_code;
};

struct StageContext {
    std::filesystem::path out_dir;
    PipelineConfig config;
    int jobs = 1;
};

// File names within the output directory.
namespace artifact {
inline constexpr const char* records = "records.jsonl";
inline constexpr const char* ground_truth = "ground_truth.json";
inline constexpr const char* store = "store.jsonl";
inline constexpr const char* ingest_stats = "ingest_stats.json";
inline constexpr const char* cohort_ids = "cohort.txt";
inline constexpr const char* cohort_report = "cohort_report.json";
inline constexpr const char* egonet_csv = "egonet.csv";
inline constexpr const char* transitions_csv = "ring_transitions.csv";
inline constexpr const char* signed_csv = "signed.csv";
inline constexpr const char* ties_jsonl = "ties.jsonl";
inline constexpr const char* topics_csv = "topics.csv";
inline constexpr const char* ttests_csv = "ttests.csv";
inline constexpr const char* ttests_json = "ttests.json";
inline constexpr const char* manifest = "manifest.json";
inline constexpr const char* dbcv_json = "dbcv.json";
std::string snapshots(int period);          // snapshots_I<k>.json
std::string means_csv(const std::string&);  // means_<metric>.csv
std::string growthdiff_csv(const std::string&);
}  // namespace artifact

void run_synth(const StageContext& ctx, const ShockConfig& config);
void run_ingest(const StageContext& ctx, const std::filesystem::path& input);
void run_cohort(const StageContext& ctx);
void run_egonet(const StageContext& ctx);
void run_signed(const StageContext& ctx);
void run_topics(const StageContext& ctx);
void run_stats(const StageContext& ctx);
void run_report(const StageContext& ctx);

struct DbcvStageArgs {
    std::filesystem::path points;  // CSV rows of coordinates, or packed binary
    std::filesystem::path labels;  // one integer per line
    std::size_t sample = 0;        // 0 = score the full set
    std::uint64_t seed = 1;
    DistanceMetric metric = DistanceMetric::euclidean;
};
void run_dbcv(const StageContext& ctx, const DbcvStageArgs& args);

// Known scenario presets for the synth stage.
ShockConfig null_scenario(std::size_t cohort_size, std::uint64_t seed, int period_count);
ShockConfig lockdown_scenario(std::size_t cohort_size, std::uint64_t seed, int period_count,
                              int shock_period = 5);

}  // namespace egonets
