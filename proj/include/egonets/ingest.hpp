#pragma once
// Parsing and text preprocessing of interaction logs. Retweets are forced
// neutral, self-interactions are dropped, and records outside the schedule
// span are dropped and counted.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "egonets/records.hpp"
#include "egonets/time.hpp"

namespace egonets {

struct CorpusStats {
    std::uint64_t total_lines = 0;  // data lines seen (CSV header excluded)
    std::uint64_t malformed_lines = 0;
    std::uint64_t dropped_self_loops = 0;
    std::uint64_t dropped_out_of_span = 0;
    std::uint64_t retweets_forced_neutral = 0;
    // Corpus-building counters (Ts -> Ts').
    std::uint64_t dropped_retweets_for_text = 0;
    std::uint64_t dropped_duplicates = 0;
    std::uint64_t dropped_empty_text = 0;
    std::map<int, std::uint64_t> per_period_counts;

    std::uint64_t retained() const;
    std::string to_json() const;
};

enum class InputFormat { jsonl, csv };

struct ParseResult {
    std::vector<InteractionRecord> records;
    CorpusStats stats;
    std::vector<std::string> warnings;  // capped, one per malformed line
};

ParseResult parse_interactions(std::istream& in, const PeriodSchedule& schedule,
                               InputFormat format);

// Token prefixes stripped by preprocess_text. Matching is ASCII
// case-insensitive on whitespace-delimited tokens.
const std::vector<std::string>& default_strip_prefixes();

std::string preprocess_text(std::string_view raw);
std::string preprocess_text(std::string_view raw, const std::vector<std::string>& strip_prefixes);

struct CorpusEntry {
    UserId ego_id = 0;
    int period = 0;
    std::string text;

    bool operator==(const CorpusEntry&) const = default;
};

struct TextCorpus {
    std::vector<CorpusEntry> entries;
    CorpusStats stats;
};

// Ts': non-retweet social records with non-empty preprocessed text,
// exact-duplicate texts removed globally (first occurrence kept).
TextCorpus build_text_corpus(const std::vector<InteractionRecord>& records,
                             const PeriodSchedule& schedule);

}  // namespace egonets
