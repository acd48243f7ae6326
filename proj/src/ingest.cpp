#include "egonets/ingest.hpp"

#include <cctype>
#include <istream>
#include <unordered_set>

#include "json.hpp"

namespace egonets {

std::uint64_t CorpusStats::retained() const {
    std::uint64_t n = 0;
    for (const auto& [period, count] : per_period_counts) n += count;
    return n;
}

std::string CorpusStats::to_json() const {
    nlohmann::json j{
        {"total_lines", total_lines},
        {"malformed_lines", malformed_lines},
        {"dropped_self_loops", dropped_self_loops},
        {"dropped_out_of_span", dropped_out_of_span},
        {"retweets_forced_neutral", retweets_forced_neutral},
        {"dropped_retweets_for_text", dropped_retweets_for_text},
        {"dropped_duplicates", dropped_duplicates},
        {"dropped_empty_text", dropped_empty_text},
        {"retained", retained()},
    };
    nlohmann::json per_period = nlohmann::json::object();
    for (const auto& [period, count] : per_period_counts) {
        per_period["I" + std::to_string(period)] = count;
    }
    j["per_period_counts"] = per_period;
    return j.dump(2);
}

ParseResult parse_interactions(std::istream& in, const PeriodSchedule& schedule,
                               InputFormat format) {
    constexpr std::size_t kMaxWarnings = 50;
    ParseResult out;
    std::string line;
    bool first = true;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (format == InputFormat::csv && first) {
            first = false;
            if (line == csv_header()) continue;  // header optional but recommended
        }
        first = false;
        if (line.empty()) continue;
        ++out.stats.total_lines;

        std::string error;
        auto rec = format == InputFormat::jsonl ? record_from_json_line(line, &error)
                                                : record_from_csv_line(line, &error);
        if (!rec) {
            ++out.stats.malformed_lines;
            if (out.warnings.size() < kMaxWarnings) {
                out.warnings.push_back("line " + std::to_string(line_no) + ": " + error);
            }
            continue;
        }
        if (rec->ego_id == rec->alter_id) {
            ++out.stats.dropped_self_loops;
            continue;
        }
        const auto period = period_of(rec->timestamp, schedule);
        if (!period) {
            ++out.stats.dropped_out_of_span;
            continue;
        }
        if (rec->kind == InteractionKind::retweet) {
            if (rec->polarity != PolarityLabel::neutral) ++out.stats.retweets_forced_neutral;
            rec->polarity = PolarityLabel::neutral;
        }
        ++out.stats.per_period_counts[period->index];
        out.records.push_back(std::move(*rec));
    }
    return out;
}

const std::vector<std::string>& default_strip_prefixes() {
    static const std::vector<std::string> prefixes = {
        "http://",
        "https://",
        "t.co/",
        "pic.twitter.com/",
        "www.",
    };
    return prefixes;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool iequals_prefix(std::string_view token, std::string_view prefix) {
    if (token.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(token[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i]))) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::string preprocess_text(std::string_view raw) {
    return preprocess_text(raw, default_strip_prefixes());
}

std::string preprocess_text(std::string_view raw, const std::vector<std::string>& strip_prefixes) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        while (i < raw.size() && is_space(raw[i])) ++i;
        const std::size_t begin = i;
        while (i < raw.size() && !is_space(raw[i])) ++i;
        if (i == begin) break;
        const std::string_view token = raw.substr(begin, i - begin);
        bool strip = false;
        for (const auto& prefix : strip_prefixes) {
            if (iequals_prefix(token, prefix)) {
                strip = true;
                break;
            }
        }
        if (strip) continue;
        if (!out.empty()) out += ' ';
        out += token;
    }
    return out;
}

TextCorpus build_text_corpus(const std::vector<InteractionRecord>& records,
                             const PeriodSchedule& schedule) {
    TextCorpus corpus;
    std::unordered_set<std::string> seen;
    for (const auto& r : records) {
        if (r.text.empty()) continue;
        if (r.kind == InteractionKind::retweet) {
            ++corpus.stats.dropped_retweets_for_text;
            continue;
        }
        const auto period = period_of(r.timestamp, schedule);
        if (!period) continue;  // records are in-span after ingest
        std::string text = preprocess_text(r.text);
        if (text.empty()) {
            ++corpus.stats.dropped_empty_text;
            continue;
        }
        if (!seen.insert(text).second) {
            ++corpus.stats.dropped_duplicates;
            continue;
        }
        ++corpus.stats.per_period_counts[period->index];
        corpus.entries.push_back(CorpusEntry{r.ego_id, period->index, std::move(text)});
    }
    return corpus;
}

}  // namespace egonets
