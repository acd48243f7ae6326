#pragma once
// Interaction records: one directed social event per line. The canonical
// store format is JSON lines; a CSV variant with the same columns is
// accepted on input.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egonets/time.hpp"

namespace egonets {

using UserId = std::uint64_t;
using TopicId = std::int32_t;

inline constexpr TopicId kTopicOutlier = -1;

enum class InteractionKind : std::uint8_t { reply, mention, retweet, quote };
enum class PolarityLabel : std::uint8_t { positive, negative, neutral };

inline constexpr int kKindCount = 4;

std::string_view to_string(InteractionKind k);
std::string_view to_string(PolarityLabel p);
std::optional<InteractionKind> kind_from_string(std::string_view s);
std::optional<PolarityLabel> polarity_from_string(std::string_view s);

struct InteractionRecord {
    UserId ego_id = 0;
    UserId alter_id = 0;
    Timestamp timestamp = 0;
    InteractionKind kind = InteractionKind::reply;
    std::optional<PolarityLabel> polarity;
    std::optional<TopicId> topic;  // -1 marks an outlier/noise document
    std::string text;              // empty means absent

    bool is_social() const { return true; }  // all four kinds are social interactions
    bool operator==(const InteractionRecord&) const = default;
};

// Canonical JSON-lines serialization (alphabetical keys, absent optionals
// omitted). parse -> serialize -> parse is the identity on records.
std::string to_json_line(const InteractionRecord& r);
std::optional<InteractionRecord> record_from_json_line(std::string_view line,
                                                       std::string* error = nullptr);

// CSV variant: header ego_id,alter_id,timestamp,kind,polarity,topic,text.
std::string csv_header();
std::string to_csv_line(const InteractionRecord& r);
std::optional<InteractionRecord> record_from_csv_line(std::string_view line,
                                                      std::string* error = nullptr);

void write_store(std::ostream& out, const std::vector<InteractionRecord>& records);

}  // namespace egonets
