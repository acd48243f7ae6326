#include "egonets/records.hpp"

#include <charconv>
#include <ostream>

#include "egonets/io.hpp"
#include "json.hpp"

namespace egonets {

using nlohmann::json;

std::string_view to_string(InteractionKind k) {
    switch (k) {
        case InteractionKind::reply: return "reply";
        case InteractionKind::mention: return "mention";
        case InteractionKind::retweet: return "retweet";
        case InteractionKind::quote: return "quote";
    }
    return "reply";
}

std::string_view to_string(PolarityLabel p) {
    switch (p) {
        case PolarityLabel::positive: return "positive";
        case PolarityLabel::negative: return "negative";
        case PolarityLabel::neutral: return "neutral";
    }
    return "neutral";
}

std::optional<InteractionKind> kind_from_string(std::string_view s) {
    if (s == "reply") return InteractionKind::reply;
    if (s == "mention") return InteractionKind::mention;
    if (s == "retweet") return InteractionKind::retweet;
    if (s == "quote") return InteractionKind::quote;
    return std::nullopt;
}

std::optional<PolarityLabel> polarity_from_string(std::string_view s) {
    if (s == "positive") return PolarityLabel::positive;
    if (s == "negative") return PolarityLabel::negative;
    if (s == "neutral") return PolarityLabel::neutral;
    return std::nullopt;
}

namespace {

std::optional<UserId> user_id_from_json(const json& v) {
    if (v.is_number_unsigned()) return v.get<UserId>();
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        UserId id = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
        if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return id;
    }
    return std::nullopt;
}

void set_error(std::string* error, std::string_view msg) {
    if (error) *error = msg;
}

}  // namespace

std::string to_json_line(const InteractionRecord& r) {
    // Keys emitted in alphabetical order to match nlohmann's object ordering,
    // keeping serialize(parse(line)) stable.
    std::string out;
    out.reserve(96 + r.text.size());
    out += "{\"alter_id\":";
    out += std::to_string(r.alter_id);
    out += ",\"ego_id\":";
    out += std::to_string(r.ego_id);
    out += ",\"kind\":\"";
    out += to_string(r.kind);
    out += '"';
    if (r.polarity) {
        out += ",\"polarity\":\"";
        out += to_string(*r.polarity);
        out += '"';
    }
    if (!r.text.empty()) {
        out += ",\"text\":";
        out += json(r.text).dump();
    }
    out += ",\"timestamp\":\"";
    out += format_timestamp(r.timestamp);
    out += '"';
    if (r.topic) {
        out += ",\"topic\":";
        out += std::to_string(*r.topic);
    }
    out += '}';
    return out;
}

std::optional<InteractionRecord> record_from_json_line(std::string_view line, std::string* error) {
    const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!j.is_object()) {
        set_error(error, "not a JSON object");
        return std::nullopt;
    }
    InteractionRecord r;

    const auto ego = j.find("ego_id");
    const auto alter = j.find("alter_id");
    if (ego == j.end() || alter == j.end()) {
        set_error(error, "missing ego_id/alter_id");
        return std::nullopt;
    }
    const auto ego_id = user_id_from_json(*ego);
    const auto alter_id = user_id_from_json(*alter);
    if (!ego_id || !alter_id) {
        set_error(error, "ego_id/alter_id must be unsigned integers");
        return std::nullopt;
    }
    r.ego_id = *ego_id;
    r.alter_id = *alter_id;

    const auto ts = j.find("timestamp");
    if (ts == j.end() || !ts->is_string()) {
        set_error(error, "missing timestamp");
        return std::nullopt;
    }
    const auto parsed = parse_timestamp(ts->get_ref<const std::string&>());
    if (!parsed) {
        set_error(error, "unparseable timestamp");
        return std::nullopt;
    }
    r.timestamp = *parsed;

    const auto kind = j.find("kind");
    if (kind == j.end() || !kind->is_string()) {
        set_error(error, "missing kind");
        return std::nullopt;
    }
    const auto k = kind_from_string(kind->get_ref<const std::string&>());
    if (!k) {
        set_error(error, "unknown kind");
        return std::nullopt;
    }
    r.kind = *k;

    if (const auto pol = j.find("polarity"); pol != j.end() && !pol->is_null()) {
        if (!pol->is_string()) {
            set_error(error, "polarity must be a string");
            return std::nullopt;
        }
        const auto p = polarity_from_string(pol->get_ref<const std::string&>());
        if (!p) {
            set_error(error, "unknown polarity");
            return std::nullopt;
        }
        r.polarity = *p;
    }

    if (const auto topic = j.find("topic"); topic != j.end() && !topic->is_null()) {
        if (!topic->is_number_integer()) {
            set_error(error, "topic must be an integer");
            return std::nullopt;
        }
        const auto t = topic->get<std::int64_t>();
        if (t < kTopicOutlier || t > INT32_MAX) {
            set_error(error, "topic out of range");
            return std::nullopt;
        }
        r.topic = static_cast<TopicId>(t);
    }

    if (const auto text = j.find("text"); text != j.end() && !text->is_null()) {
        if (!text->is_string()) {
            set_error(error, "text must be a string");
            return std::nullopt;
        }
        r.text = text->get<std::string>();
    }
    return r;
}

std::string csv_header() { return "ego_id,alter_id,timestamp,kind,polarity,topic,text"; }

namespace {

std::optional<UserId> user_id_from_text(std::string_view s) {
    UserId id = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
    if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return id;
    return std::nullopt;
}

}  // namespace

std::string to_csv_line(const InteractionRecord& r) {
    std::string out;
    out += std::to_string(r.ego_id);
    out += ',';
    out += std::to_string(r.alter_id);
    out += ',';
    out += format_timestamp(r.timestamp);
    out += ',';
    out += to_string(r.kind);
    out += ',';
    if (r.polarity) out += to_string(*r.polarity);
    out += ',';
    if (r.topic) out += std::to_string(*r.topic);
    out += ',';
    out += csv_quote(r.text);
    return out;
}

std::optional<InteractionRecord> record_from_csv_line(std::string_view line, std::string* error) {
    const auto fields = csv_split(line);
    if (!fields || fields->size() != 7) {
        set_error(error, "expected 7 CSV fields");
        return std::nullopt;
    }
    InteractionRecord r;
    const auto ego = user_id_from_text((*fields)[0]);
    const auto alter = user_id_from_text((*fields)[1]);
    if (!ego || !alter) {
        set_error(error, "ego_id/alter_id must be unsigned integers");
        return std::nullopt;
    }
    r.ego_id = *ego;
    r.alter_id = *alter;
    const auto ts = parse_timestamp((*fields)[2]);
    if (!ts) {
        set_error(error, "unparseable timestamp");
        return std::nullopt;
    }
    r.timestamp = *ts;
    const auto kind = kind_from_string((*fields)[3]);
    if (!kind) {
        set_error(error, "unknown kind");
        return std::nullopt;
    }
    r.kind = *kind;
    if (!(*fields)[4].empty()) {
        const auto p = polarity_from_string((*fields)[4]);
        if (!p) {
            set_error(error, "unknown polarity");
            return std::nullopt;
        }
        r.polarity = *p;
    }
    if (!(*fields)[5].empty()) {
        std::int64_t t = 0;
        const auto& f = (*fields)[5];
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), t);
        if (ec != std::errc{} || ptr != f.data() + f.size() || t < kTopicOutlier ||
            t > INT32_MAX) {
            set_error(error, "topic out of range");
            return std::nullopt;
        }
        r.topic = static_cast<TopicId>(t);
    }
    r.text = (*fields)[6];
    return r;
}

void write_store(std::ostream& out, const std::vector<InteractionRecord>& records) {
    for (const auto& r : records) {
        out << to_json_line(r) << '\n';
    }
}

}  // namespace egonets
