#include "egonets/polarity.hpp"

#include <stdexcept>

namespace egonets {

SignedTie classify_tie(std::span<const PolarityLabel> labels, const PolarityOptions& options) {
    std::uint32_t pos = 0, neg = 0, neu = 0;
    for (const PolarityLabel l : labels) {
        switch (l) {
            case PolarityLabel::positive: ++pos; break;
            case PolarityLabel::negative: ++neg; break;
            case PolarityLabel::neutral: ++neu; break;
        }
    }
    return classify_tie(pos, neg, neu, options);
}

SignedTie classify_tie(std::uint32_t n_positive, std::uint32_t n_negative,
                       std::uint32_t n_neutral, const PolarityOptions& options) {
    SignedTie tie;
    tie.n_positive = n_positive;
    tie.n_negative = n_negative;
    tie.n_neutral = n_neutral;
    if (tie.total() == 0) throw std::invalid_argument("classify_tie: tie has no interactions");

    const std::uint32_t denominator =
        options.neutral_in_denominator ? tie.total() : n_positive + n_negative;
    tie.negative_fraction =
        denominator == 0 ? 0.0 : static_cast<double>(n_negative) / denominator;
    tie.sign = tie.negative_fraction > options.negative_threshold ? TieSign::negative
                                                                  : TieSign::positive;
    return tie;
}

std::optional<PolaritySummary> polarity_percentages(const EgoNetworkSnapshot& snapshot,
                                                    std::span<const SignedTie> ties,
                                                    std::size_t n_unlabeled_excluded) {
    if (snapshot.active_size == 0 || ties.empty()) return std::nullopt;
    PolaritySummary summary;
    summary.ego_id = snapshot.ego_id;
    summary.period = snapshot.period;
    summary.n_ties = ties.size();
    summary.n_unlabeled_excluded = n_unlabeled_excluded;
    for (const auto& tie : ties) {
        if (tie.sign == TieSign::negative) ++summary.n_negative_ties;
    }
    summary.pct_negative = 100.0 * static_cast<double>(summary.n_negative_ties) /
                           static_cast<double>(summary.n_ties);
    summary.pct_positive = 100.0 - summary.pct_negative;
    return summary;
}

ClassifiedTies classify_active_ties(const EgoNetworkSnapshot& snapshot, const TallyIndex& index,
                                    const PolarityOptions& options) {
    ClassifiedTies out;
    const auto tallies = index.ties_of(snapshot.ego_id, snapshot.period);
    for (const auto& tie : snapshot.ties) {
        const auto it = std::lower_bound(
            tallies.begin(), tallies.end(), tie.alter_id,
            [](const TieTally& t, UserId alter) { return t.alter < alter; });
        if (it == tallies.end() || it->alter != tie.alter_id || it->total_labeled() == 0) {
            ++out.n_unlabeled_excluded;
            continue;
        }
        SignedTie signed_tie =
            classify_tie(it->labeled(PolarityLabel::positive), it->labeled(PolarityLabel::negative),
                         it->labeled(PolarityLabel::neutral), options);
        signed_tie.ego_id = snapshot.ego_id;
        signed_tie.alter_id = tie.alter_id;
        signed_tie.period = snapshot.period;
        out.ties.push_back(signed_tie);
    }
    return out;
}

}  // namespace egonets
