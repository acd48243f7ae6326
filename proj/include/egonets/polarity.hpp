#pragma once
// Signed ties: binary relationship signs derived from per-interaction
// polarity labels. A tie is negative when strictly more than the threshold
// fraction (default 17%) of its interactions are negative; there is no
// neutral sign.

#include <optional>
#include <span>
#include <vector>

#include "egonets/egonet.hpp"
#include "egonets/records.hpp"
#include "egonets/tally.hpp"

namespace egonets {

enum class TieSign : std::uint8_t { positive, negative };

struct PolarityOptions {
    double negative_threshold = 0.17;
    // Count neutral interactions (retweets) in the fraction's denominator.
    bool neutral_in_denominator = true;
};

struct SignedTie {
    UserId ego_id = 0;
    UserId alter_id = 0;
    int period = 0;
    std::uint32_t n_positive = 0;
    std::uint32_t n_negative = 0;
    std::uint32_t n_neutral = 0;
    double negative_fraction = 0.0;
    TieSign sign = TieSign::positive;

    std::uint32_t total() const { return n_positive + n_negative + n_neutral; }
};

// Throws std::invalid_argument on an empty label list.
SignedTie classify_tie(std::span<const PolarityLabel> labels, const PolarityOptions& options = {});
SignedTie classify_tie(std::uint32_t n_positive, std::uint32_t n_negative,
                       std::uint32_t n_neutral, const PolarityOptions& options = {});

struct PolaritySummary {
    UserId ego_id = 0;
    int period = 0;
    double pct_negative = 0.0;
    double pct_positive = 0.0;
    std::size_t n_ties = 0;            // classified active ties
    std::size_t n_negative_ties = 0;
    std::size_t n_unlabeled_excluded = 0;  // active ties without any label
};

// Percentages over the snapshot's active ties. Ties must cover the active
// alters; active ties without labels are excluded and counted, never
// defaulted. Returns nullopt when nothing is classifiable (ego excluded).
std::optional<PolaritySummary> polarity_percentages(const EgoNetworkSnapshot& snapshot,
                                                    std::span<const SignedTie> ties,
                                                    std::size_t n_unlabeled_excluded = 0);

// Classified signed ties for the snapshot's active alters, from tallies.
struct ClassifiedTies {
    std::vector<SignedTie> ties;
    std::size_t n_unlabeled_excluded = 0;
};
ClassifiedTies classify_active_ties(const EgoNetworkSnapshot& snapshot, const TallyIndex& index,
                                    const PolarityOptions& options = {});

}  // namespace egonets
