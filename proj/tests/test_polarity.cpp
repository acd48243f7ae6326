#include "egonets/polarity.hpp"

#include <vector>

#include "doctest.h"

using namespace egonets;

TEST_CASE("classify_tie threshold rule") {
    // 2 negative of 10 (20%) -> negative.
    auto tie = classify_tie(8, 2, 0);
    CHECK(tie.sign == TieSign::negative);
    CHECK(tie.negative_fraction == doctest::Approx(0.2));

    // Exactly 17% (17 of 100) -> positive: strict inequality.
    tie = classify_tie(83, 17, 0);
    CHECK(tie.sign == TieSign::positive);

    // No negativity at all -> positive, regardless of the neutral mix.
    tie = classify_tie(1, 0, 9);
    CHECK(tie.sign == TieSign::positive);
    CHECK(tie.negative_fraction == 0.0);

    CHECK_THROWS(classify_tie(0, 0, 0));

    const std::vector<PolarityLabel> labels{PolarityLabel::negative, PolarityLabel::positive,
                                            PolarityLabel::neutral, PolarityLabel::neutral};
    tie = classify_tie(labels);
    CHECK(tie.n_negative == 1);
    CHECK(tie.n_neutral == 2);
    CHECK(tie.negative_fraction == doctest::Approx(0.25));
    CHECK(tie.sign == TieSign::negative);
}

TEST_CASE("exhaustive sign rule up to 50 interactions, integer oracle") {
    // sign == negative iff 100 * n_negative > 17 * total, exactly.
    for (std::uint32_t total = 1; total <= 50; ++total) {
        for (std::uint32_t neg = 0; neg <= total; ++neg) {
            for (std::uint32_t neu = 0; neu + neg <= total; ++neu) {
                const std::uint32_t pos = total - neg - neu;
                const auto tie = classify_tie(pos, neg, neu);
                const bool oracle_negative = 100ULL * neg > 17ULL * total;
                CHECK((tie.sign == TieSign::negative) == oracle_negative);
            }
        }
    }
    // The 17-of-100 boundary.
    CHECK(classify_tie(83, 17, 0).sign == TieSign::positive);
    CHECK(classify_tie(82, 18, 0).sign == TieSign::negative);
}

TEST_CASE("denominator toggle excludes neutrals when asked") {
    PolarityOptions exclude;
    exclude.neutral_in_denominator = false;
    // 1 negative, 4 neutral: inclusive fraction 0.2 (negative), exclusive 1.0.
    const auto inclusive = classify_tie(0, 1, 4);
    CHECK(inclusive.sign == TieSign::negative);
    const auto exclusive = classify_tie(0, 1, 4, exclude);
    CHECK(exclusive.negative_fraction == 1.0);
    CHECK(exclusive.sign == TieSign::negative);
    // All-neutral tie under the exclusive denominator: fraction 0, positive.
    const auto all_neutral = classify_tie(0, 0, 5, exclude);
    CHECK(all_neutral.negative_fraction == 0.0);
    CHECK(all_neutral.sign == TieSign::positive);
}

TEST_CASE("monotonicity and neutral padding") {
    for (std::uint32_t pos = 0; pos <= 20; ++pos) {
        for (std::uint32_t neu = 0; neu <= 20; ++neu) {
            double prev = -1.0;
            for (std::uint32_t neg = 0; neg <= 20; ++neg) {
                if (pos + neg + neu == 0) continue;
                const double fraction = classify_tie(pos, neg, neu).negative_fraction;
                CHECK(fraction >= prev);  // adding a negative never decreases it
                prev = fraction;
            }
        }
    }
    // Adding neutrals never increases the fraction.
    for (std::uint32_t neg = 1; neg <= 10; ++neg) {
        double prev = 2.0;
        for (std::uint32_t neu = 0; neu <= 30; ++neu) {
            const double fraction = classify_tie(5, neg, neu).negative_fraction;
            CHECK(fraction <= prev);
            prev = fraction;
        }
    }
}

TEST_CASE("threshold sweep endpoints") {
    PolarityOptions zero;
    zero.negative_threshold = 0.0;
    PolarityOptions one;
    one.negative_threshold = 1.0;
    for (std::uint32_t neg = 0; neg <= 10; ++neg) {
        const auto at_zero = classify_tie(10, neg, 3, zero);
        CHECK((at_zero.sign == TieSign::negative) == (neg >= 1));
        const auto at_one = classify_tie(10, neg, 3, one);
        CHECK(at_one.sign == TieSign::positive);
    }
}

TEST_CASE("polarity percentages over active ties") {
    EgoNetworkSnapshot snap;
    snap.ego_id = 1;
    snap.period = 2;
    auto make_ties = [&](std::size_t n, std::size_t negative) {
        std::vector<SignedTie> ties;
        snap.ties.clear();
        for (std::size_t i = 0; i < n; ++i) {
            TieFrequency tf;
            tf.alter_id = 100 + i;
            snap.ties.push_back(tf);
            SignedTie tie;
            tie.ego_id = 1;
            tie.alter_id = 100 + i;
            tie.sign = i < negative ? TieSign::negative : TieSign::positive;
            ties.push_back(tie);
        }
        snap.active_size = n;
        return ties;
    };

    auto summary = polarity_percentages(snap, make_ties(10, 3));
    REQUIRE(summary.has_value());
    CHECK(summary->pct_negative == doctest::Approx(30.0));
    CHECK(summary->pct_positive == doctest::Approx(70.0));

    summary = polarity_percentages(snap, make_ties(7, 0));
    CHECK(summary->pct_negative == 0.0);
    CHECK(summary->pct_positive == 100.0);

    summary = polarity_percentages(snap, make_ties(1, 1));
    CHECK(summary->pct_negative == 100.0);
    CHECK(summary->pct_positive == 0.0);

    // Complementarity within 1e-9 across sizes.
    for (std::size_t n = 1; n <= 60; ++n) {
        for (std::size_t neg = 0; neg <= n; ++neg) {
            const auto s = polarity_percentages(snap, make_ties(n, neg));
            CHECK(std::abs(s->pct_negative + s->pct_positive - 100.0) < 1e-9);
        }
    }

    // Empty network: excluded.
    snap.ties.clear();
    snap.active_size = 0;
    CHECK(!polarity_percentages(snap, {}).has_value());
}
