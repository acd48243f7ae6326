#include "egonets/egonet.hpp"

#include <algorithm>

#include "doctest.h"
#include "egonets/rng.hpp"
#include "egonets/synth.hpp"

using namespace egonets;

namespace {

const PeriodSchedule kSchedule;
const Period& period0() { return kSchedule.period(0); }

InteractionRecord make_record(UserId ego, UserId alter, InteractionKind kind, int day_offset) {
    InteractionRecord r;
    r.ego_id = ego;
    r.alter_id = alter;
    r.kind = kind;
    r.timestamp = period0().start + static_cast<Timestamp>(day_offset) * kSecondsPerDay + 3600;
    return r;
}

}  // namespace

TEST_CASE("contact frequencies: per-kind tallies, quotes excluded from Eq-style numerator") {
    std::vector<InteractionRecord> records;
    const double years = period0().length_years();

    // 6 replies + 6 mentions to alter 2; 3 retweets + 2 quotes to alter 3.
    for (int i = 0; i < 6; ++i) records.push_back(make_record(1, 2, InteractionKind::reply, i));
    for (int i = 0; i < 6; ++i) records.push_back(make_record(1, 2, InteractionKind::mention, 30 + i));
    for (int i = 0; i < 3; ++i) records.push_back(make_record(1, 3, InteractionKind::retweet, i));
    for (int i = 0; i < 2; ++i) records.push_back(make_record(1, 3, InteractionKind::quote, 10 + i));
    // Noise from another ego and another period.
    records.push_back(make_record(9, 2, InteractionKind::reply, 3));
    records.push_back(make_record(1, 2, InteractionKind::reply, 400));

    const auto ties = contact_frequencies(1, period0(), records);
    REQUIRE(ties.size() == 2);
    CHECK(ties[0].alter_id == 2);
    CHECK(ties[0].frequency == doctest::Approx(12.0 / years));
    CHECK(ties[1].alter_id == 3);
    CHECK(ties[1].frequency == doctest::Approx(3.0 / years));
    CHECK(ties[1].events(InteractionKind::quote) == 2);

    FrequencyOptions with_quotes;
    with_quotes.include_quotes = true;
    const auto ties_q = contact_frequencies(1, period0(), records, with_quotes);
    CHECK(ties_q[1].frequency == doctest::Approx(5.0 / years));

    CHECK(contact_frequencies(77, period0(), records).empty());
}

TEST_CASE("active ties threshold") {
    std::vector<TieFrequency> ties(3);
    ties[0].alter_id = 1;
    ties[0].frequency = 1.0;
    ties[1].alter_id = 2;
    ties[1].frequency = 0.99;
    ties[2].alter_id = 3;
    ties[2].frequency = 55.0;

    const auto active = active_ties(ties, 1.0);
    REQUIRE(active.size() == 2);
    CHECK(active[0].alter_id == 1);
    CHECK(active[1].alter_id == 3);
    CHECK(active_ties({}, 1.0).empty());
}

TEST_CASE("snapshot: single alter, cumulative circles, empty case") {
    std::vector<InteractionRecord> records;
    for (int i = 0; i < 5; ++i) records.push_back(make_record(1, 2, InteractionKind::reply, i * 3));
    const auto snap = build_snapshot(1, period0(), records);
    CHECK(snap.active_size == 1);
    REQUIRE(snap.ring_count() == 1);
    CHECK(snap.rings[0] == std::vector<UserId>{2});
    CHECK(snap.circle_sizes == std::vector<std::size_t>{1});

    const auto empty = build_snapshot(42, period0(), records);
    CHECK(empty.active_size == 0);
    CHECK(empty.ring_count() == 0);

    // Rings of sizes (2, 3) stack into circles (2, 5).
    std::vector<InteractionRecord> two_rings;
    for (UserId alter : {10, 11}) {
        for (int i = 0; i < 50; ++i) {
            two_rings.push_back(make_record(1, alter, InteractionKind::reply, i * 7));
        }
    }
    for (UserId alter : {20, 21, 22}) {
        for (int i = 0; i < 4; ++i) {
            two_rings.push_back(make_record(1, alter, InteractionKind::mention, i * 30));
        }
    }
    const auto stacked = build_snapshot(1, period0(), two_rings);
    REQUIRE(stacked.ring_count() == 2);
    CHECK(stacked.rings[0] == std::vector<UserId>{10, 11});
    CHECK(stacked.rings[1] == std::vector<UserId>{20, 21, 22});
    CHECK(stacked.circle_sizes == std::vector<std::size_t>{2, 5});
    CHECK(stacked.active_size == 5);
    // Mean frequency decreases outward across circles.
    CHECK(stacked.ring_means[0] > stacked.ring_means[1]);
}

TEST_CASE("planted 4-layer profiles are recovered") {
    const std::vector<PlantedLayer> layers{
        {5, 54.0, 0.4}, {10, 18.0, 0.4}, {35, 6.0, 0.4}, {100, 2.0, 0.4}};
    int recovered = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        const auto profile = planted_profile(layers, 1000 + t);
        const auto result = mean_shift_rings(profile.frequencies);
        if (result.ring_count() == 4) ++recovered;
    }
    CHECK(recovered >= 48);
}

TEST_CASE("ring transitions by normalized rank") {
    // Snapshot with two rings: inner {1, 2}, outer {3, 4, 5}.
    auto make_snap = [](int period, std::vector<std::vector<UserId>> rings) {
        EgoNetworkSnapshot snap;
        snap.ego_id = 1;
        snap.period = period;
        snap.rings = std::move(rings);
        for (const auto& ring : snap.rings) {
            for (const UserId alter : ring) {
                TieFrequency tie;
                tie.alter_id = alter;
                snap.ties.push_back(tie);
            }
        }
        std::sort(snap.ties.begin(), snap.ties.end(),
                  [](const TieFrequency& a, const TieFrequency& b) {
                      return a.alter_id < b.alter_id;
                  });
        snap.active_size = snap.ties.size();
        std::size_t cumulative = 0;
        for (auto& ring : snap.rings) {
            std::sort(ring.begin(), ring.end());
            cumulative += ring.size();
            snap.circle_sizes.push_back(cumulative);
        }
        return snap;
    };

    const auto a = make_snap(0, {{1, 2}, {3, 4, 5}});

    // Identity: everyone stays.
    const auto self = ring_transition_summary(a, a);
    CHECK(self.stayed == a.active_size);
    CHECK(self.moved_inward == 0);
    CHECK(self.moved_outward == 0);
    CHECK(self.entered == 0);
    CHECK(self.exited == 0);

    // Alter 3 moves in (rank 1.0 -> 0.5), alter 1 moves out, alter 5 exits,
    // alter 9 enters.
    const auto b = make_snap(1, {{2, 3}, {1, 4, 9}});
    const auto t = ring_transition_summary(a, b);
    CHECK(t.moved_inward == 1);   // alter 3
    CHECK(t.moved_outward == 1);  // alter 1
    CHECK(t.stayed == 2);         // alters 2 and 4
    CHECK(t.exited == 1);         // alter 5
    CHECK(t.entered == 1);        // alter 9
    CHECK(t.moved_inward + t.moved_outward + t.stayed == 4);  // common alters

    // Different ring counts compare by normalized rank: the single ring of a
    // 1-ring snapshot has rank 1.0, the outer of 2 rings also 1.0.
    const auto c = make_snap(2, {{1, 2, 3, 4, 5}});
    const auto u = ring_transition_summary(a, c);
    CHECK(u.stayed == 3);        // outer ring stays at rank 1.0
    CHECK(u.moved_outward == 2); // former inner ring now at rank 1.0
}

TEST_CASE("snapshot is invariant to record order") {
    Rng rng(5);
    std::vector<InteractionRecord> records;
    for (UserId alter = 2; alter < 40; ++alter) {
        const int events = 2 + static_cast<int>(rng.bounded(40));
        for (int i = 0; i < events; ++i) {
            records.push_back(make_record(1, alter, InteractionKind::reply,
                                          static_cast<int>(rng.bounded(360))));
        }
    }
    const auto base = build_snapshot(1, period0(), records);
    for (std::size_t i = records.size(); i > 1; --i) {
        std::swap(records[i - 1], records[rng.bounded(i)]);
    }
    const auto shuffled = build_snapshot(1, period0(), records);
    CHECK(base.rings == shuffled.rings);
    CHECK(base.circle_sizes == shuffled.circle_sizes);
    CHECK(base.active_size == shuffled.active_size);
}

TEST_CASE("circle monotonicity on random snapshots") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<InteractionRecord> records;
        const int alters = 5 + static_cast<int>(rng.bounded(60));
        for (int a = 0; a < alters; ++a) {
            const int events = 1 + static_cast<int>(rng.bounded(80));
            for (int i = 0; i < events; ++i) {
                records.push_back(make_record(1, 100 + a, InteractionKind::mention,
                                              static_cast<int>(rng.bounded(360))));
            }
        }
        const auto snap = build_snapshot(1, period0(), records);
        for (std::size_t c = 1; c < snap.circle_sizes.size(); ++c) {
            CHECK(snap.circle_sizes[c - 1] <= snap.circle_sizes[c]);
        }
        for (std::size_t r = 1; r < snap.ring_means.size(); ++r) {
            CHECK(snap.ring_means[r - 1] > snap.ring_means[r]);
        }
        std::size_t total = 0;
        for (const auto& ring : snap.rings) total += ring.size();
        CHECK(total == snap.active_size);
    }
}
