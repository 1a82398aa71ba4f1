#include <doctest.h>

#include "manet/rng.hpp"
#include "manet/trust.hpp"

using namespace manet;

TEST_CASE("update_trust clamps at both ends") {
    TrustTable table;
    table.set(1, 2, 1.0);
    CHECK(table.update(1, 2, TrustOutcome::Reward, 0.0) == 1.0);

    table.set(1, 3, 0.0);
    CHECK(table.update(1, 3, TrustOutcome::Penalize, 0.0) == 0.0);
}

TEST_CASE("update_trust applies the configured deltas") {
    TrustTable table;  // defaults: init 0.5, reward 0.1, penalty 0.2
    CHECK(table.update(1, 2, TrustOutcome::Reward, 1.5) ==
          doctest::Approx(0.6));
    CHECK(table.update(1, 2, TrustOutcome::Penalize, 2.5) ==
          doctest::Approx(0.4));

    TrustTable custom(TrustParams{0.9, 0.05, 0.3});
    CHECK(custom.get(4, 7) == doctest::Approx(0.9));
    CHECK(custom.update(4, 7, TrustOutcome::Penalize, 0.0) ==
          doctest::Approx(0.6));
}

TEST_CASE("updates append matching observations") {
    TrustTable table;
    CHECK(!table.last_observation(1, 2).has_value());

    table.update(1, 2, TrustOutcome::Reward, 3.0);
    auto obs = table.last_observation(1, 2);
    REQUIRE(obs.has_value());
    CHECK(obs->kind == ObservationKind::Positive);
    CHECK(obs->sim_time == 3.0);

    table.update(1, 2, TrustOutcome::Penalize, 4.0);
    obs = table.last_observation(1, 2);
    REQUIRE(obs.has_value());
    CHECK(obs->kind == ObservationKind::Negative);
    CHECK(table.observations(1, 2).size() == 2);

    // directionality: (2,1) is a different pair
    CHECK(!table.last_observation(2, 1).has_value());
}

TEST_CASE("trust values stay in [0,1] under random update sequences") {
    RngStream rng(7);
    TrustTable table(TrustParams{0.5, 0.1, 0.2});
    for (int i = 0; i < 10000; ++i) {
        const NodeId observer = rng.uniform_int(1, 12);
        const NodeId subject = rng.uniform_int(1, 12);
        if (observer == subject) {
            continue;
        }
        const auto outcome = rng.bernoulli(0.5) ? TrustOutcome::Reward
                                                : TrustOutcome::Penalize;
        const double value =
            table.update(observer, subject, outcome, static_cast<double>(i));
        CHECK(value >= 0.0);
        CHECK(value <= 1.0);
    }
    CHECK(table.all_in_bounds());
}
