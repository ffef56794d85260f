#include "hawkeslob/errors.hpp"
#include "hawkeslob/orderbook.hpp"
#include "hawkeslob/rng.hpp"
#include "hawkeslob/simulator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace hawkeslob;

namespace {

ParameterSet one_stream(double mu, double nu) {
    auto p = ParameterSet::zeros(1);
    p.mu[0] = mu;
    p.nu(0, 0) = nu;
    p.kernels[0].decay = 2.0;
    p.impacts[0] = PowerImpact{0.5, 1.0};
    return p;
}

ParameterSet book() {
    orderbook::SymmetricSpec spec;
    spec.assets = 2;
    spec.mu = 0.2;
    spec.self = 0.3;
    spec.side_coupling = 0.1;
    spec.cross_same = 0.1;
    spec.impact_exponent = 0.7;
    spec.mark_rate = 2.0;
    return orderbook::symmetric_params(spec);
}

} // namespace

TEST(Rng, DeterministicAndSplittable) {
    Rng a(42), b(42);
    for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next_u64(), b.next_u64());
    Rng root(42);
    Rng s1 = root.split(1), s1_again = Rng(42).split(1), s2 = root.split(2);
    EXPECT_EQ(s1.next_u64(), s1_again.next_u64());
    EXPECT_NE(Rng(42).split(1).next_u64(), s2.next_u64());
    // consuming the parent does not change what a split child produces
    Rng used(42);
    for (int k = 0; k < 10; ++k) (void)used.next_u64();
    EXPECT_EQ(used.split(1).next_u64(), Rng(42).split(1).next_u64());
}

TEST(Rng, UniformIsOpenInterval) {
    Rng rng(9);
    for (int k = 0; k < 100000; ++k) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(DrawMark, MeanIsInverseRate) {
    for (auto [beta, tol] : {std::pair{1.0, 0.01}, std::pair{4.0, 0.005}}) {
        Rng rng(123);
        double sum = 0.0;
        for (int k = 0; k < 1'000'000; ++k) sum += draw_mark(beta, rng);
        EXPECT_NEAR(sum / 1e6, 1.0 / beta, tol);
    }
    Rng rng(1);
    EXPECT_THROW((void)draw_mark(0.0, rng), InputError);
}

TEST(DrawMark, FixedSeedFixedSequence) {
    Rng a(77), b(77);
    for (int k = 0; k < 1000; ++k) EXPECT_EQ(draw_mark(2.5, a), draw_mark(2.5, b));
}

TEST(Simulate, ZeroHorizonGivesEmptyStream) {
    SimConfig cfg;
    cfg.horizon_end = 0.0;
    const auto r = simulate(book(), cfg);
    EXPECT_TRUE(r.events.empty());
    ASSERT_EQ(r.prices.size(), 2u);
    EXPECT_TRUE(r.prices[0].times.empty());
    EXPECT_EQ(r.prices[0].ask_ticks_at(0.0), cfg.initial_spread_ticks);
    EXPECT_EQ(r.prices[0].bid_ticks_at(0.0), 0);
}

TEST(Simulate, BitIdenticalForSameSeed) {
    SimConfig cfg;
    cfg.horizon_end = 500.0;
    cfg.seed = 2024;
    const auto a = simulate(book(), cfg);
    const auto b = simulate(book(), cfg);
    EXPECT_EQ(a.events, b.events);
    EXPECT_GT(a.events.size(), 100u);
    cfg.seed = 2025;
    EXPECT_NE(simulate(book(), cfg).events, a.events);
}

TEST(Simulate, BatchMatchesSequentialRuns) {
    SimConfig cfg;
    cfg.horizon_end = 200.0;
    const std::vector<std::uint64_t> seeds{5, 6, 7, 8, 9};
    const auto batch = simulate_batch(book(), cfg, seeds, 3);
    ASSERT_EQ(batch.size(), seeds.size());
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        cfg.seed = seeds[k];
        EXPECT_EQ(batch[k].events, simulate(book(), cfg).events);
    }
}

TEST(Simulate, OutputIsValidAndPricesFollowCounts) {
    SimConfig cfg;
    cfg.horizon_end = 300.0;
    cfg.seed = 3;
    cfg.p0 = 1.2;
    cfg.tick = 1e-4;
    cfg.initial_spread_ticks = 2;
    const auto r = simulate(book(), cfg);
    EXPECT_NO_THROW(validate(r.events, 8));
    const auto rebuilt = orderbook::prices_from_counts(r.events, 2, 1.2, 1e-4, 2);
    for (std::size_t a = 0; a < 2; ++a) {
        EXPECT_EQ(r.prices[a].ask_ticks, rebuilt[a].ask_ticks);
        EXPECT_EQ(r.prices[a].bid_ticks, rebuilt[a].bid_ticks);
    }
    for (const auto& e : r.events.events) EXPECT_GT(e.volume, 0.0);
}

TEST(Simulate, RejectsNonStationaryUnlessAllowed) {
    const auto p = one_stream(0.5, 1.2);
    SimConfig cfg;
    cfg.horizon_end = 5.0;
    EXPECT_THROW((void)simulate(p, cfg), InputError);
    cfg.allow_nonstationary = true;
    cfg.max_events = 50;
    const auto r = simulate(p, cfg);
    EXPECT_LE(r.events.size(), 50u);
}

TEST(Simulate, TruncationIsFlagged) {
    SimConfig cfg;
    cfg.horizon_end = 1e4;
    cfg.max_events = 100;
    const auto r = simulate(book(), cfg);
    EXPECT_TRUE(r.truncated);
    EXPECT_EQ(r.events.size(), 100u);
}

TEST(Simulate, RejectsBadConfig) {
    SimConfig cfg;
    cfg.horizon_end = -1.0;
    EXPECT_THROW((void)simulate(book(), cfg), InputError);
    cfg.horizon_end = 1.0;
    cfg.max_events = 0;
    EXPECT_THROW((void)simulate(book(), cfg), InputError);
}

// Without excitation the total count over [0, T] is Poisson(m T).
TEST(Simulate, PoissonCountsWithinThreeStandardErrors) {
    auto p = ParameterSet::zeros_for_assets(1);
    for (double& m : p.mu) m = 0.25;
    SimConfig cfg;
    cfg.horizon_end = 100.0;
    std::vector<std::uint64_t> seeds(200);
    std::iota(seeds.begin(), seeds.end(), 1);
    const auto runs = simulate_batch(p, cfg, seeds);
    double sum = 0.0;
    for (const auto& r : runs) sum += static_cast<double>(r.events.size());
    const double mean = sum / 200.0, expected = 1.0 * 100.0;
    EXPECT_NEAR(mean, expected, 3.0 * std::sqrt(expected / 200.0));
}

TEST(Simulate, LongRunRateMatchesBranchingIdentity) {
    SimConfig cfg;
    cfg.horizon_end = 1e5;
    cfg.seed = 17;
    const auto r = simulate(one_stream(0.5, 0.5), cfg);
    EXPECT_NEAR(measured_rates(r.events, 1)[0], 1.0, 0.03);
}

TEST(MeasuredRates, UsesBurnIn) {
    EventStream s;
    s.horizon = {0.0, 10.0};
    for (double t : {0.5, 1.5, 2.5, 6.0}) s.events.push_back({t, 0, 1.0});
    EXPECT_DOUBLE_EQ(measured_rates(s, 1, 0.0)[0], 0.4);
    EXPECT_DOUBLE_EQ(measured_rates(s, 1, 0.5)[0], 1.0 / 5.0);
    EXPECT_THROW((void)measured_rates(s, 1, 1.0), InputError);
}
