#include "support/oracles.hpp"

#include "hawkeslob/errors.hpp"
#include "hawkeslob/intensity.hpp"
#include "hawkeslob/params.hpp"
#include "hawkeslob/special.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

using namespace hawkeslob;

namespace {

// One stream, mu = 0.4, self branching 0.5, decay 2, constant impact.
ParameterSet single_stream() {
    auto p = ParameterSet::zeros(1);
    p.mu[0] = 0.4;
    p.nu(0, 0) = 0.5;
    p.kernels[0].decay = 2.0;
    return p;
}

EventStream one_event_at_zero(double horizon_end) {
    EventStream s;
    s.events.push_back({0.0, 0, 1.0});
    s.horizon = {0.0, horizon_end};
    return s;
}

} // namespace

TEST(Special, GammaMatchesStd) {
    for (double x : {0.05, 0.5, 1.0, 1.5, 2.5, 3.7, 7.0, 12.3, 19.9}) {
        EXPECT_NEAR(special::gamma(x), std::tgamma(x), 1e-14 * std::tgamma(x)) << x;
        EXPECT_NEAR(special::log_gamma(x), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x)))) << x;
    }
}

TEST(Special, DigammaMatchesBoost) {
    for (double x : {0.01, 0.3, 1.0, 1.5, 2.0, 3.25, 6.0, 25.0, 1e3}) {
        EXPECT_NEAR(special::digamma(x), oracle::digamma(x), 1e-12 * std::max(1.0, std::abs(oracle::digamma(x))))
            << x;
    }
}

TEST(Impact, ExponentZeroIsConstant) {
    EXPECT_DOUBLE_EQ(impact(PowerImpact{0.0, 2.0}, 7.3), 1.0);
}

TEST(Impact, ExponentOneUnitRateIsIdentity) {
    EXPECT_DOUBLE_EQ(impact(PowerImpact{1.0, 1.0}, 3.0), 3.0);
}

TEST(Impact, SquareRootExample) {
    const double expected = std::sqrt(2.0) / std::tgamma(1.5);
    EXPECT_NEAR(impact(PowerImpact{0.5, 2.0}, 1.0), expected, 1e-14);
    EXPECT_NEAR(impact(PowerImpact{0.5, 2.0}, 1.0), 1.59576, 1e-5);
}

TEST(Impact, RejectsBadVolumes) {
    const PowerImpact g{0.5, 1.0};
    EXPECT_THROW((void)impact(g, 0.0), InputError);
    EXPECT_THROW((void)impact(g, -1.0), InputError);
    EXPECT_THROW((void)impact(g, std::numeric_limits<double>::infinity()), InputError);
    EXPECT_THROW((void)impact(g, std::numeric_limits<double>::quiet_NaN()), InputError);
}

TEST(Impact, NormalizedUnderExponentialMarks) {
    for (double a : {0.0, 0.3, 1.0, 2.2, 3.0}) {
        for (double b : {0.1, 1.0, 4.5}) {
            const PowerImpact g{a, b};
            EXPECT_NEAR(oracle::mean_under_exponential([&](double v) { return impact(g, v); }, b), 1.0, 1e-9);
        }
    }
}

TEST(Impact, ExponentDerivativeMatchesFiniteDifference) {
    for (double a : {0.2, 1.0, 2.5}) {
        for (double v : {0.3, 1.0, 4.0}) {
            const double h = 1e-6;
            const double fd = (impact(PowerImpact{a + h, 1.7}, v) - impact(PowerImpact{a - h, 1.7}, v)) / (2 * h);
            EXPECT_NEAR(impact_exponent_derivative(PowerImpact{a, 1.7}, v), fd, 1e-7 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST(Intensity, EmptyHistoryIsBaseline) {
    const auto p = single_stream();
    EventStream empty;
    empty.horizon = {0.0, 5.0};
    EXPECT_DOUBLE_EQ(intensity(p, empty, std::size_t{0}, 2.0), 0.4);
}

TEST(Intensity, SingleEventExample) {
    const auto p = single_stream();
    const double expected = 0.4 + 0.5 * 2.0 * std::exp(-2.0);
    EXPECT_NEAR(intensity(p, one_event_at_zero(1.0), std::size_t{0}, 1.0), expected, 1e-15);
    EXPECT_NEAR(expected, 0.53534, 1e-5);
}

TEST(Intensity, EventDoesNotExciteItsOwnTime) {
    const auto p = single_stream();
    EXPECT_DOUBLE_EQ(intensity(p, one_event_at_zero(1.0), std::size_t{0}, 0.0), 0.4);
    const HistoryView view(p, one_event_at_zero(1.0));
    EXPECT_DOUBLE_EQ(view.intensity_after(0, 0.0), 0.4 + 0.5 * 2.0);
}

TEST(Intensity, ForbiddenCellContributesNothing) {
    auto p = ParameterSet::zeros_for_assets(1);
    for (double& m : p.mu) m = 0.4;
    for (std::size_t i = 0; i < 4; ++i) p.nu(i, i) = 0.5;
    EventStream s;
    const StreamId ask_up{0, Side::ask, Direction::up};
    const StreamId ask_down{0, Side::ask, Direction::down};
    s.events.push_back({0.5, static_cast<std::uint32_t>(ask_up.index()), 2.0});
    s.horizon = {0.0, 2.0};
    EXPECT_DOUBLE_EQ(intensity(p, s, ask_down, 1.0), 0.4);
    EXPECT_GT(intensity(p, s, ask_up, 1.0), 0.4);
}

TEST(Intensity, NeverBelowBaseline) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = oracle::random_orderbook_params(rng, 2);
        const auto h = oracle::random_history(rng, p.dimension(), 100, 10.0);
        for (double t = 0.0; t <= 10.0; t += 0.37) {
            for (std::size_t i = 0; i < p.dimension(); ++i) EXPECT_GE(intensity(p, h, i, t), p.mu[i]);
        }
    }
}

TEST(Intensity, LeftTruncatedHistoryRejectsEarlyQueries) {
    const auto p = single_stream();
    auto s = one_event_at_zero(2.0);
    s.events[0].time = 1.0;
    s.complete = false;
    EXPECT_THROW((void)intensity(p, s, std::size_t{0}, 0.5), InputError);
    EXPECT_NO_THROW((void)intensity(p, s, std::size_t{0}, 1.5));
}

TEST(Intensity, RejectsUnsortedHistory) {
    const auto p = single_stream();
    EventStream s;
    s.events = {{1.0, 0, 1.0}, {0.5, 0, 1.0}};
    s.horizon = {0.0, 2.0};
    EXPECT_THROW((void)intensity(p, s, std::size_t{0}, 1.5), InputError);
}

TEST(Intensity, DirectViewMatchesBruteForce) {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = oracle::random_orderbook_params(rng, 1 + trial % 2);
        const auto h = oracle::random_history(rng, p.dimension(), 80, 20.0);
        const HistoryView view(p, h);
        for (int q = 0; q < 30; ++q) {
            const double t = 20.0 * rng.uniform();
            for (std::size_t i = 0; i < p.dimension(); ++i) {
                const double ref = oracle::intensity(p, h.events, i, t);
                EXPECT_NEAR(view.intensity(i, t), ref, 1e-12 * ref);
            }
        }
    }
}

TEST(Recursion, FirstEventSetsAccumulator) {
    auto p = single_stream();
    p.impacts[0] = PowerImpact{0.5, 2.0};
    RecursionState state(p, 0.0);
    state.add({0.3, 0, 1.0});
    EXPECT_NEAR(state.accumulators()[0], 2.0 * impact(p.impacts[0], 1.0), 1e-15);
    EXPECT_DOUBLE_EQ(state.last_time(), 0.3);
}

TEST(Recursion, DecaysToBaseline) {
    RecursionState state(single_stream(), 0.0);
    state.add({0.0, 0, 1.0});
    state.advance(1e6);
    EXPECT_DOUBLE_EQ(state.intensity(0), 0.4);
    EXPECT_DOUBLE_EQ(state.intensity_at(0, 1e300), 0.4);
}

TEST(Recursion, RejectsOutOfOrderEvents) {
    RecursionState state(single_stream(), 0.0);
    state.add({1.0, 0, 1.0});
    EXPECT_THROW(state.add({0.5, 0, 1.0}), InputError);
    EXPECT_THROW(state.advance(0.9), InputError);
    EXPECT_THROW(state.add({2.0, 3, 1.0}), InputError);
}

TEST(Recursion, FunctionalFormMatchesMember) {
    const auto p = single_stream();
    RecursionState a(p, 0.0);
    a.add({0.5, 0, 2.0});
    const RecursionState b = intensity_recursive(RecursionState(p, 0.0), {0.5, 0, 2.0});
    EXPECT_EQ(a.accumulators(), b.accumulators());
}

// Randomized property: recursion reproduces the direct sum at every event time.
TEST(Recursion, MatchesDirectSumOnRandomHistories) {
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = oracle::random_orderbook_params(rng, 1 + trial % 2);
        auto h = oracle::random_history(rng, p.dimension(), 50, 10.0);
        // force a few exact ties
        for (std::size_t k = 5; k < h.events.size(); k += 11) h.events[k].time = h.events[k - 1].time;
        sort_events(h);
        RecursionState state(p, 0.0);
        for (std::size_t k = 0; k < h.events.size(); ++k) {
            const auto& e = h.events[k];
            state.advance(e.time);
            if (k == 0 || h.events[k - 1].time < e.time) {
                const std::vector<MarkedEvent> prefix(h.events.begin(), h.events.begin() + static_cast<long>(k));
                for (std::size_t i = 0; i < p.dimension(); ++i) {
                    const double ref = oracle::intensity(p, prefix, i, e.time);
                    EXPECT_NEAR(state.intensity(i), ref, 1e-10 * ref);
                }
            }
            state.add(e);
        }
    }
}

TEST(Compensator, EmptyHistoryIsLinear) {
    const auto p = single_stream();
    EventStream empty;
    empty.horizon = {3.0, 13.0};
    EXPECT_DOUBLE_EQ(compensator(p, empty, std::size_t{0}, 13.0), 4.0);
}

TEST(Compensator, SingleEventExample) {
    const double expected = 0.4 + 0.5 * (1.0 - std::exp(-2.0));
    EXPECT_NEAR(compensator(single_stream(), one_event_at_zero(1.0), std::size_t{0}, 1.0), expected, 1e-15);
    EXPECT_NEAR(expected, 0.83233, 1e-5);
}

TEST(Compensator, RejectsTimesOutsideHorizon) {
    auto h = one_event_at_zero(1.0);
    h.horizon = {0.0, 1.0};
    EXPECT_THROW((void)compensator(single_stream(), h, std::size_t{0}, -0.1), InputError);
    EXPECT_THROW((void)compensator(single_stream(), h, std::size_t{0}, 1.1), InputError);
}

TEST(Compensator, NonDecreasingAndMatchesQuadrature) {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = oracle::random_orderbook_params(rng, 1);
        const auto h = oracle::random_history(rng, p.dimension(), 40, 20.0);
        for (std::size_t i = 0; i < p.dimension(); ++i) {
            double prev = 0.0;
            for (double t = 0.0; t <= 20.0; t += 1.3) {
                const double c = compensator(p, h, i, t);
                EXPECT_GE(c, prev);
                prev = c;
            }
            const double t1 = 4.0, t2 = 17.5;
            const double diff = compensator(p, h, i, t2) - compensator(p, h, i, t1);
            EXPECT_NEAR(diff, oracle::compensator(p, h.events, i, t1, t2), 1e-8);
        }
    }
}

TEST(SpectralRadius, Examples) {
    EXPECT_DOUBLE_EQ(spectral_radius(std::vector<double>(16, 0.0), 4), 0.0);
    const std::vector<double> sym{0.5, 0.2, 0.2, 0.5};
    EXPECT_NEAR(spectral_radius(sym, 2), 0.7, 1e-14);
    std::vector<double> diag(16, 0.0);
    const double d[] = {0.3, 0.9, 0.1, 0.2};
    for (int i = 0; i < 4; ++i) diag[5 * i] = d[i];
    EXPECT_NEAR(spectral_radius(diag, 4), 0.9, 1e-14);
}

TEST(SpectralRadius, RejectsNonFinite) {
    const std::vector<double> m{0.5, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.1};
    EXPECT_THROW((void)spectral_radius(m, 2), InputError);
}

TEST(SpectralRadius, InvariantUnderStreamPermutation) {
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = oracle::random_generic_params(rng, 6);
        std::vector<std::size_t> perm(6);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t k = 5; k > 0; --k) std::swap(perm[k], perm[rng.next_u64() % (k + 1)]);
        std::vector<double> permuted(36);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) permuted[i * 6 + j] = p.nu(perm[i], perm[j]);
        }
        EXPECT_NEAR(spectral_radius(permuted, 6), spectral_radius(p), 1e-12);
    }
}

TEST(Params, ValidateRejectsBadValues) {
    auto p = single_stream();
    EXPECT_NO_THROW(p.validate());
    auto bad = p;
    bad.mu[0] = -1.0;
    EXPECT_THROW(bad.validate(), InputError);
    bad = p;
    bad.kernels[0].decay = 0.0;
    EXPECT_THROW(bad.validate(), InputError);
    bad = p;
    bad.branching[0] = -0.1;
    EXPECT_THROW(bad.validate(), InputError);
    bad = p;
    bad.impacts[0].mark_rate = 0.0;
    EXPECT_THROW(bad.validate(), InputError);
}

TEST(Types, StreamIndexLayout) {
    EXPECT_EQ((StreamId{0, Side::ask, Direction::up}.index()), 0u);
    EXPECT_EQ((StreamId{0, Side::ask, Direction::down}.index()), 1u);
    EXPECT_EQ((StreamId{0, Side::bid, Direction::up}.index()), 2u);
    EXPECT_EQ((StreamId{1, Side::bid, Direction::down}.index()), 7u);
    for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(StreamId::from_index(i).index(), i);
}

TEST(Types, SortBreaksTiesByStream) {
    EventStream s;
    s.events = {{1.0, 3, 1.0}, {1.0, 0, 1.0}, {0.5, 2, 1.0}};
    s.horizon = {0.0, 2.0};
    sort_events(s);
    EXPECT_EQ(s.events[0].stream, 2u);
    EXPECT_EQ(s.events[1].stream, 0u);
    EXPECT_EQ(s.events[2].stream, 3u);
    EXPECT_NO_THROW(validate(s, 4));
    EXPECT_THROW(validate(s, 3), InputError);
}
