#include "hawkeslob/errors.hpp"
#include "hawkeslob/gof.hpp"
#include "hawkeslob/intensity.hpp"
#include "hawkeslob/orderbook.hpp"
#include "hawkeslob/simulator.hpp"
#include "hawkeslob/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace hawkeslob;

namespace {

ParameterSet book() {
    orderbook::SymmetricSpec spec;
    spec.assets = 1;
    spec.mu = 0.3;
    spec.self = 0.5;
    spec.side_coupling = 0.2;
    spec.decay = 2.0;
    spec.impact_exponent = 0.5;
    return orderbook::symmetric_params(spec);
}

EventStream simulated(const ParameterSet& p, double T, std::uint64_t seed) {
    SimConfig cfg;
    cfg.horizon_end = T;
    cfg.seed = seed;
    return simulate(p, cfg).events;
}

} // namespace

TEST(KsExponential, PerfectQuantilesFit) {
    std::vector<double> q(1000);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = -std::log(1.0 - (k + 0.5) / 1000.0);
    EXPECT_LT(ks_exponential(q).distance, 0.001);
}

TEST(KsExponential, ConstantSample) {
    const std::vector<double> ones(200, 1.0);
    const auto r = ks_exponential(ones);
    EXPECT_NEAR(r.distance, std::max(1.0 - std::exp(-1.0), std::exp(-1.0)), 1e-12);
    EXPECT_NEAR(r.distance, 0.632, 1e-3);
    EXPECT_LT(r.p_value, 1e-10);
    EXPECT_EQ(r.n, 200u);
}

TEST(KsExponential, ScalingIncreasesDistance) {
    Rng rng(3);
    std::vector<double> x(500);
    for (double& v : x) v = rng.exponential(1.0);
    auto scaled = x;
    for (double& v : scaled) v *= 5.0;
    EXPECT_GT(ks_exponential(scaled).distance, ks_exponential(x).distance);
}

TEST(KsExponential, RejectsBadSamples) {
    EXPECT_THROW((void)ks_exponential(std::vector<double>{}), InputError);
    EXPECT_THROW((void)ks_exponential(std::vector<double>{1.0, -0.1}), InputError);
}

TEST(Stats, KolmogorovPValueKnownValues) {
    // P(K > 1.3581) ~ 0.05 in the large-n limit
    EXPECT_NEAR(stats::kolmogorov_p_value(1.3581 / std::sqrt(1e8), 100'000'000), 0.05, 1e-3);
    EXPECT_NEAR(stats::kolmogorov_p_value(0.0, 10), 1.0, 1e-12);
}

TEST(Residuals, PoissonResidualsAreScaledDurations) {
    auto p = ParameterSet::zeros(1);
    p.mu[0] = 1.0;
    const auto data = simulated(p, 20'000.0, 9);
    const auto r = rescaled_residuals(p, data, std::size_t{0});
    ASSERT_EQ(r.size() + 1, data.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        EXPECT_NEAR(r[k], data.events[k + 1].time - data.events[k].time, 1e-9);
    }
    const double mean = stats::mean(r);
    EXPECT_NEAR(mean, 1.0, 3.0 / std::sqrt(static_cast<double>(r.size())));
}

TEST(Residuals, TelescopeToCompensatorDifference) {
    const auto p = book();
    const auto data = simulated(p, 300.0, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto r = rescaled_residuals(p, data, i);
        const auto own = events_of(data, i);
        ASSERT_GE(own.size(), 2u);
        const double sum = std::accumulate(r.begin(), r.end(), 0.0);
        const double expected = compensator(p, data, i, own.back().time) - compensator(p, data, i, own.front().time);
        EXPECT_NEAR(sum, expected, 1e-9 * expected);
    }
}

TEST(Residuals, FewerThanTwoEventsGiveEmpty) {
    auto p = ParameterSet::zeros(2);
    p.mu = {1.0, 1.0};
    EventStream s;
    s.horizon = {0.0, 5.0};
    s.events = {{1.0, 0, 1.0}, {2.0, 0, 1.0}, {3.0, 1, 1.0}};
    EXPECT_TRUE(rescaled_residuals(p, s, std::size_t{1}).empty());
    const auto report = goodness_of_fit(p, s);
    EXPECT_FALSE(report.streams[1].tested);
}

TEST(Residuals, InvariantUnderClockRescaling) {
    const auto p = book();
    const auto data = simulated(p, 300.0, 5);
    const double c = 1000.0; // seconds to milliseconds
    auto q = p;
    for (double& m : q.mu) m /= c;
    for (auto& k : q.kernels) k.decay /= c;
    auto scaled = data;
    for (auto& e : scaled.events) e.time *= c;
    scaled.horizon = {data.horizon.start * c, data.horizon.end * c};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto a = rescaled_residuals(p, data, i);
        const auto b = rescaled_residuals(q, scaled, i);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-9 * std::max(1.0, a[k]));
    }
}

TEST(Residuals, StreamIdOverloadAgrees) {
    const auto p = book();
    const auto data = simulated(p, 200.0, 6);
    const StreamId bid_down{0, Side::bid, Direction::down};
    EXPECT_EQ(rescaled_residuals(p, data, bid_down), rescaled_residuals(p, data, bid_down.index()));
    EXPECT_EQ(all_rescaled_residuals(p, data)[3], rescaled_residuals(p, data, std::size_t{3}));
}

TEST(Gof, TrueParamsPassDoubledBaselineRejects) {
    const auto p = book();
    auto doubled = p;
    for (double& m : doubled.mu) m *= 2.0;
    int pass = 0, reject = 0;
    double doubled_mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto data = simulated(p, 1000.0, seed);
        pass += goodness_of_fit(p, data).pooled_rejected ? 0 : 1;
        const auto bad = goodness_of_fit(doubled, data);
        reject += bad.pooled_rejected ? 1 : 0;
        doubled_mean += bad.streams[0].residual_mean / 20.0;
    }
    EXPECT_GE(pass, 18);
    EXPECT_EQ(reject, 20);
    EXPECT_GT(doubled_mean, 1.3);
}

TEST(Gof, ReportStructure) {
    const auto p = book();
    const auto report = goodness_of_fit(p, simulated(p, 500.0, 2), 0.02);
    ASSERT_EQ(report.streams.size(), 4u);
    EXPECT_DOUBLE_EQ(report.level, 0.02);
    EXPECT_DOUBLE_EQ(report.bonferroni_level, 0.005);
    for (const auto& s : report.streams) {
        EXPECT_TRUE(s.tested);
        EXPECT_GT(s.marks.p_value, 0.0);
        EXPECT_EQ(s.ks.n + 1, s.events);
    }
}

TEST(TimeChange, PoissonRateOneIsIdentity) {
    auto p = ParameterSet::zeros(1);
    p.mu[0] = 1.0;
    const auto data = simulated(p, 100.0, 3);
    const auto mapped = time_change(p, data);
    ASSERT_EQ(mapped.size(), data.size());
    for (std::size_t k = 0; k < data.size(); ++k) {
        EXPECT_NEAR(mapped.events[k].time, data.events[k].time, 1e-12 * std::max(1.0, data.events[k].time));
        EXPECT_EQ(mapped.events[k].volume, data.events[k].volume);
    }
}

TEST(TimeChange, MarksPassThroughPerStream) {
    const auto p = book();
    const auto data = simulated(p, 300.0, 8);
    const auto mapped = time_change(p, data);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto a = events_of(data, i), b = events_of(mapped, i);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            EXPECT_EQ(a[k].volume, b[k].volume);
            EXPECT_NEAR(b[k].time, compensator(p, data, i, a[k].time), 1e-9 * std::max(1.0, b[k].time));
        }
    }
    EXPECT_NO_THROW(validate(mapped, 4));
}

// The transformed process is unit-rate compound Poisson: unit-exponential gaps and Exp(beta) marks.
TEST(TimeChange, SimulatedDataPassesBothTests) {
    const auto p = book();
    int pass = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto mapped = time_change(p, simulated(p, 1000.0, 100 + seed));
        bool ok = true;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto own = events_of(mapped, i);
            std::vector<double> gaps, marks;
            for (std::size_t k = 1; k < own.size(); ++k) gaps.push_back(own[k].time - own[k - 1].time);
            for (const auto& e : own) marks.push_back(p.impacts[i].mark_rate * e.volume);
            ok = ok && ks_exponential(gaps).p_value > 0.01 / 4 && ks_exponential(marks).p_value > 0.01 / 4;
        }
        pass += ok ? 1 : 0;
    }
    EXPECT_GE(pass, 18);
}
