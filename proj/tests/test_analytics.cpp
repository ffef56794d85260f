#include "hawkeslob/analytics.hpp"
#include "hawkeslob/errors.hpp"
#include "hawkeslob/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace hawkeslob;
using namespace hawkeslob::analytics;

namespace {

std::vector<double> gaussian_walk(Rng& rng, std::size_t n, double sd) {
    std::vector<double> x(n);
    double level = 0.0;
    for (double& v : x) {
        const double u1 = rng.uniform(), u2 = rng.uniform();
        level += sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        v = level;
    }
    return x;
}

// Brute-force previous-tick lookup.
double scan(const StepSeries& s, double t, double fill) {
    double value = fill;
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        if (s.times[k] <= t) value = s.values[k];
    }
    return value;
}

} // namespace

TEST(Grid, CoveringAndValidation) {
    const auto g = RegularGrid::covering(0.0, 1.0, 0.1);
    EXPECT_EQ(g.count, 11u);
    EXPECT_NEAR(g.at(10), 1.0, 1e-12);
    EXPECT_THROW((RegularGrid{0.0, 0.0, 3}.validate()), InputError);
    EXPECT_THROW((RegularGrid{0.0, 1.0, 0}.validate()), InputError);
}

TEST(PreviousTick, ConstantSeries) {
    const StepSeries s{{0.0}, {2.5}};
    for (double v : previous_tick_sample(s, RegularGrid{0.0, 0.5, 10})) EXPECT_EQ(v, 2.5);
}

TEST(PreviousTick, JumpAppearsAtNextGridPoint) {
    const StepSeries s{{0.0, 1.25}, {1.0, 2.0}};
    const auto v = previous_tick_sample(s, RegularGrid{0.0, 0.5, 5});
    EXPECT_EQ(v, (std::vector<double>{1.0, 1.0, 1.0, 2.0, 2.0}));
    const StepSeries on_grid{{0.0, 1.0}, {1.0, 2.0}};
    EXPECT_EQ(previous_tick_sample(on_grid, RegularGrid{0.0, 0.5, 4})[2], 2.0);
}

TEST(PreviousTick, BeforeFirstPolicy) {
    const StepSeries s{{1.0}, {3.0}};
    EXPECT_THROW((void)previous_tick_sample(s, RegularGrid{0.0, 0.5, 4}), InputError);
    const auto v = previous_tick_sample(s, RegularGrid{0.0, 0.5, 4}, BeforeFirst::fill, 9.0);
    EXPECT_EQ(v, (std::vector<double>{9.0, 9.0, 3.0, 3.0}));
}

TEST(PreviousTick, MatchesBruteForceOnRandomSeries) {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        StepSeries s;
        double t = 0.0;
        for (int k = 0; k < 200; ++k) {
            t += rng.exponential(2.0) * (k % 5 == 0 ? 0.0 : 1.0); // some repeated times
            s.times.push_back(t);
            s.values.push_back(rng.uniform());
        }
        const RegularGrid grid{0.0, 0.37, static_cast<std::size_t>(t / 0.37) + 3};
        const auto fast = previous_tick_sample(s, grid, BeforeFirst::fill, -1.0);
        for (std::size_t k = 0; k < grid.count; ++k) EXPECT_EQ(fast[k], scan(s, grid.at(k), -1.0));
    }
}

TEST(Signature, ConstantPriceIsZero) {
    const std::vector<double> x(1000, std::log(1.3));
    const std::vector<double> taus{0.1, 0.5, 1.0};
    for (const auto& p : signature_plot(x, 0.1, taus).points) EXPECT_EQ(*p.value, 0.0);
}

TEST(Signature, AlternatingToy) {
    std::vector<double> x(101);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = k % 2 == 0 ? 0.0 : 1.0;
    const std::vector<double> taus{1.0, 2.0};
    const auto c = signature_plot(x, 1.0, taus);
    ASSERT_EQ(c.points.size(), 2u);
    EXPECT_DOUBLE_EQ(*c.points[0].value, 1.0);
    EXPECT_DOUBLE_EQ(*c.points[1].value, 0.0);
}

TEST(Signature, IidIncrementsAreFlat) {
    Rng rng(3);
    const auto x = gaussian_walk(rng, 400'000, 0.01);
    const auto taus = default_taus(0.1);
    const auto c = signature_plot(x, 0.1, taus);
    const double level = 0.01 * 0.01 / 0.1;
    for (const auto& p : c.points) {
        if (p.tau <= 10.0) {
            EXPECT_NEAR(*p.value, level, 0.1 * level) << p.tau;
        }
    }
    EXPECT_LT(std::abs(fit_power_law(c).exponent), 0.05);
}

TEST(Signature, LagRules) {
    const std::vector<double> x(50, 0.0);
    EXPECT_THROW((void)signature_plot(x, 0.1, std::vector<double>{0.15}), InputError);
    EXPECT_THROW((void)signature_plot(x, 0.1, std::vector<double>{-0.1}), InputError);
    const auto c = signature_plot(x, 0.1, std::vector<double>{0.1, 100.0});
    EXPECT_EQ(c.points.size(), 1u);
    EXPECT_EQ(c.warnings.size(), 1u);
}

TEST(Signature, InvariantUnderConstantShift) {
    Rng rng(4);
    const auto x = gaussian_walk(rng, 5000, 1e-4);
    auto y = x;
    for (double& v : y) v += 0.25;
    const std::vector<double> taus{0.1, 1.0, 5.0};
    const auto a = signature_plot(x, 0.1, taus), b = signature_plot(y, 0.1, taus);
    for (std::size_t k = 0; k < taus.size(); ++k) EXPECT_NEAR(*a.points[k].value, *b.points[k].value, 1e-6 * *a.points[k].value);
}

TEST(Epps, IdenticalAndNegatedSeries) {
    Rng rng(5);
    const auto x = gaussian_walk(rng, 10'000, 1e-4);
    auto neg = x;
    for (double& v : neg) v = -v;
    const auto taus = default_taus(0.1);
    for (const auto& p : epps(x, x, 0.1, taus).points) EXPECT_NEAR(*p.value, 1.0, 1e-12);
    for (const auto& p : epps(x, neg, 0.1, taus).points) EXPECT_NEAR(*p.value, -1.0, 1e-12);
}

TEST(Epps, ZeroVarianceIsMissing) {
    Rng rng(6);
    const auto x = gaussian_walk(rng, 100, 1.0);
    const std::vector<double> flat(100, 0.0);
    const auto c = epps(x, flat, 1.0, std::vector<double>{1.0, 2.0});
    ASSERT_EQ(c.points.size(), 2u);
    EXPECT_FALSE(c.points[0].value.has_value());
    EXPECT_EQ(c.warnings.size(), 2u);
    EXPECT_THROW((void)epps(x, std::vector<double>(99, 0.0), 1.0, std::vector<double>{1.0}), InputError);
}

TEST(Curves, AverageIgnoresMissing) {
    Curve a{{{1.0, 0.2}, {2.0, std::nullopt}}, {}};
    Curve b{{{1.0, 0.4}, {2.0, 0.6}}, {}};
    const std::vector<Curve> cs{a, b};
    const auto avg = average_curves(cs);
    EXPECT_NEAR(*avg.points[0].value, 0.3, 1e-15);
    EXPECT_NEAR(*avg.points[1].value, 0.6, 1e-15);
}

TEST(Curves, PowerLawRecoversExponent) {
    Curve c;
    for (double tau : {0.1, 1.0, 10.0, 100.0}) c.points.push_back({tau, 3.0 * std::pow(tau, -0.4)});
    const auto fit = fit_power_law(c);
    EXPECT_NEAR(fit.exponent, -0.4, 1e-12);
    EXPECT_NEAR(fit.prefactor, 3.0, 1e-12);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_EQ(fit.points, 4u);
    Curve tiny{{{1.0, 1.0}}, {}};
    EXPECT_THROW((void)fit_power_law(tiny), InputError);
}

TEST(DefaultTaus, OneTwoFiveUpToHundred) {
    const auto t = default_taus(0.1);
    const std::vector<double> expected{0.1, 0.2, 0.5, 1, 2, 5, 10, 20, 50, 100};
    ASSERT_EQ(t.size(), expected.size());
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(t[k], expected[k], 1e-12);
}

TEST(Durations, ConsecutiveDifferences) {
    EventStream s;
    s.horizon = {0.0, 10.0};
    s.events = {{0.0, 0, 1.0}, {1.0, 1, 2.0}, {3.0, 0, 3.0}, {6.0, 0, 4.0}};
    EXPECT_EQ(durations(s), (std::vector<double>{1.0, 2.0, 3.0}));
    EXPECT_EQ(durations(s, 0), (std::vector<double>{3.0, 3.0}));
    EXPECT_TRUE(durations(s, 1).empty());
    const auto d = durations(s);
    EXPECT_DOUBLE_EQ(std::accumulate(d.begin(), d.end(), 0.0), 6.0);
}

TEST(Durations, VolumeTableOneRowPerEventAfterFirst) {
    EventStream s;
    s.horizon = {0.0, 10.0};
    s.events = {{0.0, 0, 1.0}, {1.0, 1, 2.0}, {3.0, 0, 3.0}};
    const auto t = duration_volume_table(s);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[1].duration, 2.0);
    EXPECT_EQ(t[1].volume, 3.0);
}
