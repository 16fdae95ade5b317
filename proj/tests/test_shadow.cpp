#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "shadowseg/shadow.hpp"

using namespace shadowseg;

namespace {

// Independent oracle: solve the 2x2 normal equations with Cramer's rule in
// extended precision.
LineFit normal_equations(const std::vector<IntensityPair>& pts)
{
    long double sb = 0, sg = 0, sbb = 0, sbg = 0;
    for (const auto& p : pts) {
        sb += p.b;
        sg += p.g;
        sbb += static_cast<long double>(p.b) * p.b;
        sbg += static_cast<long double>(p.b) * p.g;
    }
    const long double n = static_cast<long double>(pts.size());
    const long double det = n * sbb - sb * sb;
    return {static_cast<double>((n * sbg - sb * sg) / det), static_cast<double>((sbb * sg - sb * sbg) / det)};
}

} // namespace

TEST(FitShadow, ExactLine)
{
    std::vector<IntensityPair> pts;
    for (int b = 40; b < 200; b += 5)
        pts.push_back({0.5 * b + 10.0, static_cast<double>(b)});
    const auto fit = fit_shadow(pts);
    ASSERT_TRUE(fit.has_value());
    EXPECT_NEAR(fit->gain, 0.5, 1e-12);
    EXPECT_NEAR(fit->offset, 10.0, 1e-9);
}

TEST(FitShadow, TwoDistinctPointsWhenAllowed)
{
    const std::vector<IntensityPair> pts{{13.0, 10.0}, {23.0, 30.0}};
    const auto fit = fit_shadow(pts, 2);
    ASSERT_TRUE(fit.has_value());
    EXPECT_NEAR(fit->gain, 0.5, 1e-12);
    EXPECT_NEAR(fit->offset, 8.0, 1e-12);
}

TEST(FitShadow, DegenerateDesign)
{
    std::vector<IntensityPair> pts(50, {60.0, 120.0});
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i].g = 50.0 + static_cast<double>(i);
    EXPECT_FALSE(fit_shadow(pts).has_value());
}

TEST(FitShadow, TooFewPairs)
{
    std::vector<IntensityPair> pts;
    for (int i = 0; i < 19; ++i)
        pts.push_back({0.6 * i, static_cast<double>(i)});
    EXPECT_FALSE(fit_shadow(pts).has_value());
    pts.push_back({0.6 * 19, 19.0});
    EXPECT_TRUE(fit_shadow(pts).has_value());
}

TEST(FitShadow, NoisyPlantedLineWithinTolerance)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> b(40.0, 220.0);
    std::normal_distribution<double> noise(0.0, 2.0);
    std::vector<IntensityPair> pts;
    for (int i = 0; i < 500; ++i) {
        const double bb = b(rng);
        pts.push_back({0.6 * bb + 5.0 + noise(rng), bb});
    }
    const auto fit = fit_shadow(pts);
    ASSERT_TRUE(fit.has_value());
    EXPECT_NEAR(fit->gain, 0.6, 0.05);
    EXPECT_NEAR(fit->offset, 5.0, 3.0);
    const auto oracle = normal_equations(pts);
    EXPECT_NEAR(fit->gain, oracle.gain, 1e-9);
    EXPECT_NEAR(fit->offset, oracle.offset, 1e-9);
}

TEST(FitShadow, AgreesWithNormalEquationsOnRandomSets)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> count(20, 400);
    std::uniform_real_distribution<double> val(0.0, 255.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<IntensityPair> pts(static_cast<std::size_t>(count(rng)));
        for (auto& p : pts)
            p = {val(rng), val(rng)};
        const auto fit = fit_shadow(pts);
        ASSERT_TRUE(fit.has_value());
        const auto oracle = normal_equations(pts);
        EXPECT_NEAR(fit->gain, oracle.gain, 1e-9);
        EXPECT_NEAR(fit->offset, oracle.offset, 1e-9);
    }
}

TEST(UpdateShadow, HandExample)
{
    const auto p = update_shadow({0.5, 0.0}, {0.6, 10.0}, -0.1, 0.1);
    EXPECT_NEAR(p.gain, 0.99 * 0.5 + 0.01 * 0.6, 1e-15);
    EXPECT_NEAR(p.gain, 0.501, 1e-12);
    EXPECT_NEAR(p.offset, 0.1, 1e-12);
}

TEST(UpdateShadow, NoShadowPixelsLeavesParams)
{
    const ShadowParams before{0.42, -3.0};
    EXPECT_EQ(update_shadow(before, {0.9, 40.0}, 0.0, 0.3), before);
}

TEST(UpdateShadow, FullReplacementLimit)
{
    const auto p = update_shadow({0.5, 0.0}, {0.7, 12.0}, -1.0, 1.0);
    EXPECT_DOUBLE_EQ(p.gain, 0.7);
    EXPECT_DOUBLE_EQ(p.offset, 12.0);
}

TEST(UpdateShadow, ClampsToAdmissibleRange)
{
    auto p = update_shadow({0.5, 0.0}, {1.8, 400.0}, -1.0, 1.0);
    EXPECT_DOUBLE_EQ(p.gain, kMaxShadowGain);
    EXPECT_DOUBLE_EQ(p.offset, 255.0);
    p = update_shadow({0.5, 0.0}, {-0.4, -400.0}, -1.0, 1.0, 100.0);
    EXPECT_DOUBLE_EQ(p.gain, kMinShadowGain);
    EXPECT_DOUBLE_EQ(p.offset, -100.0);
}

TEST(UpdateShadow, ConvexCombinationBeforeClamp)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const ShadowParams p{0.1 + 0.9 * u(rng), 100.0 * (u(rng) - 0.5)};
        const LineFit f{0.1 + 0.9 * u(rng), 100.0 * (u(rng) - 0.5)};
        const auto q = update_shadow(p, f, -u(rng), u(rng));
        EXPECT_GE(q.gain, std::min(p.gain, f.gain) - 1e-15);
        EXPECT_LE(q.gain, std::max(p.gain, f.gain) + 1e-15);
        EXPECT_GE(q.offset, std::min(p.offset, f.offset) - 1e-12);
        EXPECT_LE(q.offset, std::max(p.offset, f.offset) + 1e-12);
    }
}

TEST(UpdateShadow, RejectsOutOfRangeRates)
{
    EXPECT_THROW(update_shadow({}, {}, 0.1, 0.5), std::invalid_argument);
    EXPECT_THROW(update_shadow({}, {}, -1.1, 0.5), std::invalid_argument);
    EXPECT_THROW(update_shadow({}, {}, -0.5, 1.5), std::invalid_argument);
}

TEST(ShadowParams, InitialState)
{
    const ShadowParams p;
    EXPECT_EQ(p.gain, 0.5);
    EXPECT_EQ(p.offset, 0.0);
}
