#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "shadowseg/edge.hpp"

using namespace shadowseg;

namespace {

Frame ramp(int w, int h)
{
    Frame f(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            f.at(x, y) = static_cast<std::uint8_t>(x);
    return f;
}

BackgroundModel uniform_model(int w, int h, double mean, double var)
{
    return {Grid<double>(w, h, mean), Grid<double>(w, h, var)};
}

} // namespace

TEST(FrameEdges, ConstantFrameHasNoEdges)
{
    const auto e = frame_edges(Frame(5, 4, 90));
    for (std::size_t i = 0; i < e.h.size(); ++i) {
        EXPECT_EQ(e.h[i], 0);
        EXPECT_EQ(e.v[i], 0);
    }
}

TEST(FrameEdges, RampInteriorAndClampedBorder)
{
    const auto e = frame_edges(ramp(6, 4));
    EXPECT_EQ(e.at(2, 1), (EdgeVector{2, 0}));
    EXPECT_EQ(e.at(4, 2), (EdgeVector{2, 0}));
    EXPECT_EQ(e.at(0, 1).h, 1);
    EXPECT_EQ(e.at(5, 1).h, 1);
    EXPECT_EQ(e.at(3, 0).v, 0);
}

TEST(FrameEdges, VerticalDifferencesUseRows)
{
    Frame f(4, 5);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 4; ++x)
            f.at(x, y) = static_cast<std::uint8_t>(10 * y);
    const auto e = frame_edges(f);
    EXPECT_EQ(e.at(1, 2), (EdgeVector{0, 20}));
    EXPECT_EQ(e.at(1, 0).v, 10);
    EXPECT_EQ(e.at(1, 4).v, 10);
}

TEST(FrameEdges, MatchesDirectDefinitionOnRandomFrame)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pix(0, 255);
    Frame f(13, 7);
    for (auto& v : f.values())
        v = static_cast<std::uint8_t>(pix(rng));
    const auto e = frame_edges(f);
    const auto px = [&](int x, int y) {
        return static_cast<int>(f.at(std::clamp(x, 0, 12), std::clamp(y, 0, 6)));
    };
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 13; ++x)
            EXPECT_EQ(e.at(x, y), (EdgeVector{px(x + 1, y) - px(x - 1, y), px(x, y + 1) - px(x, y - 1)}));
}

TEST(FrameEdges, RejectsTinyFrames)
{
    EXPECT_THROW(frame_edges(Frame(2, 5)), std::invalid_argument);
    EXPECT_THROW(frame_edges(Frame(5, 2)), std::invalid_argument);
}

TEST(BackgroundEdgeModel, ConstantMeanNineVariance)
{
    const auto m = background_edge_model(uniform_model(5, 5, 100.0, 9.0));
    const auto s = m.at(2, 2);
    EXPECT_DOUBLE_EQ(s.mean_h, 0.0);
    EXPECT_DOUBLE_EQ(s.mean_v, 0.0);
    EXPECT_DOUBLE_EQ(s.var_h, 18.0);
    EXPECT_DOUBLE_EQ(s.var_v, 18.0);
}

TEST(BackgroundEdgeModel, RampMeans)
{
    auto bg = uniform_model(6, 4, 0.0, 4.0);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 6; ++x)
            bg.mean.at(x, y) = x;
    const auto m = background_edge_model(bg);
    EXPECT_DOUBLE_EQ(m.at(2, 1).mean_h, 2.0);
    EXPECT_DOUBLE_EQ(m.at(2, 1).mean_v, 0.0);
    EXPECT_DOUBLE_EQ(m.at(0, 1).mean_h, 1.0);
}

TEST(BackgroundEdgeModel, VarianceSumsNeighbours)
{
    auto bg = uniform_model(3, 3, 50.0, 4.0);
    bg.variance.at(0, 1) = 10.0;
    bg.variance.at(2, 1) = 30.0;
    bg.variance.at(1, 0) = 5.0;
    bg.variance.at(1, 2) = 7.0;
    const auto s = background_edge_model(bg).at(1, 1);
    EXPECT_DOUBLE_EQ(s.var_h, 40.0);
    EXPECT_DOUBLE_EQ(s.var_v, 12.0);
    // At the left border the clamped difference spans only (1,1)-(0,1).
    EXPECT_DOUBLE_EQ(background_edge_model(bg).at(0, 1).var_h, 4.0 + 10.0);
}

TEST(BackgroundEdgeModel, PooledVarianceDoublesEverywhere)
{
    const auto m = background_edge_model(uniform_model(7, 5, 10.0, 12.5));
    for (std::size_t i = 0; i < m.var_h.size(); ++i) {
        EXPECT_DOUBLE_EQ(m.var_h[i], 25.0);
        EXPECT_DOUBLE_EQ(m.var_v[i], 25.0);
    }
}

// Sample many background frames from independent per-pixel Gaussians and
// compare the empirical moments of the edge vector with the model.
TEST(BackgroundEdgeModel, MonteCarloMoments)
{
    const int w = 5;
    const int h = 4;
    auto bg = uniform_model(w, h, 0.0, 0.0);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mu(60.0, 190.0);
    std::uniform_real_distribution<double> var(4.0, 100.0);
    for (std::size_t i = 0; i < bg.mean.size(); ++i) {
        bg.mean[i] = mu(rng);
        bg.variance[i] = var(rng);
    }
    const auto model = background_edge_model(bg);

    const int n = 100000;
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> sum_h(bg.mean.size(), 0.0), sq_h(bg.mean.size(), 0.0);
    std::vector<double> sum_v(bg.mean.size(), 0.0), sq_v(bg.mean.size(), 0.0);
    Grid<double> sample(w, h);
    for (int k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < sample.size(); ++i)
            sample[i] = bg.mean[i] + std::sqrt(bg.variance[i]) * z(rng);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const auto at = [&](int xx, int yy) { return sample.at(std::clamp(xx, 0, w - 1), std::clamp(yy, 0, h - 1)); };
                const double eh = at(x + 1, y) - at(x - 1, y);
                const double ev = at(x, y + 1) - at(x, y - 1);
                const auto i = sample.index(x, y);
                sum_h[i] += eh;
                sq_h[i] += eh * eh;
                sum_v[i] += ev;
                sq_v[i] += ev * ev;
            }
        }
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double mh = sum_h[i] / n;
        const double mv = sum_v[i] / n;
        const double vh = sq_h[i] / n - mh * mh;
        const double vv = sq_v[i] / n - mv * mv;
        EXPECT_NEAR(mh, model.mean_h[i], 0.2) << i;
        EXPECT_NEAR(mv, model.mean_v[i], 0.2) << i;
        EXPECT_NEAR(vh / model.var_h[i], 1.0, 0.05) << i;
        EXPECT_NEAR(vv / model.var_v[i], 1.0, 0.05) << i;
    }
}
