#pragma once

#include <cstdint>

#include "shadowseg/background.hpp"
#include "shadowseg/grid.hpp"

namespace shadowseg {

/// Horizontal and vertical central difference at one pixel.
struct EdgeVector {
    int h = 0;
    int v = 0;
    friend bool operator==(const EdgeVector&, const EdgeVector&) = default;
};

struct EdgeField {
    Grid<std::int32_t> h;
    Grid<std::int32_t> v;

    int width() const noexcept { return h.width(); }
    int height() const noexcept { return h.height(); }
    EdgeVector at(int x, int y) const { return {h.at(x, y), v.at(x, y)}; }
};

/// Distribution of the background edge vector at one pixel. The covariance is
/// diagonal: the horizontal and vertical differences share no pixel.
struct EdgeStats {
    double mean_h = 0.0;
    double mean_v = 0.0;
    double var_h = 1.0;
    double var_v = 1.0;
};

struct EdgeModel {
    Grid<double> mean_h;
    Grid<double> mean_v;
    Grid<double> var_h;
    Grid<double> var_v;

    int width() const noexcept { return mean_h.width(); }
    int height() const noexcept { return mean_h.height(); }
    EdgeStats at(int x, int y) const
    {
        return {mean_h.at(x, y), mean_v.at(x, y), var_h.at(x, y), var_v.at(x, y)};
    }
};

/// Edge vectors of a frame (at least 3×3). Borders use replicated pixels, so
/// the left column sees g(1, y) - g(0, y).
EdgeField frame_edges(const Frame& frame);

/// Mean and diagonal covariance of the background edge vector implied by
/// independent per-pixel Gaussian noise. Borders clamp like frame_edges.
EdgeModel background_edge_model(const BackgroundModel& bg);

} // namespace shadowseg
