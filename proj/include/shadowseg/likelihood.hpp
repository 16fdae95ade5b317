#pragma once

#include <array>
#include <span>
#include <vector>

#include "shadowseg/background.hpp"
#include "shadowseg/edge.hpp"
#include "shadowseg/grid.hpp"
#include "shadowseg/kernels.hpp"
#include "shadowseg/shadow.hpp"

namespace shadowseg {

/// -ln p(g | background model, label).
///   background: N(mean, var)
///   shadow:     N(gain*mean + offset, gain^2 * var)
///   foreground: uniform on [0, y_max]
/// Densities are not truncated to the intensity range.
double intensity_potential(double g, double mean, double var, const ShadowParams& shadow, double y_max,
                           Label label);

/// -ln p(e | edge model, label), with the neighbourhood of the pixel assumed
/// to share its label.
///   background: N(mu_e, Sigma_e)
///   shadow:     N(gain*mu_e, gain^2 * Sigma_e)
///   foreground: product of two triangular densities (1/y - |d|/y^2),
///               each factor floored at kTriangularFloor / y^2
double edge_potential(EdgeVector e, const EdgeStats& stats, const ShadowParams& shadow, double y_max,
                      Label label);

inline constexpr double kTriangularFloor = 0.1;

/// The triangular density of one edge component under the foreground label,
/// without the floor.
double triangular_density(double d, double y_max) noexcept;

/// U1 and U2 for every pixel and candidate label, laid out as planes.
class PotentialTable {
public:
    PotentialTable() = default;
    PotentialTable(int width, int height);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_); }

    std::span<double> intensity(Label s) { return planes_[static_cast<std::size_t>(slot(s))]; }
    std::span<const double> intensity(Label s) const { return planes_[static_cast<std::size_t>(slot(s))]; }
    std::span<double> edge(Label s) { return planes_[static_cast<std::size_t>(3 + slot(s))]; }
    std::span<const double> edge(Label s) const { return planes_[static_cast<std::size_t>(3 + slot(s))]; }

    /// U1 + U2 of label s at pixel i.
    double data_term(std::size_t i, Label s) const noexcept
    {
        const auto k = static_cast<std::size_t>(slot(s));
        return planes_[k][i] + planes_[3 + k][i];
    }

    void set(std::size_t i, Label s, double u1, double u2);

    kernels::PotentialPlanes planes();

    /// Six values per pixel, row-major: U1(bg, shadow, fg) then U2(bg, shadow, fg).
    std::vector<double> interleaved() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::array<std::vector<double>, 6> planes_;
};

/// Detection-time view of the background: per-pixel (or pooled) variances
/// alongside the means, and the edge model derived from them.
struct DetectionModel {
    const BackgroundModel& background;
    const EdgeModel& edges;
};

/// Fills U1/U2 for every pixel using the given kernel ISA.
PotentialTable build_potentials(const Frame& frame, const EdgeField& frame_edges, const DetectionModel& model,
                                const ShadowParams& shadow, double y_max, kernels::Isa isa);
PotentialTable build_potentials(const Frame& frame, const EdgeField& frame_edges, const DetectionModel& model,
                                const ShadowParams& shadow, double y_max);

} // namespace shadowseg
