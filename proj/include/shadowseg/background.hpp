#pragma once

#include <array>
#include <optional>
#include <span>

#include "shadowseg/grid.hpp"

namespace shadowseg {

struct GaussianComponent {
    double weight = 0.0;
    double mean = 0.0;
    double variance = 1.0;
    friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

inline constexpr int kMinComponents = 3;
inline constexpr int kMaxComponents = 5;

/// Tunables of the per-pixel mixture. Defaults are the run-level defaults.
struct MixtureConfig {
    int components = 3;
    double init_weight = 0.05;     // weight of a freshly replaced component, before renormalisation
    double init_variance = 900.0;  // variance of a fresh / placeholder component
    double variance_floor = 4.0;
};

/// Validates ranges; throws std::invalid_argument.
void validate(const MixtureConfig& cfg);

/// K weighted Gaussians describing the recent history of one pixel.
///
/// Components with zero weight are empty slots: they never match an
/// observation and are the first candidates for replacement.
class PixelMixture {
public:
    PixelMixture() = default;

    /// One live component at (mean, variance) with weight 1; the remaining
    /// K-1 slots are zero-weight placeholders.
    static PixelMixture seeded(int components, double mean, double variance, double placeholder_variance);

    int size() const noexcept { return count_; }
    GaussianComponent& operator[](int i) { return comps_[static_cast<std::size_t>(i)]; }
    const GaussianComponent& operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }
    std::span<const GaussianComponent> components() const noexcept
    {
        return {comps_.data(), static_cast<std::size_t>(count_)};
    }

    double weight_sum() const noexcept;
    void normalize_weights() noexcept;

    friend bool operator==(const PixelMixture&, const PixelMixture&) = default;

private:
    std::array<GaussianComponent, kMaxComponents> comps_{};
    int count_ = 0;
};

/// Per-pixel parameters of the selected background Gaussian.
struct BackgroundModel {
    Grid<double> mean;
    Grid<double> variance;

    int width() const noexcept { return mean.width(); }
    int height() const noexcept { return mean.height(); }
};

using MixtureField = Grid<PixelMixture>;

struct BackgroundState {
    BackgroundModel model;
    MixtureField mixtures;
};

/// Static bootstrap from a recorded run of background-only frames: per-pixel
/// sample mean and unbiased sample variance (floored).
/// Throws std::invalid_argument on fewer than two frames or mismatched sizes.
BackgroundState init_static(std::span<const Frame> frames, const MixtureConfig& cfg = {});

/// Adaptive bootstrap: each mixture seeded from a single frame with the
/// placeholder variance.
BackgroundState init_adaptive(const Frame& first, const MixtureConfig& cfg = {});

/// Index of the first component within three standard deviations of g,
/// checking components in descending weight/sigma order (ties: lower index).
std::optional<int> match_component(const PixelMixture& mixture, double g);

/// One online step of the mixture with learning rate alpha in [0, 1).
/// A matched component takes the exponential-window update; otherwise the
/// lowest-weight component is replaced by (g, init_variance, init_weight).
/// Weights are renormalised to sum to one in both cases.
PixelMixture update_mixture(PixelMixture mixture, double g, double alpha, const MixtureConfig& cfg = {});

/// The component maximising weight/sigma; ties go to the lowest index.
GaussianComponent select_background(const PixelMixture& mixture);

/// select_background applied to every pixel.
BackgroundModel select_background(const MixtureField& mixtures);

} // namespace shadowseg
