#pragma once

#include <optional>
#include <span>

namespace shadowseg {

/// Global linear map from lit background intensity b to shadowed intensity
/// g = gain * b + offset.
struct ShadowParams {
    double gain = 0.5;
    double offset = 0.0;
    friend bool operator==(const ShadowParams&, const ShadowParams&) = default;
};

inline constexpr double kMinShadowGain = 0.1;
inline constexpr double kMaxShadowGain = 1.0;
inline constexpr int kMinShadowPixels = 20;

/// (g, b) observation from a shadow-labelled pixel.
struct IntensityPair {
    double g = 0.0;
    double b = 0.0;
};

struct LineFit {
    double gain = 0.0;
    double offset = 0.0;
};

/// Least-squares fit of g = gain * b + offset. Returns nullopt for fewer than
/// min_pairs points or a vanishing design determinant (|den| < 1e-9, where
/// den = (sum b)^2 - n * sum b^2).
std::optional<LineFit> fit_shadow(std::span<const IntensityPair> pairs, int min_pairs = kMinShadowPixels);

/// Blend toward a fresh fit with effective rate -eta2_star * alpha, where
/// eta2_star in [-1, 0] is minus the shadow fraction of the frame. The result
/// is clamped to gain in [kMinShadowGain, kMaxShadowGain], |offset| <= y_max.
ShadowParams update_shadow(ShadowParams params, LineFit fit, double eta2_star, double alpha,
                           double y_max = 255.0);

/// Clamp to the admissible range.
ShadowParams clamp(ShadowParams params, double y_max = 255.0) noexcept;

} // namespace shadowseg
