#include "shadowseg/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shadowseg {

std::optional<LineFit> fit_shadow(std::span<const IntensityPair> pairs, int min_pairs)
{
    if (pairs.empty() || pairs.size() < static_cast<std::size_t>(std::max(min_pairs, 2)))
        return std::nullopt;

    // Closed-form slope/intercept evaluated on centred sums: numerator and
    // denominator of the raw-sum expression are each -n times these.
    const double n = static_cast<double>(pairs.size());
    double sum_g = 0.0;
    double sum_b = 0.0;
    for (const auto& p : pairs) {
        sum_g += p.g;
        sum_b += p.b;
    }
    const double mean_g = sum_g / n;
    const double mean_b = sum_b / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& p : pairs) {
        const double db = p.b - mean_b;
        sxy += db * (p.g - mean_g);
        sxx += db * db;
    }
    if (n * sxx < 1e-9)
        return std::nullopt;
    const double gain = sxy / sxx;
    return LineFit{gain, (sum_g - gain * sum_b) / n};
}

ShadowParams clamp(ShadowParams params, double y_max) noexcept
{
    params.gain = std::clamp(params.gain, kMinShadowGain, kMaxShadowGain);
    params.offset = std::clamp(params.offset, -y_max, y_max);
    return params;
}

ShadowParams update_shadow(ShadowParams params, LineFit fit, double eta2_star, double alpha, double y_max)
{
    if (eta2_star < -1.0 || eta2_star > 0.0)
        throw std::invalid_argument("update_shadow: eta2_star must lie in [-1, 0]");
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("update_shadow: alpha must lie in [0, 1]");
    const double rate = eta2_star * alpha; // in [-1, 0]
    ShadowParams next;
    next.gain = (1.0 + rate) * params.gain - rate * fit.gain;
    next.offset = (1.0 + rate) * params.offset - rate * fit.offset;
    return clamp(next, y_max);
}

} // namespace shadowseg
