#include "shadowseg/background.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace shadowseg {

void validate(const MixtureConfig& cfg)
{
    if (cfg.components < kMinComponents || cfg.components > kMaxComponents)
        throw std::invalid_argument("mixture component count must be in [3, 5], got " +
                                    std::to_string(cfg.components));
    if (!(cfg.init_weight > 0.0 && cfg.init_weight < 1.0))
        throw std::invalid_argument("mixture init_weight must be in (0, 1)");
    if (!(cfg.init_variance > 0.0))
        throw std::invalid_argument("mixture init_variance must be positive");
    if (!(cfg.variance_floor > 0.0))
        throw std::invalid_argument("mixture variance_floor must be positive");
}

PixelMixture PixelMixture::seeded(int components, double mean, double variance, double placeholder_variance)
{
    PixelMixture m;
    m.count_ = components;
    m.comps_[0] = {1.0, mean, variance};
    for (int i = 1; i < components; ++i)
        m.comps_[static_cast<std::size_t>(i)] = {0.0, 0.0, placeholder_variance};
    return m;
}

double PixelMixture::weight_sum() const noexcept
{
    double s = 0.0;
    for (int i = 0; i < count_; ++i)
        s += comps_[static_cast<std::size_t>(i)].weight;
    return s;
}

void PixelMixture::normalize_weights() noexcept
{
    const double s = weight_sum();
    if (s <= 0.0)
        return;
    for (int i = 0; i < count_; ++i)
        comps_[static_cast<std::size_t>(i)].weight /= s;
}

BackgroundState init_static(std::span<const Frame> frames, const MixtureConfig& cfg)
{
    validate(cfg);
    if (frames.size() < 2)
        throw std::invalid_argument("static bootstrap needs at least two frames");
    const int w = frames.front().width();
    const int h = frames.front().height();
    for (const auto& f : frames)
        if (!f.same_shape(w, h))
            throw std::invalid_argument("static bootstrap frames differ in size");

    BackgroundState out{{Grid<double>(w, h), Grid<double>(w, h)}, MixtureField(w, h)};
    const double n = static_cast<double>(frames.size());
    for (std::size_t i = 0; i < out.mixtures.size(); ++i) {
        double sum = 0.0;
        for (const auto& f : frames)
            sum += f[i];
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& f : frames) {
            const double d = f[i] - mean;
            ss += d * d;
        }
        const double var = std::max(ss / (n - 1.0), cfg.variance_floor);
        out.model.mean[i] = mean;
        out.model.variance[i] = var;
        out.mixtures[i] = PixelMixture::seeded(cfg.components, mean, var, cfg.init_variance);
    }
    return out;
}

BackgroundState init_adaptive(const Frame& first, const MixtureConfig& cfg)
{
    validate(cfg);
    const int w = first.width();
    const int h = first.height();
    BackgroundState out{{Grid<double>(w, h), Grid<double>(w, h)}, MixtureField(w, h)};
    for (std::size_t i = 0; i < first.size(); ++i) {
        const double g = first[i];
        out.model.mean[i] = g;
        out.model.variance[i] = cfg.init_variance;
        out.mixtures[i] = PixelMixture::seeded(cfg.components, g, cfg.init_variance, cfg.init_variance);
    }
    return out;
}

namespace {

// Component indices in descending w/sigma, stable on ties.
std::array<int, kMaxComponents> check_order(const PixelMixture& m)
{
    std::array<int, kMaxComponents> order{};
    std::iota(order.begin(), order.begin() + m.size(), 0);
    std::stable_sort(order.begin(), order.begin() + m.size(), [&](int a, int b) {
        return m[a].weight / std::sqrt(m[a].variance) > m[b].weight / std::sqrt(m[b].variance);
    });
    return order;
}

} // namespace

std::optional<int> match_component(const PixelMixture& mixture, double g)
{
    const auto order = check_order(mixture);
    for (int k = 0; k < mixture.size(); ++k) {
        const auto& c = mixture[order[static_cast<std::size_t>(k)]];
        if (c.weight <= 0.0)
            continue;
        const double d = g - c.mean;
        if (d * d <= 9.0 * c.variance)
            return order[static_cast<std::size_t>(k)];
    }
    return std::nullopt;
}

PixelMixture update_mixture(PixelMixture mixture, double g, double alpha, const MixtureConfig& cfg)
{
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("update_mixture: alpha must lie in [0, 1)");
    if (const auto hit = match_component(mixture, g)) {
        auto& c = mixture[*hit];
        const double prev_mean = c.mean;
        c.weight = (1.0 - alpha) * c.weight + alpha;
        c.mean = (1.0 - alpha) * prev_mean + alpha * g;
        const double d = g - prev_mean;
        c.variance = std::max((1.0 - alpha) * c.variance + alpha * d * d, cfg.variance_floor);
    } else {
        int lowest = 0;
        for (int i = 1; i < mixture.size(); ++i)
            if (mixture[i].weight < mixture[lowest].weight)
                lowest = i;
        mixture[lowest] = {cfg.init_weight, g, cfg.init_variance};
    }
    mixture.normalize_weights();
    return mixture;
}

GaussianComponent select_background(const PixelMixture& mixture)
{
    int best = 0;
    double best_ratio = mixture[0].weight / std::sqrt(mixture[0].variance);
    for (int i = 1; i < mixture.size(); ++i) {
        const double r = mixture[i].weight / std::sqrt(mixture[i].variance);
        if (r > best_ratio) {
            best = i;
            best_ratio = r;
        }
    }
    return mixture[best];
}

BackgroundModel select_background(const MixtureField& mixtures)
{
    BackgroundModel bg{Grid<double>(mixtures.width(), mixtures.height()),
                       Grid<double>(mixtures.width(), mixtures.height())};
    for (std::size_t i = 0; i < mixtures.size(); ++i) {
        const auto c = select_background(mixtures[i]);
        bg.mean[i] = c.mean;
        bg.variance[i] = c.variance;
    }
    return bg;
}

} // namespace shadowseg
