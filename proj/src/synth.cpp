#include "shadowseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "shadowseg/pgm.hpp"

namespace shadowseg {

void validate(const SynthScene& s)
{
    if (s.width < 3 || s.height < 3)
        throw std::invalid_argument("synthetic scene must be at least 3x3");
    if (s.frames < 1 || s.warmup_frames < 0)
        throw std::invalid_argument("synthetic scene needs a positive frame count");
    if (!(s.shadow_gain > 0.0 && s.shadow_gain <= 1.0))
        throw std::invalid_argument("planted shadow gain must lie in (0, 1]");
    if (!(s.noise >= 0.0))
        throw std::invalid_argument("noise sigma must be non-negative");
    if (s.y_max < 1 || s.y_max > 255)
        throw std::invalid_argument("synthetic y_max must be in 1..255");
    if (s.has_object && (s.object_w <= 0 || s.object_h <= 0))
        throw std::invalid_argument("object rectangle must have positive size");
}

SynthScene synth_preset(std::string_view name)
{
    SynthScene s;
    if (name == "default")
        return s;
    if (name == "static") {
        s.has_object = false;
        return s;
    }
    if (name == "camouflage") {
        s.object_intensity = -1.0;
        return s;
    }
    throw std::invalid_argument("unknown synthetic preset '" + std::string(name) + "'");
}

Frame background_pattern(const SynthScene& s)
{
    Frame f(s.width, s.height);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int y = 0; y < s.height; ++y) {
        for (int x = 0; x < s.width; ++x) {
            const double v = s.background_base + s.texture_amp_x * std::sin(two_pi * x / s.texture_period_x) +
                             s.texture_amp_y * std::cos(two_pi * y / s.texture_period_y);
            f.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, static_cast<long>(s.y_max)));
        }
    }
    return f;
}

Rect object_rect(const SynthScene& s, int t)
{
    if (!s.has_object || t < s.warmup_frames)
        return {};
    const int step = t - s.warmup_frames;
    return {static_cast<int>(std::lround(s.object_x0 + s.object_vx * step)),
            static_cast<int>(std::lround(s.object_y0 + s.object_vy * step)), s.object_w, s.object_h};
}

SyntheticSequence render_synthetic(const SynthScene& s)
{
    validate(s);
    const Frame pattern = background_pattern(s);
    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    SyntheticSequence seq;
    seq.frames.reserve(static_cast<std::size_t>(s.frames));
    seq.truth.reserve(static_cast<std::size_t>(s.frames));
    for (int t = 0; t < s.frames; ++t) {
        const Rect obj = object_rect(s, t);
        const Rect shadow{obj.x + s.shadow_dx, obj.y + s.shadow_dy, obj.w, obj.h};
        Frame frame(s.width, s.height);
        LabelField truth(s.width, s.height, Label::background);
        for (int y = 0; y < s.height; ++y) {
            for (int x = 0; x < s.width; ++x) {
                // Draw one sample per pixel in raster order whatever the label,
                // so the noise stream does not depend on the geometry.
                const double n = s.noise > 0.0 ? s.noise * noise(rng) : 0.0;
                const double b = pattern.at(x, y) + n;
                double g = b;
                Label label = Label::background;
                if (obj.contains(x, y)) {
                    const double base = s.object_intensity < 0.0 ? pattern.at(x, y) : s.object_intensity;
                    g = base + n;
                    label = Label::foreground;
                } else if (shadow.contains(x, y)) {
                    g = s.shadow_gain * b + s.shadow_offset;
                    label = Label::shadow;
                }
                frame.at(x, y) = static_cast<std::uint8_t>(
                    std::clamp(std::lround(g), 0L, static_cast<long>(s.y_max)));
                truth.at(x, y) = label;
            }
        }
        seq.frames.push_back(std::move(frame));
        seq.truth.push_back(std::move(truth));
    }
    return seq;
}

SequenceSpec generate_synthetic(const SynthScene& s, const std::filesystem::path& out_dir)
{
    const auto seq = render_synthetic(s);
    const auto truth_dir = out_dir / "truth";
    std::filesystem::create_directories(truth_dir);
    SequenceSpec spec;
    spec.width = s.width;
    spec.height = s.height;
    spec.y_max = s.y_max;
    char name[64];
    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
        std::snprintf(name, sizeof name, "frame_%05zu.pgm", t + 1);
        spec.frames.push_back(out_dir / name);
        write_pgm(spec.frames.back(), seq.frames[t], s.y_max);
        std::snprintf(name, sizeof name, "truth_%05zu.pgm", t + 1);
        spec.truth.push_back(truth_dir / name);
        write_labels(spec.truth.back(), seq.truth[t]);
    }
    return spec;
}

} // namespace shadowseg
