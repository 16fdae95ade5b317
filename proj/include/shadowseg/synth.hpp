#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "shadowseg/grid.hpp"

namespace shadowseg {

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
    bool contains(int px, int py) const noexcept { return px >= x && py >= y && px < x + w && py < y + h; }
};

/// Ground-truth scene: a textured static background, a rectangle moving at
/// constant velocity, and its cast shadow (the rectangle translated by a fixed
/// offset, minus the object itself) rendered through g = gain * b + offset.
struct SynthScene {
    int width = 64;
    int height = 64;
    /// One bootstrap frame plus 20 processed frames.
    int frames = 21;
    /// Leading frames without the object.
    int warmup_frames = 10;

    // Background: base + amp_x sin(2 pi x / period_x) + amp_y cos(2 pi y / period_y)
    double background_base = 130.0;
    double texture_amp_x = 30.0;
    double texture_amp_y = 20.0;
    double texture_period_x = 16.0;
    double texture_period_y = 12.0;

    bool has_object = true;
    int object_w = 28;
    int object_h = 24;
    double object_x0 = -4.0;
    double object_y0 = 6.0;
    double object_vx = 2.0;
    double object_vy = 0.0;
    /// Flat object intensity; negative means "same as the background" (camouflage).
    double object_intensity = 225.0;

    int shadow_dx = 6;
    int shadow_dy = 24;
    double shadow_gain = 0.6;
    double shadow_offset = 5.0;

    double noise = 2.0;
    std::uint64_t seed = 1;
    int y_max = 255;
};

/// Throws std::invalid_argument when the scene violates its invariants.
void validate(const SynthScene& scene);

/// "default", "static" (no object) or "camouflage" (object as bright as the
/// background beneath it).
SynthScene synth_preset(std::string_view name);

/// Integer background pattern, clamped to [0, y_max].
Frame background_pattern(const SynthScene& scene);

/// Object rectangle at frame t (0-based), empty during warm-up or without an object.
Rect object_rect(const SynthScene& scene, int t);

struct SyntheticSequence {
    std::vector<Frame> frames;
    std::vector<LabelField> truth;
};

/// Renders every frame and its ground truth. Seeded and reproducible.
SyntheticSequence render_synthetic(const SynthScene& scene);

struct SequenceSpec {
    std::vector<std::filesystem::path> frames;
    std::vector<std::filesystem::path> truth;
    int width = 0;
    int height = 0;
    int y_max = 255;
};

/// Writes out_dir/frame_NNNNN.pgm and out_dir/truth/truth_NNNNN.pgm (1-based).
SequenceSpec generate_synthetic(const SynthScene& scene, const std::filesystem::path& out_dir);

} // namespace shadowseg
