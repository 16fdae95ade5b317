#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "shadowseg/background.hpp"
#include "shadowseg/edge.hpp"
#include "shadowseg/energy.hpp"
#include "shadowseg/kernels.hpp"
#include "shadowseg/likelihood.hpp"
#include "shadowseg/optimizer.hpp"
#include "shadowseg/shadow.hpp"

namespace shadowseg {

struct EngineConfig {
    MixtureConfig mixture;
    /// Learning rate of the mixtures. The prior and shadow updates use the
    /// same rate unless overridden.
    double alpha = 0.02;
    std::optional<double> alpha_prior;
    std::optional<double> alpha_shadow;
    double lambda1 = 10.0;
    double lambda2 = 4.0;
    double y_max = 255.0;
    /// Replace per-pixel variances by their mean during detection.
    bool pool_variance = true;
    int min_shadow_pixels = kMinShadowPixels;
    ShadowParams initial_shadow{};

    double prior_rate() const noexcept { return alpha_prior.value_or(alpha); }
    double shadow_rate() const noexcept { return alpha_shadow.value_or(alpha); }
};

/// Throws std::invalid_argument on out-of-range settings.
void validate(const EngineConfig& cfg);

struct EngineState {
    MixtureField mixtures;
    BackgroundModel background;
    EdgeModel edges;
    ShadowParams shadow;
    PriorParams prior;
    std::int64_t k = 0; // frames processed so far
};

struct FrameDiagnostics {
    std::int64_t k = 0;
    double energy = 0.0;
    LabelCounts counts{};
    ShadowParams shadow; // parameters used to label this frame
    std::size_t visits = 0;
};

struct FrameResult {
    LabelField labels;
    FrameDiagnostics diagnostics;
};

/// Mean of the per-pixel background variances.
double pooled_variance(const BackgroundModel& bg);

/// Sequential per-frame segmentation engine. Each frame is labelled against
/// the models left by the previous frame, then the models are updated from
/// the frame and its labels.
class Engine {
public:
    /// Bootstrap from background-only frames.
    static Engine from_static(std::span<const Frame> frames, const EngineConfig& cfg);
    /// Bootstrap from the first frame of the sequence (which is then also
    /// processed like any other frame).
    static Engine from_first_frame(const Frame& first, const EngineConfig& cfg);

    FrameResult process(const Frame& frame);

    const EngineState& state() const noexcept { return state_; }
    const EngineConfig& config() const noexcept { return cfg_; }

    /// Potentials of the most recent frame.
    const PotentialTable& last_potentials() const noexcept { return last_potentials_; }

    /// Kernel ISA for the data-parallel stages; defaults to kernels::active().
    void set_isa(kernels::Isa isa);
    kernels::Isa isa() const noexcept { return isa_; }

private:
    Engine(EngineConfig cfg, BackgroundState bg);

    EngineConfig cfg_;
    EngineState state_;
    PotentialTable last_potentials_;
    kernels::Isa isa_;
};

} // namespace shadowseg
