#include "shadowseg/pipeline.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace shadowseg {

namespace {

void check_rate(double r, const char* what)
{
    if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

} // namespace

void validate(const EngineConfig& cfg)
{
    validate(cfg.mixture);
    if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1)");
    check_rate(cfg.prior_rate(), "alpha_prior");
    check_rate(cfg.shadow_rate(), "alpha_shadow");
    if (cfg.lambda1 < 0.0 || cfg.lambda2 < 0.0)
        throw std::invalid_argument("lambda1 and lambda2 must be non-negative");
    if (!(cfg.y_max > 0.0))
        throw std::invalid_argument("y_max must be positive");
    if (cfg.min_shadow_pixels < 2)
        throw std::invalid_argument("min_shadow_pixels must be at least 2");
    if (!(cfg.initial_shadow.gain > 0.0))
        throw std::invalid_argument("initial shadow gain must be positive");
}

double pooled_variance(const BackgroundModel& bg)
{
    const auto v = bg.variance.values();
    if (v.empty())
        throw std::invalid_argument("pooled_variance: empty background model");
    double sum = 0.0;
    for (double x : v)
        sum += x;
    return sum / static_cast<double>(v.size());
}

Engine::Engine(EngineConfig cfg, BackgroundState bg)
    : cfg_(std::move(cfg)), isa_(kernels::active())
{
    state_.mixtures = std::move(bg.mixtures);
    state_.background = std::move(bg.model);
    state_.edges = background_edge_model(state_.background);
    state_.shadow = clamp(cfg_.initial_shadow, cfg_.y_max);
    state_.prior.lambda1 = cfg_.lambda1;
    state_.prior.lambda2 = cfg_.lambda2;
}

Engine Engine::from_static(std::span<const Frame> frames, const EngineConfig& cfg)
{
    validate(cfg);
    return Engine(cfg, init_static(frames, cfg.mixture));
}

Engine Engine::from_first_frame(const Frame& first, const EngineConfig& cfg)
{
    validate(cfg);
    return Engine(cfg, init_adaptive(first, cfg.mixture));
}

void Engine::set_isa(kernels::Isa isa)
{
    if (!kernels::available(isa))
        throw std::invalid_argument("kernel ISA not available on this CPU");
    isa_ = isa;
}

FrameResult Engine::process(const Frame& frame)
{
    const int w = state_.background.width();
    const int h = state_.background.height();
    if (!frame.same_shape(w, h))
        throw std::invalid_argument("process: frame size does not match the engine");

    // Detection against the models of the previous step.
    const EdgeField edges = frame_edges(frame);
    if (cfg_.pool_variance) {
        const double pooled = pooled_variance(state_.background);
        const BackgroundModel bg{state_.background.mean, Grid<double>(w, h, pooled)};
        const EdgeModel em{state_.edges.mean_h, state_.edges.mean_v, Grid<double>(w, h, 2.0 * pooled),
                           Grid<double>(w, h, 2.0 * pooled)};
        last_potentials_ = build_potentials(frame, edges, {bg, em}, state_.shadow, cfg_.y_max, isa_);
    } else {
        last_potentials_ =
            build_potentials(frame, edges, {state_.background, state_.edges}, state_.shadow, cfg_.y_max, isa_);
    }
    HcfResult hcf = hcf_minimize(last_potentials_, state_.prior);

    FrameResult out;
    out.diagnostics.k = state_.k + 1;
    out.diagnostics.energy = hcf.energy;
    out.diagnostics.counts = count_labels(hcf.labels);
    out.diagnostics.shadow = state_.shadow;
    out.diagnostics.visits = hcf.visits;

    // Single-site prior.
    const auto& counts = out.diagnostics.counts;
    const double total = static_cast<double>(counts[0] + counts[1] + counts[2]);
    state_.prior = update_eta(state_.prior, counts, cfg_.prior_rate());

    // Shadow transform from shadow-labelled pixels against the background mean.
    std::vector<IntensityPair> pairs;
    pairs.reserve(static_cast<std::size_t>(counts[static_cast<std::size_t>(slot(Label::shadow))]));
    for (std::size_t i = 0; i < frame.size(); ++i)
        if (hcf.labels[i] == Label::shadow)
            pairs.push_back({static_cast<double>(frame[i]), state_.background.mean[i]});
    if (const auto fit = fit_shadow(pairs, cfg_.min_shadow_pixels)) {
        const double eta2_star = -static_cast<double>(pairs.size()) / total;
        state_.shadow = update_shadow(state_.shadow, *fit, eta2_star, cfg_.shadow_rate(), cfg_.y_max);
    }

    // Background history, every pixel regardless of its label.
    for (std::size_t i = 0; i < frame.size(); ++i)
        state_.mixtures[i] = update_mixture(state_.mixtures[i], frame[i], cfg_.alpha, cfg_.mixture);
    state_.background = select_background(state_.mixtures);
    state_.edges = background_edge_model(state_.background);
    ++state_.k;

    out.labels = std::move(hcf.labels);
    return out;
}

} // namespace shadowseg
