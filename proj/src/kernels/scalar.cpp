#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shadowseg/kernels.hpp"
#include "shadowseg/likelihood.hpp"

namespace shadowseg::kernels::detail {

void potentials_scalar(const PotentialInputs& in, const PotentialPlanes& out)
{
    const ShadowParams shadow{in.gain, in.offset};
    const std::size_t n = in.intensity.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double g = in.intensity[i];
        const EdgeVector e{in.edge_h[i], in.edge_v[i]};
        const EdgeStats stats{in.edge_mean_h[i], in.edge_mean_v[i], in.edge_var_h[i], in.edge_var_v[i]};
        for (int k = 0; k < 3; ++k) {
            const Label s = label_from_slot(k);
            out.intensity[static_cast<std::size_t>(k)][i] =
                intensity_potential(g, in.bg_mean[i], in.bg_var[i], shadow, in.y_max, s);
            out.edge[static_cast<std::size_t>(k)][i] = edge_potential(e, stats, shadow, in.y_max, s);
        }
    }
}

void frame_edges_scalar(std::span<const std::uint8_t> px, int width, int height,
                        std::span<std::int32_t> h, std::span<std::int32_t> v)
{
    const auto at = [&](int x, int y) {
        return static_cast<std::int32_t>(px[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                                            static_cast<std::size_t>(x)]);
    };
    for (int y = 0; y < height; ++y) {
        const int up = std::max(y - 1, 0);
        const int down = std::min(y + 1, height - 1);
        for (int x = 0; x < width; ++x) {
            const int left = std::max(x - 1, 0);
            const int right = std::min(x + 1, width - 1);
            const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
            h[i] = at(right, y) - at(left, y);
            v[i] = at(x, down) - at(x, up);
        }
    }
}

void natural_log_scalar(std::span<const double> in, std::span<double> out)
{
    std::transform(in.begin(), in.end(), out.begin(), [](double x) { return std::log(x); });
}

} // namespace shadowseg::kernels::detail
