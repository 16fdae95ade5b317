#include "shadowseg/edge.hpp"

#include <algorithm>
#include <stdexcept>

#include "shadowseg/kernels.hpp"

namespace shadowseg {

EdgeField frame_edges(const Frame& frame)
{
    if (frame.width() < 3 || frame.height() < 3)
        throw std::invalid_argument("frame_edges needs a frame of at least 3x3 pixels");
    EdgeField e{Grid<std::int32_t>(frame.width(), frame.height()),
                Grid<std::int32_t>(frame.width(), frame.height())};
    kernels::frame_edges(kernels::active(), frame.values(), frame.width(), frame.height(),
                         e.h.values(), e.v.values());
    return e;
}

EdgeModel background_edge_model(const BackgroundModel& bg)
{
    const int w = bg.width();
    const int h = bg.height();
    EdgeModel m{Grid<double>(w, h), Grid<double>(w, h), Grid<double>(w, h), Grid<double>(w, h)};
    for (int y = 0; y < h; ++y) {
        const int up = std::max(y - 1, 0);
        const int down = std::min(y + 1, h - 1);
        for (int x = 0; x < w; ++x) {
            const int left = std::max(x - 1, 0);
            const int right = std::min(x + 1, w - 1);
            m.mean_h.at(x, y) = bg.mean.at(right, y) - bg.mean.at(left, y);
            m.mean_v.at(x, y) = bg.mean.at(x, down) - bg.mean.at(x, up);
            m.var_h.at(x, y) = bg.variance.at(right, y) + bg.variance.at(left, y);
            m.var_v.at(x, y) = bg.variance.at(x, down) + bg.variance.at(x, up);
        }
    }
    return m;
}

} // namespace shadowseg
