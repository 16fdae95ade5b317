#include "shadowseg/likelihood.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

namespace shadowseg {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178; // 0.5 * ln(2*pi)
constexpr double kLog2Pi = 2.0 * kHalfLog2Pi;

double floored_triangular(int d, double y_max) noexcept
{
    return std::max(triangular_density(d, y_max), kTriangularFloor / (y_max * y_max));
}

} // namespace

double triangular_density(double d, double y_max) noexcept
{
    return 1.0 / y_max - std::abs(d) / (y_max * y_max);
}

double intensity_potential(double g, double mean, double var, const ShadowParams& shadow, double y_max,
                           Label label)
{
    switch (label) {
    case Label::background: {
        const double d = g - mean;
        return kHalfLog2Pi + 0.5 * std::log(var) + d * d / (2.0 * var);
    }
    case Label::shadow: {
        const double a = shadow.gain;
        const double d = g - a * mean - shadow.offset;
        return kHalfLog2Pi + std::log(a) + 0.5 * std::log(var) + d * d / (2.0 * a * a * var);
    }
    case Label::foreground:
        return std::log(y_max);
    case Label::uncommitted:
        break;
    }
    throw std::invalid_argument("intensity_potential: label must be committed");
}

double edge_potential(EdgeVector e, const EdgeStats& s, const ShadowParams& shadow, double y_max, Label label)
{
    switch (label) {
    case Label::background: {
        const double dh = e.h - s.mean_h;
        const double dv = e.v - s.mean_v;
        return kLog2Pi + 0.5 * std::log(s.var_h * s.var_v) + 0.5 * (dh * dh / s.var_h + dv * dv / s.var_v);
    }
    case Label::shadow: {
        const double a = shadow.gain;
        const double dh = e.h - a * s.mean_h;
        const double dv = e.v - a * s.mean_v;
        return kLog2Pi + 2.0 * std::log(a) + 0.5 * std::log(s.var_h * s.var_v) +
               0.5 * (dh * dh / s.var_h + dv * dv / s.var_v) / (a * a);
    }
    case Label::foreground:
        return -std::log(floored_triangular(e.h, y_max) * floored_triangular(e.v, y_max));
    case Label::uncommitted:
        break;
    }
    throw std::invalid_argument("edge_potential: label must be committed");
}

PotentialTable::PotentialTable(int width, int height)
    : width_(width), height_(height)
{
    if (width < 0 || height < 0)
        throw std::invalid_argument("potential table dimensions must be non-negative");
    for (auto& p : planes_)
        p.assign(size(), 0.0);
}

void PotentialTable::set(std::size_t i, Label s, double u1, double u2)
{
    const auto k = static_cast<std::size_t>(slot(s));
    planes_[k][i] = u1;
    planes_[3 + k][i] = u2;
}

kernels::PotentialPlanes PotentialTable::planes()
{
    return {{planes_[0], planes_[1], planes_[2]}, {planes_[3], planes_[4], planes_[5]}};
}

std::vector<double> PotentialTable::interleaved() const
{
    std::vector<double> out;
    out.reserve(size() * 6);
    for (std::size_t i = 0; i < size(); ++i)
        for (const auto& p : planes_)
            out.push_back(p[i]);
    return out;
}

PotentialTable build_potentials(const Frame& frame, const EdgeField& edges, const DetectionModel& model,
                                const ShadowParams& shadow, double y_max, kernels::Isa isa)
{
    const int w = frame.width();
    const int h = frame.height();
    if (!edges.h.same_shape(frame) || !model.background.mean.same_shape(frame) ||
        !model.edges.mean_h.same_shape(frame))
        throw std::invalid_argument("build_potentials: frame and models differ in size");
    if (!(shadow.gain > 0.0))
        throw std::invalid_argument("build_potentials: shadow gain must be positive");

    PotentialTable table(w, h);
    const kernels::PotentialInputs in{
        frame.values(),
        model.background.mean.values(),
        model.background.variance.values(),
        edges.h.values(),
        edges.v.values(),
        model.edges.mean_h.values(),
        model.edges.mean_v.values(),
        model.edges.var_h.values(),
        model.edges.var_v.values(),
        shadow.gain,
        shadow.offset,
        y_max,
    };
    kernels::potentials(isa, in, table.planes());
    return table;
}

PotentialTable build_potentials(const Frame& frame, const EdgeField& edges, const DetectionModel& model,
                                const ShadowParams& shadow, double y_max)
{
    return build_potentials(frame, edges, model, shadow, y_max, kernels::active());
}

} // namespace shadowseg
