#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "shadowseg/kernels.hpp"

namespace shadowseg::kernels {

namespace {

bool cpu_has_avx2() noexcept
{
#if defined(SHADOWSEG_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Isa>& active_slot()
{
    static std::atomic<Isa> slot{detect()};
    return slot;
}

void check_sizes(const PotentialInputs& in, const PotentialPlanes& out)
{
    const auto n = in.intensity.size();
    const bool ok = in.bg_mean.size() == n && in.bg_var.size() == n && in.edge_h.size() == n &&
                    in.edge_v.size() == n && in.edge_mean_h.size() == n && in.edge_mean_v.size() == n &&
                    in.edge_var_h.size() == n && in.edge_var_v.size() == n;
    if (!ok)
        throw std::invalid_argument("potentials: input planes differ in length");
    for (std::size_t k = 0; k < 3; ++k)
        if (out.intensity[k].size() != n || out.edge[k].size() != n)
            throw std::invalid_argument("potentials: output planes differ in length");
}

void require(Isa isa)
{
    if (!available(isa))
        throw std::invalid_argument("kernel ISA '" + std::string(to_string(isa)) + "' is not available");
}

} // namespace

std::string_view to_string(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

Isa parse_isa(std::string_view name)
{
    if (name == "scalar")
        return Isa::scalar;
    if (name == "avx2")
        return Isa::avx2;
    throw std::invalid_argument("unknown kernel ISA '" + std::string(name) + "'");
}

bool available(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    }
    return false;
}

Isa detect() noexcept
{
    if (const char* env = std::getenv("SHADOWSEG_KERNEL")) {
        const std::string_view name{env};
        if (name == "scalar")
            return Isa::scalar;
        if (name == "avx2" && available(Isa::avx2))
            return Isa::avx2;
    }
    return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa active() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_active(Isa isa)
{
    require(isa);
    active_slot().store(isa, std::memory_order_relaxed);
}

void potentials(Isa isa, const PotentialInputs& in, const PotentialPlanes& out)
{
    check_sizes(in, out);
    require(isa);
    switch (isa) {
    case Isa::scalar:
        detail::potentials_scalar(in, out);
        return;
    case Isa::avx2:
#if defined(SHADOWSEG_BUILD_AVX2)
        detail::potentials_avx2(in, out);
        return;
#else
        break;
#endif
    }
    throw std::logic_error("potentials: unhandled ISA");
}

void frame_edges(Isa isa, std::span<const std::uint8_t> pixels, int width, int height,
                 std::span<std::int32_t> h, std::span<std::int32_t> v)
{
    const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (width < 0 || height < 0 || pixels.size() != n || h.size() != n || v.size() != n)
        throw std::invalid_argument("frame_edges: buffer sizes do not match dimensions");
    require(isa);
    switch (isa) {
    case Isa::scalar:
        detail::frame_edges_scalar(pixels, width, height, h, v);
        return;
    case Isa::avx2:
#if defined(SHADOWSEG_BUILD_AVX2)
        detail::frame_edges_avx2(pixels, width, height, h, v);
        return;
#else
        break;
#endif
    }
    throw std::logic_error("frame_edges: unhandled ISA");
}

void natural_log(Isa isa, std::span<const double> in, std::span<double> out)
{
    if (in.size() != out.size())
        throw std::invalid_argument("natural_log: input and output differ in length");
    require(isa);
    switch (isa) {
    case Isa::scalar:
        detail::natural_log_scalar(in, out);
        return;
    case Isa::avx2:
#if defined(SHADOWSEG_BUILD_AVX2)
        detail::natural_log_avx2(in, out);
        return;
#else
        break;
#endif
    }
    throw std::logic_error("natural_log: unhandled ISA");
}

} // namespace shadowseg::kernels
