#pragma once

// Data-parallel inner loops. Every kernel has a portable scalar reference and,
// where the target supports it, an AVX2 variant picked at runtime. The scalar
// variant is the definition; the SIMD variants are tested for equivalence
// against it.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace shadowseg::kernels {

enum class Isa {
    scalar,
    avx2,
};

std::string_view to_string(Isa isa) noexcept;

/// Parses "scalar" / "avx2"; throws std::invalid_argument otherwise.
Isa parse_isa(std::string_view name);

/// Compiled in and supported by the running CPU.
bool available(Isa isa) noexcept;

/// Widest available ISA, unless SHADOWSEG_KERNEL names another available one.
Isa detect() noexcept;

/// Process-wide selection used by the library when no ISA is passed explicitly.
/// Defaults to detect(); set_active throws if the ISA is not available.
Isa active() noexcept;
void set_active(Isa isa);

/// Per-pixel inputs of the intensity and edge potentials, structure-of-arrays.
/// All spans have the same length n.
struct PotentialInputs {
    std::span<const std::uint8_t> intensity;
    std::span<const double> bg_mean;
    std::span<const double> bg_var;
    std::span<const std::int32_t> edge_h;
    std::span<const std::int32_t> edge_v;
    std::span<const double> edge_mean_h;
    std::span<const double> edge_mean_v;
    std::span<const double> edge_var_h;
    std::span<const double> edge_var_v;
    double gain = 0.5;
    double offset = 0.0;
    double y_max = 255.0;
};

/// Output planes indexed by label slot (background, shadow, foreground).
struct PotentialPlanes {
    std::array<std::span<double>, 3> intensity;
    std::array<std::span<double>, 3> edge;
};

void potentials(Isa isa, const PotentialInputs& in, const PotentialPlanes& out);

/// Central differences with clamped (replicate) borders.
void frame_edges(Isa isa, std::span<const std::uint8_t> pixels, int width, int height,
                 std::span<std::int32_t> h, std::span<std::int32_t> v);

/// Element-wise natural log of positive, finite, normal inputs.
void natural_log(Isa isa, std::span<const double> in, std::span<double> out);

namespace detail {
void potentials_scalar(const PotentialInputs& in, const PotentialPlanes& out);
void frame_edges_scalar(std::span<const std::uint8_t> pixels, int width, int height,
                        std::span<std::int32_t> h, std::span<std::int32_t> v);
void natural_log_scalar(std::span<const double> in, std::span<double> out);
#if defined(SHADOWSEG_BUILD_AVX2)
void potentials_avx2(const PotentialInputs& in, const PotentialPlanes& out);
void frame_edges_avx2(std::span<const std::uint8_t> pixels, int width, int height,
                      std::span<std::int32_t> h, std::span<std::int32_t> v);
void natural_log_avx2(std::span<const double> in, std::span<double> out);
#endif
} // namespace detail

} // namespace shadowseg::kernels
