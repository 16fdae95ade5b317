// AVX2 variants. Functions carry a target attribute rather than the whole
// file being built with -mavx2, so inline code shared with other translation
// units is never emitted with AVX2 instructions. Only entered after a runtime
// CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#define SHADOWSEG_AVX2 __attribute__((target("avx2")))

#include "shadowseg/kernels.hpp"

namespace shadowseg::kernels::detail {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kLog2Pi = 2.0 * kHalfLog2Pi;

// ln(x) for positive normal x. x = m * 2^e with m in [sqrt(1/2), sqrt(2)),
// ln(m) = 2 atanh(s), s = (m-1)/(m+1), |s| < 0.1716; the odd series is cut
// after s^21, below double rounding.
SHADOWSEG_AVX2 inline __m256d log_pd(__m256d x)
{
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL); // 2^52

    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
    const __m256i biased = _mm256_srli_epi64(bits, 52);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic_bits)),
                              _mm256_set1_pd(4503599627370496.0));
    e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.41421356237309504880), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, one));

    const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d z = _mm256_mul_pd(s, s);
    __m256d p = _mm256_set1_pd(1.0 / 21.0);
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 19.0));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 17.0));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(1.0 / 3.0));
    // 2s + 2s*z*p, keeping the leading term exact
    const __m256d two_s = _mm256_add_pd(s, s);
    const __m256d log_m = _mm256_add_pd(two_s, _mm256_mul_pd(_mm256_mul_pd(two_s, z), p));

    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    return _mm256_add_pd(_mm256_mul_pd(e, ln2_hi), _mm256_add_pd(log_m, _mm256_mul_pd(e, ln2_lo)));
}

SHADOWSEG_AVX2 inline __m256d load_u8x4(const std::uint8_t* p)
{
    std::int32_t raw;
    std::memcpy(&raw, p, sizeof raw);
    return _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(_mm_cvtsi32_si128(raw)));
}

SHADOWSEG_AVX2 inline __m256d load_i32x4(const std::int32_t* p)
{
    return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

SHADOWSEG_AVX2 inline __m256d square(__m256d x) { return _mm256_mul_pd(x, x); }

SHADOWSEG_AVX2 inline __m256i widen_u8x8(const std::uint8_t* p)
{
    return _mm256_cvtepu8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(p)));
}

} // namespace

SHADOWSEG_AVX2 void potentials_avx2(const PotentialInputs& in, const PotentialPlanes& out)
{
    const std::size_t n = in.intensity.size();
    const double a = in.gain;
    const double ln_a = std::log(a);

    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vc = _mm256_set1_pd(in.offset);
    const __m256d two_a_a = _mm256_set1_pd(2.0 * a * a);
    const __m256d a_a = _mm256_set1_pd(a * a);
    const __m256d half_log_2pi = _mm256_set1_pd(kHalfLog2Pi);
    const __m256d log_2pi = _mm256_set1_pd(kLog2Pi);
    const __m256d shadow_u1_const = _mm256_set1_pd(kHalfLog2Pi + ln_a);
    const __m256d shadow_u2_const = _mm256_set1_pd(kLog2Pi + 2.0 * ln_a);
    const __m256d fg_u1 = _mm256_set1_pd(std::log(in.y_max));
    const __m256d inv_y = _mm256_set1_pd(1.0 / in.y_max);
    const __m256d y_sq = _mm256_set1_pd(in.y_max * in.y_max);
    const __m256d tri_floor = _mm256_set1_pd(0.1 / (in.y_max * in.y_max));
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d g = load_u8x4(in.intensity.data() + i);
        const __m256d mean = _mm256_loadu_pd(in.bg_mean.data() + i);
        const __m256d var = _mm256_loadu_pd(in.bg_var.data() + i);
        const __m256d half_log_var = _mm256_mul_pd(half, log_pd(var));

        const __m256d d_bg = _mm256_sub_pd(g, mean);
        const __m256d u1_bg = _mm256_add_pd(_mm256_add_pd(half_log_2pi, half_log_var),
                                            _mm256_div_pd(square(d_bg), _mm256_mul_pd(two, var)));
        const __m256d d_sh = _mm256_sub_pd(_mm256_sub_pd(g, _mm256_mul_pd(va, mean)), vc);
        const __m256d u1_sh = _mm256_add_pd(_mm256_add_pd(shadow_u1_const, half_log_var),
                                            _mm256_div_pd(square(d_sh), _mm256_mul_pd(two_a_a, var)));

        const __m256d eh = load_i32x4(in.edge_h.data() + i);
        const __m256d ev = load_i32x4(in.edge_v.data() + i);
        const __m256d mh = _mm256_loadu_pd(in.edge_mean_h.data() + i);
        const __m256d mv = _mm256_loadu_pd(in.edge_mean_v.data() + i);
        const __m256d vh = _mm256_loadu_pd(in.edge_var_h.data() + i);
        const __m256d vv = _mm256_loadu_pd(in.edge_var_v.data() + i);
        const __m256d half_log_det = _mm256_mul_pd(half, log_pd(_mm256_mul_pd(vh, vv)));

        const __m256d q_bg = _mm256_add_pd(_mm256_div_pd(square(_mm256_sub_pd(eh, mh)), vh),
                                           _mm256_div_pd(square(_mm256_sub_pd(ev, mv)), vv));
        const __m256d u2_bg = _mm256_add_pd(_mm256_add_pd(log_2pi, half_log_det), _mm256_mul_pd(half, q_bg));
        const __m256d q_sh =
            _mm256_add_pd(_mm256_div_pd(square(_mm256_sub_pd(eh, _mm256_mul_pd(va, mh))), vh),
                          _mm256_div_pd(square(_mm256_sub_pd(ev, _mm256_mul_pd(va, mv))), vv));
        const __m256d u2_sh = _mm256_add_pd(_mm256_add_pd(shadow_u2_const, half_log_det),
                                            _mm256_div_pd(_mm256_mul_pd(half, q_sh), a_a));

        const __m256d fh = _mm256_max_pd(
            _mm256_sub_pd(inv_y, _mm256_div_pd(_mm256_and_pd(eh, abs_mask), y_sq)), tri_floor);
        const __m256d fv = _mm256_max_pd(
            _mm256_sub_pd(inv_y, _mm256_div_pd(_mm256_and_pd(ev, abs_mask), y_sq)), tri_floor);
        const __m256d u2_fg = _mm256_sub_pd(_mm256_setzero_pd(), log_pd(_mm256_mul_pd(fh, fv)));

        _mm256_storeu_pd(out.intensity[0].data() + i, u1_bg);
        _mm256_storeu_pd(out.intensity[1].data() + i, u1_sh);
        _mm256_storeu_pd(out.intensity[2].data() + i, fg_u1);
        _mm256_storeu_pd(out.edge[0].data() + i, u2_bg);
        _mm256_storeu_pd(out.edge[1].data() + i, u2_sh);
        _mm256_storeu_pd(out.edge[2].data() + i, u2_fg);
    }
    if (i < n) {
        PotentialInputs tail = in;
        const auto rest = n - i;
        tail.intensity = in.intensity.subspan(i, rest);
        tail.bg_mean = in.bg_mean.subspan(i, rest);
        tail.bg_var = in.bg_var.subspan(i, rest);
        tail.edge_h = in.edge_h.subspan(i, rest);
        tail.edge_v = in.edge_v.subspan(i, rest);
        tail.edge_mean_h = in.edge_mean_h.subspan(i, rest);
        tail.edge_mean_v = in.edge_mean_v.subspan(i, rest);
        tail.edge_var_h = in.edge_var_h.subspan(i, rest);
        tail.edge_var_v = in.edge_var_v.subspan(i, rest);
        PotentialPlanes tail_out;
        for (std::size_t k = 0; k < 3; ++k) {
            tail_out.intensity[k] = out.intensity[k].subspan(i, rest);
            tail_out.edge[k] = out.edge[k].subspan(i, rest);
        }
        potentials_scalar(tail, tail_out);
    }
}

SHADOWSEG_AVX2 void frame_edges_avx2(std::span<const std::uint8_t> px, int width, int height,
                      std::span<std::int32_t> h, std::span<std::int32_t> v)
{
    const auto w = static_cast<std::size_t>(width);
    if (w == 0)
        return;
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* row = px.data() + static_cast<std::size_t>(y) * w;
        const std::uint8_t* up = px.data() + static_cast<std::size_t>(std::max(y - 1, 0)) * w;
        const std::uint8_t* down = px.data() + static_cast<std::size_t>(std::min(y + 1, height - 1)) * w;
        std::int32_t* hr = h.data() + static_cast<std::size_t>(y) * w;
        std::int32_t* vr = v.data() + static_cast<std::size_t>(y) * w;

        std::size_t x = 0;
        for (; x + 8 <= w; x += 8)
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(vr + x),
                                _mm256_sub_epi32(widen_u8x8(down + x), widen_u8x8(up + x)));
        for (; x < w; ++x)
            vr[x] = static_cast<std::int32_t>(down[x]) - static_cast<std::int32_t>(up[x]);

        hr[0] = static_cast<std::int32_t>(row[std::min<std::size_t>(1, w - 1)]) - row[0];
        x = 1;
        for (; x + 9 <= w; x += 8)
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(hr + x),
                                _mm256_sub_epi32(widen_u8x8(row + x + 1), widen_u8x8(row + x - 1)));
        for (; x < w; ++x) {
            const std::size_t right = std::min(x + 1, w - 1);
            hr[x] = static_cast<std::int32_t>(row[right]) - static_cast<std::int32_t>(row[x - 1]);
        }
    }
}

SHADOWSEG_AVX2 void natural_log_avx2(std::span<const double> in, std::span<double> out)
{
    std::size_t i = 0;
    for (; i + 4 <= in.size(); i += 4)
        _mm256_storeu_pd(out.data() + i, log_pd(_mm256_loadu_pd(in.data() + i)));
    if (i < in.size()) {
        alignas(32) double buf[4] = {1.0, 1.0, 1.0, 1.0};
        std::copy(in.begin() + static_cast<std::ptrdiff_t>(i), in.end(), buf);
        _mm256_store_pd(buf, log_pd(_mm256_load_pd(buf)));
        std::copy(buf, buf + (in.size() - i), out.begin() + static_cast<std::ptrdiff_t>(i));
    }
}

} // namespace shadowseg::kernels::detail
