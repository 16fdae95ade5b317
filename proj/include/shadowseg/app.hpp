#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shadowseg/evaluate.hpp"
#include "shadowseg/pipeline.hpp"

namespace shadowseg {

/// Everything `segment` needs. Config-file keys mirror the command-line flags
/// without the leading dashes (input, out, bg-init, alpha, alpha-prior,
/// alpha-shadow, k-gaussians, lambda1, lambda2, ymax, diag, dump-potentials,
/// kernel); '_' and '-' are interchangeable.
struct SegmentSettings {
    std::string input;
    std::filesystem::path out;
    int bg_init = 0; // 0: bootstrap adaptively from the first frame
    EngineConfig engine;
    std::optional<std::filesystem::path> diag;
    std::optional<std::filesystem::path> dump_potentials;
    std::string kernel = "auto";
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Plain `key=value` lines; blank lines and lines starting with '#' are
/// skipped. Throws std::invalid_argument on a line without '='.
KeyValues parse_key_values(std::istream& in);
KeyValues read_config_file(const std::filesystem::path& path);

/// Throws std::invalid_argument on an unknown key or unparsable value.
void apply_setting(SegmentSettings& settings, std::string_view key, std::string_view value);

struct SegmentSummary {
    std::size_t frames_read = 0;
    std::size_t frames_labelled = 0;
    ShadowParams final_shadow;
    kernels::Isa isa = kernels::Isa::scalar;
};

/// Runs the engine over an image sequence, writing labels_NNNNN.pgm (NNNNN is
/// the 1-based position in the input sequence) and the optional diagnostics
/// CSV and potential dumps.
SegmentSummary run_segment(const SegmentSettings& settings);

inline constexpr std::string_view kDiagnosticsHeader = "k,F,n_bg,n_shadow,n_fg,a,c,visits";

/// One CSV row in kDiagnosticsHeader order.
std::string diagnostics_row(const FrameDiagnostics& d);

/// Pairs labels_* files in pred_dir with truth_* files in truth_dir by frame
/// number (falling back to every .pgm when no prefixed file exists).
EvalReport run_eval(const std::filesystem::path& pred_dir, const std::filesystem::path& truth_dir,
                    int exclude_radius = 0);

} // namespace shadowseg
