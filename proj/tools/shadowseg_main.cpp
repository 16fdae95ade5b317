#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "shadowseg/app.hpp"
#include "shadowseg/synth.hpp"

namespace {

using namespace shadowseg;

// Flag values are kept as strings so a config file and the command line go
// through the same parser. Flags win over the file.
struct SegmentFlags {
    std::string config;
    std::map<std::string, std::string> values;
};

void add_segment_options(CLI::App& cmd, SegmentFlags& flags)
{
    cmd.add_option("--config", flags.config, "key=value file with defaults for the flags below");
    const std::pair<const char*, const char*> keys[] = {
        {"input", "frame directory or glob pattern (.pgm, sorted by name)"},
        {"out", "output directory for labels_NNNNN.pgm"},
        {"bg-init", "bootstrap from N background-only frames (0: adapt from frame 1)"},
        {"alpha", "mixture learning rate"},
        {"alpha-prior", "learning rate of the label-count prior (default: alpha)"},
        {"alpha-shadow", "learning rate of the shadow line (default: alpha)"},
        {"k-gaussians", "mixture components per pixel (3..5)"},
        {"lambda1", "weight of the label-count prior"},
        {"lambda2", "weight of the smoothness prior"},
        {"ymax", "maximum intensity"},
        {"diag", "per-frame diagnostics CSV"},
        {"dump-potentials", "directory for raw per-frame potential dumps"},
        {"kernel", "auto, scalar or avx2"},
    };
    for (const auto& [key, help] : keys)
        cmd.add_option(std::string("--") + key, flags.values[key], help);
}

SegmentSettings resolve(const CLI::App& cmd, const SegmentFlags& flags)
{
    SegmentSettings s;
    if (!flags.config.empty())
        for (const auto& [k, v] : read_config_file(flags.config))
            apply_setting(s, k, v);
    for (const auto& [k, v] : flags.values)
        if (cmd.count("--" + k) > 0)
            apply_setting(s, k, v);
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Background / shadow / foreground segmentation of grayscale image sequences"};
    app.require_subcommand(1);

    auto* segment = app.add_subcommand("segment", "label every frame of a sequence");
    SegmentFlags seg_flags;
    add_segment_options(*segment, seg_flags);

    auto* synth = app.add_subcommand("synth", "write a synthetic sequence with ground truth");
    std::string preset = "default";
    std::string synth_out;
    SynthScene overrides;
    synth->add_option("--preset", preset, "default, static or camouflage");
    synth->add_option("--seed", overrides.seed, "noise seed");
    synth->add_option("--frames", overrides.frames, "number of frames");
    synth->add_option("--a", overrides.shadow_gain, "planted shadow gain");
    synth->add_option("--c", overrides.shadow_offset, "planted shadow offset");
    synth->add_option("--noise", overrides.noise, "Gaussian noise sigma");
    synth->add_option("--out", synth_out, "output directory")->required();

    auto* eval = app.add_subcommand("eval", "score predicted labels against ground truth");
    std::string pred_dir;
    std::string truth_dir;
    std::string report = "-";
    int exclude = 0;
    eval->add_option("--pred", pred_dir, "directory with labels_NNNNN.pgm")->required();
    eval->add_option("--truth", truth_dir, "directory with truth_NNNNN.pgm")->required();
    eval->add_option("--report", report, "JSON report path ('-' for stdout)");
    eval->add_option("--exclude-boundary", exclude, "ignore pixels within this distance of a truth label change");

    CLI11_PARSE(app, argc, argv);

    try {
        if (segment->parsed()) {
            const auto summary = run_segment(resolve(*segment, seg_flags));
            std::cerr << "labelled " << summary.frames_labelled << " of " << summary.frames_read
                      << " frames (" << kernels::to_string(summary.isa) << "), a=" << summary.final_shadow.gain
                      << " c=" << summary.final_shadow.offset << '\n';
        } else if (synth->parsed()) {
            SynthScene scene = synth_preset(preset);
            for (const auto* opt : {"--seed", "--frames", "--a", "--c", "--noise"}) {
                if (synth->count(opt) == 0)
                    continue;
                const std::string o = opt;
                if (o == "--seed")
                    scene.seed = overrides.seed;
                else if (o == "--frames")
                    scene.frames = overrides.frames;
                else if (o == "--a")
                    scene.shadow_gain = overrides.shadow_gain;
                else if (o == "--c")
                    scene.shadow_offset = overrides.shadow_offset;
                else
                    scene.noise = overrides.noise;
            }
            const auto spec = generate_synthetic(scene, synth_out);
            std::cerr << "wrote " << spec.frames.size() << " frames to " << synth_out << '\n';
        } else if (eval->parsed()) {
            const auto json = to_json(run_eval(pred_dir, truth_dir, exclude)).dump(2);
            if (report == "-") {
                std::cout << json << '\n';
            } else {
                std::ofstream out(report);
                if (!(out << json << '\n'))
                    throw std::runtime_error("cannot write report " + report);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
