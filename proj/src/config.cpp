#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "shadowseg/app.hpp"
#include "shadowseg/pgm.hpp"

namespace shadowseg {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string_view key)
{
    std::string k = trim(key);
    while (!k.empty() && k.front() == '-')
        k.erase(k.begin());
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

template <class T>
T parse_number(std::string_view key, std::string_view value)
{
    const std::string v = trim(value);
    T out{};
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("invalid value '" + v + "' for " + std::string(key));
    return out;
}

std::map<std::string, std::vector<std::filesystem::path>, std::less<>> group_by_prefix(
    const std::filesystem::path& dir)
{
    std::map<std::string, std::vector<std::filesystem::path>, std::less<>> groups;
    for (const auto& p : list_sequence(dir.string())) {
        const std::string stem = p.stem().string();
        const auto us = stem.find('_');
        groups[us == std::string::npos ? std::string{} : stem.substr(0, us)].push_back(p);
        groups["*"].push_back(p);
    }
    return groups;
}

std::map<long, std::filesystem::path> by_number(const std::vector<std::filesystem::path>& files)
{
    std::map<long, std::filesystem::path> out;
    for (const auto& f : files) {
        const long n = frame_number(f);
        if (n < 0)
            throw std::invalid_argument("file name has no frame number: " + f.string());
        if (!out.emplace(n, f).second)
            throw std::invalid_argument("duplicate frame number " + std::to_string(n) + " in " +
                                        f.parent_path().string());
    }
    return out;
}

} // namespace

KeyValues parse_key_values(std::istream& in)
{
    KeyValues out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(normalize_key(t.substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
    }
    return out;
}

KeyValues read_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file " + path.string());
    return parse_key_values(in);
}

void apply_setting(SegmentSettings& s, std::string_view raw_key, std::string_view value)
{
    const std::string key = normalize_key(raw_key);
    auto& e = s.engine;
    if (key == "input")
        s.input = trim(value);
    else if (key == "out")
        s.out = trim(value);
    else if (key == "bg-init")
        s.bg_init = parse_number<int>(key, value);
    else if (key == "alpha")
        e.alpha = parse_number<double>(key, value);
    else if (key == "alpha-prior")
        e.alpha_prior = parse_number<double>(key, value);
    else if (key == "alpha-shadow")
        e.alpha_shadow = parse_number<double>(key, value);
    else if (key == "k-gaussians")
        e.mixture.components = parse_number<int>(key, value);
    else if (key == "lambda1")
        e.lambda1 = parse_number<double>(key, value);
    else if (key == "lambda2")
        e.lambda2 = parse_number<double>(key, value);
    else if (key == "ymax")
        e.y_max = parse_number<double>(key, value);
    else if (key == "diag")
        s.diag = trim(value);
    else if (key == "dump-potentials")
        s.dump_potentials = trim(value);
    else if (key == "kernel")
        s.kernel = trim(value);
    else
        throw std::invalid_argument("unknown setting '" + key + "'");
}

std::string diagnostics_row(const FrameDiagnostics& d)
{
    std::ostringstream row;
    row.precision(10);
    row << d.k << ',' << d.energy << ',' << d.counts[0] << ',' << d.counts[1] << ',' << d.counts[2] << ','
        << d.shadow.gain << ',' << d.shadow.offset << ',' << d.visits;
    return row.str();
}

SegmentSummary run_segment(const SegmentSettings& s)
{
    if (s.input.empty())
        throw std::invalid_argument("segment: no input given");
    if (s.out.empty())
        throw std::invalid_argument("segment: no output directory given");
    if (s.bg_init < 0)
        throw std::invalid_argument("segment: bg-init must be non-negative");
    validate(s.engine);

    const auto files = list_sequence(s.input);
    if (files.empty())
        throw std::invalid_argument("segment: no .pgm frames found for " + s.input);
    if (s.bg_init > 0 && (s.bg_init < 2 || static_cast<std::size_t>(s.bg_init) >= files.size()))
        throw std::invalid_argument("segment: bg-init must be at least 2 and leave frames to segment");

    std::vector<Frame> frames;
    frames.reserve(files.size());
    for (const auto& f : files) {
        auto img = read_pgm(f);
        if (img.maxval > s.engine.y_max)
            throw std::invalid_argument(f.string() + ": maxval exceeds ymax");
        if (!frames.empty() && !img.frame.same_shape(frames.front()))
            throw std::invalid_argument(f.string() + ": frame size differs from the first frame");
        frames.push_back(std::move(img.frame));
    }

    std::optional<Engine> engine;
    std::size_t first = 0;
    if (s.bg_init > 0) {
        engine.emplace(Engine::from_static(std::span(frames).first(static_cast<std::size_t>(s.bg_init)), s.engine));
        first = static_cast<std::size_t>(s.bg_init);
    } else {
        engine.emplace(Engine::from_first_frame(frames.front(), s.engine));
    }
    if (s.kernel != "auto")
        engine->set_isa(kernels::parse_isa(s.kernel));

    std::filesystem::create_directories(s.out);
    if (s.dump_potentials)
        std::filesystem::create_directories(*s.dump_potentials);
    std::ofstream diag;
    if (s.diag) {
        if (s.diag->has_parent_path())
            std::filesystem::create_directories(s.diag->parent_path());
        diag.open(*s.diag, std::ios::trunc);
        if (!diag)
            throw std::runtime_error("cannot write diagnostics to " + s.diag->string());
        diag << kDiagnosticsHeader << '\n';
    }

    SegmentSummary summary;
    summary.frames_read = frames.size();
    summary.isa = engine->isa();
    char name[64];
    for (std::size_t t = first; t < frames.size(); ++t) {
        const auto result = engine->process(frames[t]);
        std::snprintf(name, sizeof name, "labels_%05zu.pgm", t + 1);
        write_labels(s.out / name, result.labels);
        if (diag.is_open())
            diag << diagnostics_row(result.diagnostics) << '\n';
        if (s.dump_potentials) {
            std::snprintf(name, sizeof name, "potentials_%05zu.bin", t + 1);
            const auto values = engine->last_potentials().interleaved();
            std::ofstream bin(*s.dump_potentials / name, std::ios::binary | std::ios::trunc);
            bin.write(reinterpret_cast<const char*>(values.data()),
                      static_cast<std::streamsize>(values.size() * sizeof(double)));
            if (!bin)
                throw std::runtime_error("cannot write potential dump " + std::string(name));
        }
        ++summary.frames_labelled;
    }
    summary.final_shadow = engine->state().shadow;
    return summary;
}

EvalReport run_eval(const std::filesystem::path& pred_dir, const std::filesystem::path& truth_dir,
                    int exclude_radius)
{
    const auto pick = [](const std::filesystem::path& dir, std::string_view prefix) {
        auto groups = group_by_prefix(dir);
        if (const auto it = groups.find(prefix); it != groups.end())
            return it->second;
        return groups["*"];
    };
    const auto pred = by_number(pick(pred_dir, "labels"));
    const auto truth = by_number(pick(truth_dir, "truth"));
    if (pred.empty())
        throw std::invalid_argument("eval: no predicted label files in " + pred_dir.string());

    std::vector<LabelField> p;
    std::vector<LabelField> t;
    for (const auto& [n, path] : pred) {
        const auto it = truth.find(n);
        if (it == truth.end())
            throw std::invalid_argument("eval: no ground truth for frame " + std::to_string(n));
        p.push_back(read_labels(path));
        t.push_back(read_labels(it->second));
    }
    return evaluate(p, t, exclude_radius);
}

} // namespace shadowseg
