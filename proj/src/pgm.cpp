#include "shadowseg/pgm.hpp"

#include <glob.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace shadowseg {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    long number(const char* what)
    {
        skip_space_and_comments();
        long v = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1'000'000'000L)
                throw PgmError(std::string("PGM header: ") + what + " out of range");
            ++pos_;
            ++digits;
        }
        if (digits == 0)
            throw PgmError(std::string("PGM header: expected ") + what);
        return v;
    }

    std::size_t& pos() { return pos_; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PgmError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const std::filesystem::path& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw PgmError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw PgmError("write failed for " + path.string());
}

} // namespace

PgmImage decode_pgm(std::string_view bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw PgmError("not a PNM file");
    if (bytes[1] != '5')
        throw PgmError(std::string("unsupported PNM format P") + bytes[1] + " (only binary P5 is accepted)");
    HeaderReader r(bytes);
    r.pos() = 2;
    const long width = r.number("width");
    const long height = r.number("height");
    const long maxval = r.number("maxval");
    if (width <= 0 || height <= 0)
        throw PgmError("PGM header: non-positive dimensions");
    if (maxval < 1 || maxval > 255)
        throw PgmError("unsupported PGM maxval " + std::to_string(maxval) + " (must be 1..255)");
    auto& pos = r.pos();
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw PgmError("PGM header: missing whitespace before payload");
    ++pos;

    const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - pos < n)
        throw PgmError("truncated PGM payload: expected " + std::to_string(n) + " bytes, got " +
                       std::to_string(bytes.size() - pos));
    PgmImage img{Frame(static_cast<int>(width), static_cast<int>(height)), static_cast<int>(maxval)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<std::uint8_t>(bytes[pos + i]);
        if (v > maxval)
            throw PgmError("PGM sample exceeds maxval");
        img.frame[i] = v;
    }
    return img;
}

std::string encode_pgm(const Frame& frame, int maxval)
{
    if (maxval < 1 || maxval > 255)
        throw PgmError("unsupported PGM maxval " + std::to_string(maxval));
    std::ostringstream header;
    header << "P5\n" << frame.width() << ' ' << frame.height() << '\n' << maxval << '\n';
    std::string bytes = header.str();
    const auto v = frame.values();
    bytes.append(reinterpret_cast<const char*>(v.data()), v.size());
    return bytes;
}

PgmImage read_pgm(const std::filesystem::path& path)
{
    try {
        return decode_pgm(slurp(path));
    } catch (const PgmError& e) {
        throw PgmError(path.string() + ": " + e.what());
    }
}

void write_pgm(const std::filesystem::path& path, const Frame& frame, int maxval)
{
    dump(path, encode_pgm(frame, maxval));
}

std::uint8_t encode_label(Label s)
{
    switch (s) {
    case Label::background: return 0;
    case Label::shadow: return 128;
    case Label::foreground: return 255;
    case Label::uncommitted: break;
    }
    throw std::invalid_argument("cannot encode an uncommitted label");
}

Label decode_label(std::uint8_t value)
{
    switch (value) {
    case 0: return Label::background;
    case 128: return Label::shadow;
    case 255: return Label::foreground;
    default: break;
    }
    throw PgmError("invalid label value " + std::to_string(value));
}

void write_labels(const std::filesystem::path& path, const LabelField& labels)
{
    Frame img(labels.width(), labels.height());
    for (std::size_t i = 0; i < labels.size(); ++i)
        img[i] = encode_label(labels[i]);
    write_pgm(path, img, 255);
}

LabelField read_labels(const std::filesystem::path& path)
{
    const auto img = read_pgm(path);
    LabelField labels(img.frame.width(), img.frame.height());
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = decode_label(img.frame[i]);
    return labels;
}

std::vector<std::filesystem::path> list_sequence(const std::string& input)
{
    namespace fs = std::filesystem;
    std::vector<fs::path> out;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input))
            if (entry.is_regular_file() && entry.path().extension() == ".pgm")
                out.push_back(entry.path());
    } else {
        glob_t g{};
        const int rc = ::glob(input.c_str(), 0, nullptr, &g);
        if (rc == 0)
            for (std::size_t i = 0; i < g.gl_pathc; ++i)
                out.emplace_back(g.gl_pathv[i]);
        ::globfree(&g);
        if (rc != 0 && rc != GLOB_NOMATCH)
            throw std::runtime_error("cannot expand input pattern " + input);
    }
    std::sort(out.begin(), out.end());
    return out;
}

long frame_number(const std::filesystem::path& path)
{
    const std::string stem = path.stem().string();
    std::size_t start = stem.size();
    while (start > 0 && std::isdigit(static_cast<unsigned char>(stem[start - 1])))
        --start;
    if (start == stem.size())
        return -1;
    return std::stol(stem.substr(start));
}

} // namespace shadowseg
