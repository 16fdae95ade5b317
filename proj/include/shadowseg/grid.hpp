#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadowseg {

/// Row-major W×H grid. x is the column (horizontal), y the row (vertical).
template <class T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, const T& fill = T{})
        : width_(width), height_(height)
    {
        if (width < 0 || height < 0)
            throw std::invalid_argument("grid dimensions must be non-negative");
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }
    bool contains(int x, int y) const noexcept
    {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    T& at(int x, int y) { return data_[index(x, y)]; }
    const T& at(int x, int y) const { return data_[index(x, y)]; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }

    bool same_shape(int width, int height) const noexcept
    {
        return width_ == width && height_ == height;
    }
    template <class U>
    bool same_shape(const Grid<U>& other) const noexcept
    {
        return same_shape(other.width(), other.height());
    }

    friend bool operator==(const Grid& a, const Grid& b) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// One grayscale frame, intensities in [0, maxval].
using Frame = Grid<std::uint8_t>;

enum class Label : std::uint8_t {
    uncommitted = 0,
    background = 1,
    shadow = 2,
    foreground = 3,
};

inline constexpr std::array<Label, 3> kSegmentLabels{Label::background, Label::shadow, Label::foreground};

/// Dense 0-based slot for a committed label (background=0, shadow=1, foreground=2).
constexpr int slot(Label s) noexcept { return static_cast<int>(s) - 1; }
constexpr Label label_from_slot(int i) noexcept { return static_cast<Label>(i + 1); }

std::string to_string(Label s);

using LabelField = Grid<Label>;

/// True if no pixel carries Label::uncommitted.
bool fully_committed(const LabelField& labels) noexcept;

/// Second-order (8-connected) neighbourhood with squared distances.
struct NeighbourOffset {
    int dx;
    int dy;
    int dist_sq;
};

inline constexpr std::array<NeighbourOffset, 8> kSecondOrder{{
    {-1, -1, 2}, {0, -1, 1}, {1, -1, 2},
    {-1, 0, 1},              {1, 0, 1},
    {-1, 1, 2},  {0, 1, 1},  {1, 1, 2},
}};

/// The "forward" half of kSecondOrder: each unordered pair appears once.
inline constexpr std::array<NeighbourOffset, 4> kForwardPairs{{
    {1, 0, 1}, {-1, 1, 2}, {0, 1, 1}, {1, 1, 2},
}};

} // namespace shadowseg
