#include "shadowseg/grid.hpp"

#include <algorithm>

namespace shadowseg {

std::string to_string(Label s)
{
    switch (s) {
    case Label::uncommitted: return "uncommitted";
    case Label::background: return "background";
    case Label::shadow: return "shadow";
    case Label::foreground: return "foreground";
    }
    return "invalid";
}

bool fully_committed(const LabelField& labels) noexcept
{
    const auto v = labels.values();
    return std::none_of(v.begin(), v.end(), [](Label s) { return s == Label::uncommitted; });
}

} // namespace shadowseg
