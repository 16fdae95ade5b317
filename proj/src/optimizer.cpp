#include "shadowseg/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <cstdint>
#include <queue>
#include <stdexcept>

namespace shadowseg {

namespace {

int argmin(const std::array<double, 3>& f) noexcept
{
    int best = 0;
    for (int k = 1; k < 3; ++k)
        if (f[static_cast<std::size_t>(k)] < f[static_cast<std::size_t>(best)])
            best = k;
    return best;
}

Stability stability_from(const std::array<double, 3>& f, Label current) noexcept
{
    const int best = argmin(f);
    const auto fb = f[static_cast<std::size_t>(best)];
    if (current == Label::uncommitted) {
        double gap = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 3; ++k)
            if (k != best)
                gap = std::min(gap, f[static_cast<std::size_t>(k)] - fb);
        return {-gap, label_from_slot(best)};
    }
    const int cur = slot(current);
    const auto fc = f[static_cast<std::size_t>(cur)];
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k)
        if (k != cur)
            gap = std::min(gap, f[static_cast<std::size_t>(k)] - fc);
    return {gap, label_from_slot(best)};
}

struct HeapEntry {
    double stability;
    bool committed;
    std::uint32_t site;
    std::uint32_t version;
};

// std::priority_queue pops the "largest"; invert so the least stable,
// uncommitted-first, lowest raster index comes out on top.
struct LessUrgent {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const noexcept
    {
        if (a.stability != b.stability)
            return a.stability > b.stability;
        if (a.committed != b.committed)
            return a.committed;
        return a.site > b.site;
    }
};

} // namespace

Stability stability(int x, int y, const LabelField& labels, const PotentialTable& potentials,
                    const PriorParams& prior)
{
    return stability_from(local_potentials(x, y, labels, potentials, prior), labels.at(x, y));
}

HcfResult hcf_minimize(const PotentialTable& potentials, const PriorParams& prior, const HcfOptions& options)
{
    const int w = potentials.width();
    const int h = potentials.height();
    HcfResult result;
    result.labels = LabelField(w, h, Label::uncommitted);
    auto& labels = result.labels;
    if (labels.empty())
        return result;

    std::vector<std::uint32_t> version(labels.size(), 0);
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, LessUrgent> heap;
    const auto push = [&](int x, int y) {
        const auto i = labels.index(x, y);
        const auto s = stability(x, y, labels, potentials, prior);
        heap.push({s.value, labels[i] != Label::uncommitted, static_cast<std::uint32_t>(i), version[i]});
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            push(x, y);

    std::size_t uncommitted = labels.size();
    double energy = 0.0;
    while (!heap.empty()) {
        const HeapEntry top = heap.top();
        heap.pop();
        if (top.version != version[top.site])
            continue;
        if (top.committed && top.stability >= 0.0) {
            // Uncommitted sites always sort ahead of committed ones at equal
            // stability and never have positive stability.
            if (uncommitted != 0)
                throw std::logic_error("hcf_minimize: heap order violated");
            break;
        }

        const int x = static_cast<int>(top.site % static_cast<std::uint32_t>(w));
        const int y = static_cast<int>(top.site / static_cast<std::uint32_t>(w));
        const auto f = local_potentials(x, y, labels, potentials, prior);
        const int best = argmin(f);
        const Label from = labels[top.site];
        const Label to = label_from_slot(best);
        if (from == Label::uncommitted) {
            energy += f[static_cast<std::size_t>(best)];
            --uncommitted;
        } else {
            energy += f[static_cast<std::size_t>(best)] - f[static_cast<std::size_t>(slot(from))];
        }
        labels[top.site] = to;
        ++result.visits;
        if (options.record_trace)
            result.trace.push_back({top.site, from, to, energy});

        ++version[top.site];
        push(x, y);
        for (const auto& n : kSecondOrder) {
            const int nx = x + n.dx;
            const int ny = y + n.dy;
            if (!labels.contains(nx, ny))
                continue;
            ++version[labels.index(nx, ny)];
            push(nx, ny);
        }
    }
    result.energy = total_energy(labels, potentials, prior);
    return result;
}

MapResult brute_force_map(const PotentialTable& potentials, const PriorParams& prior)
{
    const int w = potentials.width();
    const int h = potentials.height();
    const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (n > static_cast<std::size_t>(kBruteForceMaxSites))
        throw std::invalid_argument("brute_force_map: instance has more than 12 sites");

    MapResult best{LabelField(w, h, Label::background), std::numeric_limits<double>::infinity()};
    if (n == 0) {
        best.energy = 0.0;
        return best;
    }
    LabelField current(w, h, Label::background);
    // Odometer over labels with pixel 0 as the most significant digit, so
    // enumeration order is lexicographic and strict improvement keeps the
    // smallest vector among ties.
    while (true) {
        const double e = total_energy(current, potentials, prior);
        if (e < best.energy) {
            best.energy = e;
            best.labels = current;
        }
        std::size_t k = n;
        while (k > 0) {
            --k;
            auto& s = current[k];
            if (s != Label::foreground) {
                s = static_cast<Label>(static_cast<int>(s) + 1);
                break;
            }
            s = Label::background;
            if (k == 0)
                return best;
        }
    }
}

} // namespace shadowseg
