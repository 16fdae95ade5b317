#pragma once

#include <cstddef>
#include <vector>

#include "shadowseg/energy.hpp"
#include "shadowseg/grid.hpp"
#include "shadowseg/likelihood.hpp"

namespace shadowseg {

/// Signed confidence of a site.
///  - uncommitted: -(second best f - best f), never positive
///  - committed:   min over other labels of f(other) - f(current); negative
///                 iff some relabel lowers the objective
/// best is the argmin of f over committed labels, ties to the smaller label.
struct Stability {
    double value = 0.0;
    Label best = Label::background;
};

Stability stability(int x, int y, const LabelField& labels, const PotentialTable& potentials,
                    const PriorParams& prior);

/// One HCF site change. energy is the augmented objective after the change:
/// data and single-site terms of committed sites plus pair terms between
/// committed sites.
struct HcfStep {
    std::size_t site = 0;
    Label from = Label::uncommitted;
    Label to = Label::uncommitted;
    double energy = 0.0;
};

struct HcfOptions {
    bool record_trace = false;
};

struct HcfResult {
    LabelField labels;
    double energy = 0.0;      // total_energy of the final field
    std::size_t visits = 0;   // commits + relabels
    std::vector<HcfStep> trace;
};

/// Highest Confidence First. Sites start uncommitted; the least stable site
/// (ties: uncommitted first, then raster order) is repeatedly committed or
/// relabelled to its best label, and only that site and its eight
/// neighbours are re-scored. Stops once every site is committed and no
/// stability is negative, so the result is a single-site local minimum.
HcfResult hcf_minimize(const PotentialTable& potentials, const PriorParams& prior, const HcfOptions& options = {});

struct MapResult {
    LabelField labels;
    double energy = 0.0;
};

inline constexpr int kBruteForceMaxSites = 12;

/// Exact minimiser by enumeration of all 3^n labelings (n <= 12), ties to the
/// lexicographically smallest raster-order label vector.
MapResult brute_force_map(const PotentialTable& potentials, const PriorParams& prior);

} // namespace shadowseg
