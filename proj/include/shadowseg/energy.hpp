#pragma once

#include <array>
#include <cstdint>

#include "shadowseg/grid.hpp"
#include "shadowseg/likelihood.hpp"

namespace shadowseg {

/// Gibbs prior of the label field: single-site potentials eta (one per label,
/// lower = more likely) weighted by lambda1, and 8-connected Potts pairs
/// weighted by lambda2 with strength 1/|x - y|^2.
struct PriorParams {
    std::array<double, 3> eta{-1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0};
    double lambda1 = 10.0;
    double lambda2 = 4.0;

    double eta_of(Label s) const { return eta[static_cast<std::size_t>(slot(s))]; }
};

void validate(const PriorParams& prior);

using LabelCounts = std::array<std::int64_t, 3>;

/// 0 for equal labels, 1/dist_sq otherwise. Labels must be committed and
/// dist_sq must be 1 (axial) or 2 (diagonal).
double pair_potential(Label a, Label b, int dist_sq);

/// Objective of a fully committed field: data terms, lambda1-weighted
/// single-site terms and lambda2-weighted pair terms over every unordered
/// 8-connected pair. Throws std::invalid_argument on an uncommitted pixel or
/// a size mismatch.
double total_energy(const LabelField& labels, const PotentialTable& potentials, const PriorParams& prior);

/// Conditional potential of label s at (x, y) given the current neighbours;
/// uncommitted neighbours contribute nothing.
double local_potential(int x, int y, Label s, const LabelField& labels, const PotentialTable& potentials,
                       const PriorParams& prior);

/// All three candidate potentials at once, indexed by slot.
std::array<double, 3> local_potentials(int x, int y, const LabelField& labels, const PotentialTable& potentials,
                                       const PriorParams& prior);

LabelCounts count_labels(const LabelField& labels);

/// eta* = -count / total, then eta <- (1 - alpha) eta + alpha eta*.
/// A zero total leaves the prior unchanged.
PriorParams update_eta(PriorParams prior, const LabelCounts& counts, double alpha);

} // namespace shadowseg
