#pragma once

#include <array>
#include <cstdint>
#include <span>

#include <json.hpp>

#include "shadowseg/grid.hpp"

namespace shadowseg {

struct EvalReport {
    /// confusion[truth][predicted], indexed by label slot.
    std::array<std::array<std::int64_t, 3>, 3> confusion{};
    std::array<double, 3> precision{};
    std::array<double, 3> recall{};
    double accuracy = 0.0;
    std::int64_t pixels = 0;   // pixels scored
    std::int64_t excluded = 0; // pixels skipped by the boundary band
};

/// Pixels within Chebyshev distance `radius` of a ground-truth label change
/// (on either side). radius 0 marks nothing.
Grid<std::uint8_t> boundary_band(const LabelField& truth, int radius);

/// Accumulates the confusion matrix over matched frame pairs, optionally
/// ignoring the boundary band of each truth frame. A ratio with an empty
/// denominator is 1 when the class is absent from both prediction and truth,
/// else 0. Throws std::invalid_argument on length or shape mismatch.
EvalReport evaluate(std::span<const LabelField> predicted, std::span<const LabelField> truth,
                    int exclude_radius = 0);

nlohmann::json to_json(const EvalReport& report);

} // namespace shadowseg
