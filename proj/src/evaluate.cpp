#include "shadowseg/evaluate.hpp"

#include <stdexcept>
#include <string>

namespace shadowseg {

Grid<std::uint8_t> boundary_band(const LabelField& truth, int radius)
{
    Grid<std::uint8_t> band(truth.width(), truth.height(), 0);
    if (radius <= 0)
        return band;
    for (int y = 0; y < truth.height(); ++y) {
        for (int x = 0; x < truth.width(); ++x) {
            const Label s = truth.at(x, y);
            bool edge = false;
            for (int dy = -radius; dy <= radius && !edge; ++dy)
                for (int dx = -radius; dx <= radius && !edge; ++dx)
                    edge = truth.contains(x + dx, y + dy) && truth.at(x + dx, y + dy) != s;
            band.at(x, y) = edge ? 1 : 0;
        }
    }
    return band;
}

EvalReport evaluate(std::span<const LabelField> predicted, std::span<const LabelField> truth, int exclude_radius)
{
    if (predicted.size() != truth.size())
        throw std::invalid_argument("evaluate: " + std::to_string(predicted.size()) + " predicted frames vs " +
                                    std::to_string(truth.size()) + " truth frames");
    EvalReport r;
    for (std::size_t f = 0; f < predicted.size(); ++f) {
        const auto& p = predicted[f];
        const auto& t = truth[f];
        if (!p.same_shape(t))
            throw std::invalid_argument("evaluate: frame " + std::to_string(f) + " differs in size");
        const auto band = boundary_band(t, exclude_radius);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == Label::uncommitted || t[i] == Label::uncommitted)
                throw std::invalid_argument("evaluate: uncommitted label");
            if (band[i]) {
                ++r.excluded;
                continue;
            }
            ++r.confusion[static_cast<std::size_t>(slot(t[i]))][static_cast<std::size_t>(slot(p[i]))];
            ++r.pixels;
        }
    }

    std::int64_t correct = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        std::int64_t truth_k = 0;
        std::int64_t pred_k = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            truth_k += r.confusion[k][j];
            pred_k += r.confusion[j][k];
        }
        const auto tp = r.confusion[k][k];
        correct += tp;
        const bool absent = truth_k == 0 && pred_k == 0;
        r.precision[k] = pred_k > 0 ? static_cast<double>(tp) / static_cast<double>(pred_k) : (absent ? 1.0 : 0.0);
        r.recall[k] = truth_k > 0 ? static_cast<double>(tp) / static_cast<double>(truth_k) : (absent ? 1.0 : 0.0);
    }
    r.accuracy = r.pixels > 0 ? static_cast<double>(correct) / static_cast<double>(r.pixels) : 1.0;
    return r;
}

nlohmann::json to_json(const EvalReport& r)
{
    static constexpr const char* kNames[3] = {"background", "shadow", "foreground"};
    nlohmann::json j;
    j["pixels"] = r.pixels;
    j["excluded"] = r.excluded;
    j["accuracy"] = r.accuracy;
    j["labels"] = {kNames[0], kNames[1], kNames[2]};
    j["confusion"] = r.confusion; // rows: truth, columns: predicted
    for (std::size_t k = 0; k < 3; ++k) {
        j["precision"][kNames[k]] = r.precision[k];
        j["recall"][kNames[k]] = r.recall[k];
    }
    return j;
}

} // namespace shadowseg
