#include "shadowseg/energy.hpp"

#include <stdexcept>

namespace shadowseg {

void validate(const PriorParams& prior)
{
    for (double e : prior.eta)
        if (e < -1.0 || e > 0.0)
            throw std::invalid_argument("prior eta values must lie in [-1, 0]");
    if (prior.lambda1 < 0.0 || prior.lambda2 < 0.0)
        throw std::invalid_argument("prior weights lambda1, lambda2 must be non-negative");
}

double pair_potential(Label a, Label b, int dist_sq)
{
    if (a == Label::uncommitted || b == Label::uncommitted)
        throw std::invalid_argument("pair_potential: labels must be committed");
    if (dist_sq != 1 && dist_sq != 2)
        throw std::invalid_argument("pair_potential: dist_sq must be 1 or 2");
    return a == b ? 0.0 : 1.0 / dist_sq;
}

double total_energy(const LabelField& labels, const PotentialTable& potentials, const PriorParams& prior)
{
    if (labels.width() != potentials.width() || labels.height() != potentials.height())
        throw std::invalid_argument("total_energy: label field and potentials differ in size");
    double unary = 0.0;
    double pairs = 0.0;
    for (int y = 0; y < labels.height(); ++y) {
        for (int x = 0; x < labels.width(); ++x) {
            const Label s = labels.at(x, y);
            if (s == Label::uncommitted)
                throw std::invalid_argument("total_energy: label field has uncommitted pixels");
            unary += potentials.data_term(labels.index(x, y), s) + prior.lambda1 * prior.eta_of(s);
            for (const auto& n : kForwardPairs) {
                const int nx = x + n.dx;
                const int ny = y + n.dy;
                if (!labels.contains(nx, ny))
                    continue;
                const Label t = labels.at(nx, ny);
                if (t != s && t != Label::uncommitted)
                    pairs += 1.0 / n.dist_sq;
            }
        }
    }
    return unary + prior.lambda2 * pairs;
}

std::array<double, 3> local_potentials(int x, int y, const LabelField& labels, const PotentialTable& potentials,
                                       const PriorParams& prior)
{
    // Neighbour disagreement mass per candidate: total committed mass minus
    // the mass already carrying that label.
    std::array<double, 3> same{};
    double committed = 0.0;
    for (const auto& n : kSecondOrder) {
        const int nx = x + n.dx;
        const int ny = y + n.dy;
        if (!labels.contains(nx, ny))
            continue;
        const Label t = labels.at(nx, ny);
        if (t == Label::uncommitted)
            continue;
        const double wgt = 1.0 / n.dist_sq;
        committed += wgt;
        same[static_cast<std::size_t>(slot(t))] += wgt;
    }
    const auto i = labels.index(x, y);
    std::array<double, 3> f{};
    for (int k = 0; k < 3; ++k) {
        const Label s = label_from_slot(k);
        const auto kk = static_cast<std::size_t>(k);
        f[kk] = potentials.data_term(i, s) + prior.lambda1 * prior.eta[kk] +
                prior.lambda2 * (committed - same[kk]);
    }
    return f;
}

double local_potential(int x, int y, Label s, const LabelField& labels, const PotentialTable& potentials,
                       const PriorParams& prior)
{
    if (s == Label::uncommitted)
        throw std::invalid_argument("local_potential: candidate label must be committed");
    return local_potentials(x, y, labels, potentials, prior)[static_cast<std::size_t>(slot(s))];
}

LabelCounts count_labels(const LabelField& labels)
{
    LabelCounts counts{};
    for (Label s : labels.values())
        if (s != Label::uncommitted)
            ++counts[static_cast<std::size_t>(slot(s))];
    return counts;
}

PriorParams update_eta(PriorParams prior, const LabelCounts& counts, double alpha)
{
    const std::int64_t total = counts[0] + counts[1] + counts[2];
    if (total <= 0)
        return prior;
    for (std::size_t k = 0; k < 3; ++k) {
        const double target = -static_cast<double>(counts[k]) / static_cast<double>(total);
        prior.eta[k] = (1.0 - alpha) * prior.eta[k] + alpha * target;
    }
    return prior;
}

} // namespace shadowseg
