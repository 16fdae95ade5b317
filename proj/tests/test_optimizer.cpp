#include <random>

#include <gtest/gtest.h>

#include "shadowseg/optimizer.hpp"
#include "support.hpp"

using namespace shadowseg;
using testing_support::random_potentials;
using testing_support::random_prior;

namespace {

// 1x1 table whose candidate potentials equal f (no prior contribution).
PotentialTable single_site(double f0, double f1, double f2)
{
    PotentialTable t(1, 1);
    t.set(0, Label::background, f0, 0.0);
    t.set(0, Label::shadow, f1, 0.0);
    t.set(0, Label::foreground, f2, 0.0);
    return t;
}

PriorParams no_prior()
{
    PriorParams p;
    p.lambda1 = 0.0;
    p.lambda2 = 0.0;
    return p;
}

bool is_local_minimum(const LabelField& labels, const PotentialTable& t, const PriorParams& p, double tol)
{
    for (int y = 0; y < labels.height(); ++y)
        for (int x = 0; x < labels.width(); ++x) {
            const double cur = local_potential(x, y, labels.at(x, y), labels, t, p);
            for (auto s : kSegmentLabels)
                if (local_potential(x, y, s, labels, t, p) < cur - tol)
                    return false;
        }
    return true;
}

} // namespace

TEST(Stability, UncommittedExample)
{
    const auto t = single_site(5, 3, 7);
    const LabelField f(1, 1, Label::uncommitted);
    const auto s = stability(0, 0, f, t, no_prior());
    EXPECT_EQ(s.best, Label::shadow);
    EXPECT_DOUBLE_EQ(s.value, -2.0);
}

TEST(Stability, CommittedExample)
{
    const auto t = single_site(5, 3, 7);
    const LabelField f(1, 1, Label::shadow);
    EXPECT_DOUBLE_EQ(stability(0, 0, f, t, no_prior()).value, 2.0);
    const LabelField g(1, 1, Label::foreground);
    EXPECT_DOUBLE_EQ(stability(0, 0, g, t, no_prior()).value, -4.0);
}

TEST(Stability, TieGivesZeroAndSmallerLabel)
{
    const auto t = single_site(4, 4, 9);
    const LabelField f(1, 1, Label::uncommitted);
    const auto s = stability(0, 0, f, t, no_prior());
    EXPECT_DOUBLE_EQ(s.value, 0.0);
    EXPECT_EQ(s.best, Label::background);
}

TEST(Hcf, SingleSite)
{
    const auto t = single_site(5, 3, 7);
    const auto r = hcf_minimize(t, no_prior());
    EXPECT_EQ(r.labels[0], Label::shadow);
    EXPECT_DOUBLE_EQ(r.energy, 3.0);
    EXPECT_EQ(r.visits, 1u);
}

TEST(Hcf, EmptyField)
{
    const auto r = hcf_minimize(PotentialTable(0, 0), {});
    EXPECT_TRUE(r.labels.empty());
    EXPECT_EQ(r.energy, 0.0);
}

TEST(Hcf, SeparableEqualsPerPixelArgmin)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = random_potentials(16, 12, rng);
        const auto p = random_prior(rng, 0.0);
        const auto r = hcf_minimize(t, p);
        for (std::size_t i = 0; i < t.size(); ++i) {
            int best = 0;
            double fb = t.data_term(i, Label::background) + p.lambda1 * p.eta[0];
            for (int k = 1; k < 3; ++k) {
                const double f = t.data_term(i, label_from_slot(k)) + p.lambda1 * p.eta[static_cast<std::size_t>(k)];
                if (f < fb) {
                    fb = f;
                    best = k;
                }
            }
            EXPECT_EQ(r.labels[i], label_from_slot(best));
        }
    }
}

TEST(Hcf, LocalMinimumAndExactEnergy)
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const auto t = random_potentials(10, 8, rng);
        const auto p = random_prior(rng, 0.5 + 4.0 * (trial % 5));
        const auto r = hcf_minimize(t, p, {.record_trace = true});
        ASSERT_TRUE(fully_committed(r.labels));
        EXPECT_TRUE(is_local_minimum(r.labels, t, p, 1e-9));
        EXPECT_NEAR(r.energy, total_energy(r.labels, t, p), 1e-9);
        ASSERT_FALSE(r.trace.empty());
        EXPECT_NEAR(r.trace.back().energy, r.energy, 1e-8);
        EXPECT_EQ(r.trace.size(), r.visits);
    }
}

TEST(Hcf, RelabelsStrictlyDecreaseObjective)
{
    std::mt19937_64 rng(23);
    std::size_t relabels = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto t = random_potentials(12, 12, rng);
        const auto p = random_prior(rng, 6.0);
        const auto r = hcf_minimize(t, p, {.record_trace = true});
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            if (r.trace[i].from == Label::uncommitted)
                continue;
            ++relabels;
            EXPECT_LT(r.trace[i].energy, r.trace[i - 1].energy);
            EXPECT_NE(r.trace[i].from, r.trace[i].to);
        }
    }
    EXPECT_GT(relabels, 0u) << "instances never exercised the relabel path";
}

TEST(Hcf, Deterministic)
{
    std::mt19937_64 rng(24);
    const auto t = random_potentials(20, 15, rng);
    const auto p = random_prior(rng, 3.0);
    const auto a = hcf_minimize(t, p, {.record_trace = true});
    const auto b = hcf_minimize(t, p, {.record_trace = true});
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_EQ(a.energy, b.energy);
    EXPECT_EQ(a.visits, b.visits);
}

TEST(Hcf, ScaleInvariance)
{
    std::mt19937_64 rng(25);
    const auto t = random_potentials(9, 9, rng);
    const auto p = random_prior(rng, 2.0);
    PotentialTable scaled(9, 9);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (auto s : kSegmentLabels)
            scaled.set(i, s, 4.0 * t.intensity(s)[i], 4.0 * t.edge(s)[i]);
    auto ps = p;
    ps.lambda1 *= 4.0;
    ps.lambda2 *= 4.0;
    EXPECT_EQ(hcf_minimize(t, p).labels, hcf_minimize(scaled, ps).labels);
}

TEST(BruteForce, SingleSite)
{
    const auto r = brute_force_map(single_site(5, 3, 7), no_prior());
    EXPECT_EQ(r.labels[0], Label::shadow);
    EXPECT_DOUBLE_EQ(r.energy, 3.0);
}

TEST(BruteForce, StrongCouplingSharesBestSummedLabel)
{
    PotentialTable t(2, 1);
    t.set(0, Label::background, 1.0, 0.0);
    t.set(0, Label::shadow, 2.0, 0.0);
    t.set(0, Label::foreground, 9.0, 0.0);
    t.set(1, Label::background, 8.0, 0.0);
    t.set(1, Label::shadow, 2.5, 0.0);
    t.set(1, Label::foreground, 0.0, 0.0);
    PriorParams p = no_prior();
    p.lambda2 = 1e6;
    // Sums: background 9, shadow 4.5, foreground 9.
    const auto r = brute_force_map(t, p);
    EXPECT_EQ(r.labels[0], Label::shadow);
    EXPECT_EQ(r.labels[1], Label::shadow);
    EXPECT_DOUBLE_EQ(r.energy, 4.5);
}

TEST(BruteForce, TiesResolveToLexicographicallySmallest)
{
    const auto r = brute_force_map(single_site(1, 1, 1), no_prior());
    EXPECT_EQ(r.labels[0], Label::background);
}

TEST(BruteForce, RejectsLargeInstances)
{
    EXPECT_THROW(brute_force_map(PotentialTable(13, 1), {}), std::invalid_argument);
}

TEST(BruteForce, NeverWorseThanHcf)
{
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = random_potentials(3, 3, rng);
        const auto p = random_prior(rng, 2.0);
        const auto exact = brute_force_map(t, p);
        const auto hcf = hcf_minimize(t, p);
        EXPECT_LE(exact.energy, hcf.energy + 1e-12);
        EXPECT_NEAR(exact.energy, total_energy(exact.labels, t, p), 1e-12);
    }
}
