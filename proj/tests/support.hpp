#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "shadowseg/energy.hpp"
#include "shadowseg/likelihood.hpp"

namespace testing_support {

/// Potential table with U1, U2 drawn uniformly from [lo, hi).
inline shadowseg::PotentialTable random_potentials(int w, int h, std::mt19937_64& rng, double lo = 0.0,
                                                   double hi = 10.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    shadowseg::PotentialTable t(w, h);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (auto s : shadowseg::kSegmentLabels)
            t.set(i, s, u(rng), u(rng));
    return t;
}

inline shadowseg::PriorParams random_prior(std::mt19937_64& rng, double lambda2)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double a = u(rng), b = u(rng), c = u(rng);
    const double sum = a + b + c;
    shadowseg::PriorParams p;
    p.eta = {-a / sum, -b / sum, -c / sum};
    p.lambda1 = 10.0 * u(rng);
    p.lambda2 = lambda2;
    return p;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("shadowseg_" + tag + "_" + std::to_string(rd()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace testing_support
