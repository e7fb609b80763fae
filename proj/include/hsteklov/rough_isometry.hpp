#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>

namespace hsteklov {

/// One sampled pair: distance in the source space and between the images.
struct DistancePair {
    double source = 0.0;
    double target = 0.0;
    int a = -1;
    int b = -1;
};

struct RoughFit {
    double c1 = 1.0;
    double c2 = 0.0;
    DistancePair witness; // pair attaining c1
};

/// Fits  d_src / C1 - C2 <= d_tgt <= C1 d_src + C2  over all pairs.
///
/// C1 is the least C >= 1 for which C1 = C2 = C works; C2 is then lowered to
/// the least value compatible with that C1. Both are exact for the sample.
inline RoughFit fitRoughIsometry(std::span<const DistancePair> pairs)
{
    RoughFit fit;
    for (const auto& pr : pairs) {
        const double x = pr.source, y = pr.target;
        // C (x + 1) >= y   and   C^2 + y C - x >= 0.
        const double upper = y / (x + 1.0);
        const double lower = 0.5 * (-y + std::sqrt(y * y + 4.0 * x));
        const double need = std::max(upper, lower);
        if (need > fit.c1) {
            fit.c1 = need;
            fit.witness = pr;
        }
    }
    double c2 = 0.0;
    for (const auto& pr : pairs) {
        c2 = std::max(c2, pr.target - fit.c1 * pr.source);
        c2 = std::max(c2, pr.source / fit.c1 - pr.target);
    }
    fit.c2 = c2;
    return fit;
}

inline bool satisfiesRoughBounds(std::span<const DistancePair> pairs, double c1, double c2, double tol = 1e-9)
{
    return std::all_of(pairs.begin(), pairs.end(), [&](const DistancePair& pr) {
        return pr.source / c1 - c2 <= pr.target + tol && pr.target <= c1 * pr.source + c2 + tol;
    });
}

} // namespace hsteklov
