#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hsteklov/hypgeo.hpp"

namespace hsteklov {

/// Quantized-grid lookup of disk points up to a hyperbolic tolerance.
///
/// Points are bucketed on a square grid of side `cell`; a lookup probes every
/// cell that can hold a point within `tol` (hyperbolic distance is at least
/// twice the Euclidean one, so tol/2 bounds the Euclidean reach).
class PointIndex {
public:
    explicit PointIndex(double cell = 1e-7, double tol = 1e-6)
        : cell_(cell), tol_(tol), reach_(static_cast<int>(std::ceil(0.5 * tol / cell)))
    {
    }

    /// Index of a stored point within tolerance of `p`, or -1.
    int find(const DiskPoint& p) const
    {
        const auto [cx, cy] = cellOf(p);
        int best = -1;
        double bestDist = tol_;
        for (int dx = -reach_; dx <= reach_; ++dx) {
            for (int dy = -reach_; dy <= reach_; ++dy) {
                auto it = cells_.find(key(cx + dx, cy + dy));
                if (it == cells_.end())
                    continue;
                for (int id : it->second) {
                    const double d = hypDistance(points_[id], p);
                    if (d < bestDist) {
                        bestDist = d;
                        best = id;
                    }
                }
            }
        }
        return best;
    }

    /// Returns the existing index for `p` or inserts it.
    int findOrInsert(const DiskPoint& p, bool* inserted = nullptr)
    {
        const int found = find(p);
        if (inserted)
            *inserted = found < 0;
        if (found >= 0)
            return found;
        const int id = static_cast<int>(points_.size());
        points_.push_back(p);
        const auto [cx, cy] = cellOf(p);
        cells_[key(cx, cy)].push_back(id);
        return id;
    }

    const DiskPoint& point(int id) const { return points_[id]; }
    std::size_t size() const { return points_.size(); }

private:
    std::pair<std::int64_t, std::int64_t> cellOf(const DiskPoint& p) const
    {
        return {static_cast<std::int64_t>(std::floor(p.x() / cell_)),
                static_cast<std::int64_t>(std::floor(p.y() / cell_))};
    }

    static std::uint64_t key(std::int64_t x, std::int64_t y)
    {
        return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
    }

    double cell_;
    double tol_;
    int reach_;
    std::vector<DiskPoint> points_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

} // namespace hsteklov
