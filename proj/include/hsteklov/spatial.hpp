#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "hsteklov/hypgeo.hpp"

namespace hsteklov {

/// Bucket grid over Euclidean disk coordinates. Hyperbolic distance is at
/// least twice the Euclidean one, so a hyperbolic query radius R only needs
/// cells within Euclidean reach R/2.
class DiskGrid {
public:
    explicit DiskGrid(double cell) : cell_(cell) {}

    void insert(const DiskPoint& p, int id) { cells_[key(cellOf(p.x()), cellOf(p.y()))].push_back(id); }

    /// Calls `visit(id)` for every stored id whose point could be within
    /// hyperbolic distance `radius` of `p`. Stops early if `visit` returns true.
    template <class Visit>
    bool forNear(const DiskPoint& p, double radius, Visit&& visit) const
    {
        const int reach = static_cast<int>(std::ceil(0.5 * radius / cell_));
        const std::int64_t cx = cellOf(p.x()), cy = cellOf(p.y());
        for (std::int64_t dx = -reach; dx <= reach; ++dx) {
            for (std::int64_t dy = -reach; dy <= reach; ++dy) {
                auto it = cells_.find(key(cx + dx, cy + dy));
                if (it == cells_.end())
                    continue;
                for (int id : it->second)
                    if (visit(id))
                        return true;
            }
        }
        return false;
    }

private:
    std::int64_t cellOf(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
    static std::uint64_t key(std::int64_t x, std::int64_t y)
    {
        return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
    }

    double cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

namespace detail {

inline double simpsonStep(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                          double m, double fm, double whole, double tol, int depth)
{
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpsonStep(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpsonStep(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol)
{
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpsonStep(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

} // namespace hsteklov
