#pragma once

// Epsilon-discretization of a domain as a graph with boundary, the map from
// its vertices back to the subgraph, and empirical rough-isometry constants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hsteklov/domain.hpp"
#include "hsteklov/graph.hpp"
#include "hsteklov/rough_isometry.hpp"
#include "hsteklov/spatial.hpp"

namespace hsteklov {

inline constexpr double kCandidateDensity = 10.0; // candidates per epsilon
inline constexpr double kCollarDepth = 4.0;       // in units of epsilon
inline constexpr double kEdgeReach = 3.0;         // in units of epsilon
inline constexpr std::size_t kAllPairsCap = 20'000'000;

inline double epsilonMax(const ShrunkenGeometry& g) { return 0.25 * g.rho(); }
inline double epsilonMax(const DomainModel& D) { return epsilonMax(D.geometry); }

namespace detail {

inline std::pair<std::int64_t, std::int64_t> quantized(const DiskPoint& p)
{
    return {std::llround(p.x() * 1e9), std::llround(p.y() * 1e9)};
}

/// Indices sorted by quantized (x, y).
inline std::vector<int> lexicographicOrder(const std::vector<DiskPoint>& pts)
{
    std::vector<int> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return quantized(pts[a]) < quantized(pts[b]); });
    return order;
}

/// Greedy selection in the given order; returns chosen candidate indices.
inline std::vector<int> greedySeparated(const std::vector<DiskPoint>& pts, const std::vector<int>& order, double eps)
{
    DiskGrid chosen(eps);
    std::vector<int> out;
    for (int i : order) {
        const bool covered =
            chosen.forNear(pts[i], eps, [&](int j) { return hypDistance(pts[i], pts[j]) <= eps; });
        if (!covered) {
            chosen.insert(pts[i], i);
            out.push_back(i);
        }
    }
    return out;
}

} // namespace detail

/// Greedy maximal eps-separated subset, scanning candidates in lexicographic
/// order of their quantized coordinates.
inline std::vector<DiskPoint> maximalSeparatedSubset(const std::vector<DiskPoint>& candidates, double eps)
{
    if (candidates.empty())
        throw Error(ErrorKind::InvalidArgument, "no candidates to select from");
    if (!(eps > 0.0))
        throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    std::vector<DiskPoint> out;
    for (int i : detail::greedySeparated(candidates, detail::lexicographicOrder(candidates), eps))
        out.push_back(candidates[i]);
    return out;
}

/// Dense samples of the boundary curves with a proximity index.
class BoundarySampler {
public:
    struct Sample {
        DiskPoint point;
        int curve = -1;
        int primitive = -1;
        double u = 0.0;
    };

    BoundarySampler(const DomainModel& D, double spacing, double cell) : grid_(cell)
    {
        for (int c = 0; c < static_cast<int>(D.boundary.size()); ++c) {
            const auto& prims = D.boundary[c].primitives;
            for (int k = 0; k < static_cast<int>(prims.size()); ++k) {
                const auto& prim = prims[k];
                const int steps = std::max(1, static_cast<int>(std::ceil(prim.length / spacing)));
                // Closed circles skip u = 1; open primitives skip their end,
                // which is the start of the next primitive.
                for (int s = 0; s < steps; ++s) {
                    const double u = static_cast<double>(s) / steps;
                    samples_.push_back({prim.at(u), c, k, u});
                    grid_.insert(samples_.back().point, static_cast<int>(samples_.size()) - 1);
                }
            }
        }
    }

    const std::vector<Sample>& samples() const { return samples_; }

    bool within(const DiskPoint& z, double r) const
    {
        return grid_.forNear(z, r, [&](int i) { return hypDistance(z, samples_[i].point) <= r; });
    }

    /// Distance to the nearest sample, capped at `cap`.
    double distance(const DiskPoint& z, double cap) const
    {
        double best = cap;
        grid_.forNear(z, cap, [&](int i) {
            best = std::min(best, hypDistance(z, samples_[i].point));
            return false;
        });
        return best;
    }

private:
    std::vector<Sample> samples_;
    DiskGrid grid_;
};

struct BoundaryVertexRef {
    int curve = -1;
    int primitive = -1;
    double u = 0.0;
};

/// Vertex layout: collar copies [0, copyCount) with copy i paired to boundary
/// vertex i, then bulk interior vertices, then the boundary vertices V_Sigma.
struct DiscretizationGraph {
    double epsilon = 0.0;
    std::vector<DiskPoint> positions;
    int copyCount = 0;
    int bulkCount = 0;
    int boundaryCount = 0;
    std::vector<BoundaryVertexRef> boundaryRefs; // per V_Sigma vertex
    std::vector<double> copyDepths;              // collar depth used per copy
    GraphWithBoundary graph;

    int interiorCount() const { return copyCount + bulkCount; }
    int size() const { return interiorCount() + boundaryCount; }
    int boundaryVertex(int i) const { return interiorCount() + i; }
    int copyOf(int boundaryIndex) const { return boundaryIndex; }
    std::vector<DiskPoint> boundaryPoints() const
    {
        return {positions.begin() + interiorCount(), positions.end()};
    }
};

namespace detail {

/// Unit direction (angle in the frame centered at the point) of travel along
/// a primitive at parameter u.
inline double tangentAngle(const BoundaryPrimitive& prim, double u)
{
    const double h = 1e-4;
    double u0 = u - h, u1 = u + h;
    if (prim.kind != PrimitiveKind::Circle) {
        u0 = std::max(0.0, u0);
        u1 = std::min(1.0, u1);
    }
    const DiskPoint at = prim.at(u);
    const HypIsometry local = HypIsometry::toOrigin(at);
    return std::arg(local.apply(prim.at(u1).z()) - local.apply(prim.at(u0).z()));
}

} // namespace detail

inline DiscretizationGraph buildDiscretization(const DomainModel& D, double eps)
{
    if (!(eps > 0.0))
        throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    if (eps > epsilonMax(D) * (1.0 + 1e-12))
        throw Error(ErrorKind::InvalidArgument, "epsilon " + std::to_string(eps) + " exceeds eps_max " +
                                                    std::to_string(epsilonMax(D)));
    if (D.boundary.empty() || D.pieces.empty())
        throw Error(ErrorKind::Construction, "degenerate domain");

    const double spacing = eps / kCandidateDensity;
    const double collar = kCollarDepth * eps;
    const double reach = kEdgeReach * eps;
    const BoundarySampler sampler(D, spacing, 2.0 * eps);
    const DomainLocator locator(D);

    DiscretizationGraph dg;
    dg.epsilon = eps;

    // V_Sigma.
    std::vector<DiskPoint> boundaryCandidates;
    for (const auto& s : sampler.samples())
        boundaryCandidates.push_back(s.point);
    const auto boundaryChosen =
        detail::greedySeparated(boundaryCandidates, detail::lexicographicOrder(boundaryCandidates), eps);
    std::vector<DiskPoint> sigma;
    for (int i : boundaryChosen) {
        const auto& s = sampler.samples()[i];
        sigma.push_back(s.point);
        dg.boundaryRefs.push_back({s.curve, s.primitive, s.u});
    }

    // Collar copies at distance 4 eps along the inward normal. Near acute
    // corners the normal ray leaves N at once, so the ray is tilted towards
    // the tangent (up to 75 degrees) before falling back to shallower depths.
    std::vector<DiskPoint> copies;
    auto rayInside = [&](const DiskPoint& from, const DiskPoint& to) {
        const GeodesicSegment seg{from, to};
        for (int s = 1; s <= 8; ++s)
            if (!locator.contains(pointAlongSegment(seg, s / 8.0)))
                return false;
        return true;
    };
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto& ref = dg.boundaryRefs[i];
        const auto& prim = D.boundary[ref.curve].primitives[ref.primitive];
        const double normal = detail::tangentAngle(prim, ref.u) + 0.5 * std::numbers::pi;
        double depth = 0.0;
        DiskPoint copy = sigma[i];
        for (double f = kCollarDepth; f >= 1.0 && depth == 0.0; f -= 1.0) {
            for (int j = 0; j <= 10 && depth == 0.0; ++j) {
                const double tilt = (j % 2 == 1 ? 1.0 : -1.0) * ((j + 1) / 2) * std::numbers::pi / 12.0;
                const DiskPoint cand = pointAtDistance(sigma[i], normal + tilt, f * eps);
                if (rayInside(sigma[i], cand)) {
                    depth = f * eps;
                    copy = cand;
                }
            }
        }
        if (depth == 0.0)
            throw Error(ErrorKind::Construction, "no collar room at boundary vertex " + std::to_string(i));
        copies.push_back(copy);
        dg.copyDepths.push_back(depth);
    }

    // Bulk interior: per-piece local grids, minus the collar and the balls.
    std::vector<DiskPoint> bulkCandidates;
    const double step = 0.5 * spacing; // Euclidean step near the local origin
    for (int pi = 0; pi < static_cast<int>(D.pieces.size()); ++pi) {
        const auto poly = D.polygon(pi);
        Complex centroid{0.0, 0.0};
        for (const auto& v : poly)
            centroid += v.z();
        centroid /= static_cast<double>(poly.size());
        const HypIsometry toLocal = HypIsometry::toOrigin(DiskPoint(centroid));
        const HypIsometry fromLocal = toLocal.inverse();
        double x0 = 1, x1 = -1, y0 = 1, y1 = -1;
        for (const auto& v : poly) {
            const Complex l = toLocal.apply(v.z());
            x0 = std::min(x0, l.real()); x1 = std::max(x1, l.real());
            y0 = std::min(y0, l.imag()); y1 = std::max(y1, l.imag());
        }
        for (double x = std::floor(x0 / step) * step; x <= x1; x += step) {
            for (double y = std::floor(y0 / step) * step; y <= y1; y += step) {
                const DiskPoint z(fromLocal.apply({x, y}));
                if (!locator.inPiece(pi, z) || sampler.within(z, collar) || locator.inRemovedBall(z))
                    continue;
                bulkCandidates.push_back(z);
            }
        }
    }
    std::vector<DiskPoint> bulk;
    if (!bulkCandidates.empty())
        for (int i : detail::greedySeparated(bulkCandidates, detail::lexicographicOrder(bulkCandidates), eps))
            bulk.push_back(bulkCandidates[i]);

    dg.copyCount = static_cast<int>(copies.size());
    dg.bulkCount = static_cast<int>(bulk.size());
    dg.boundaryCount = static_cast<int>(sigma.size());
    dg.positions = copies;
    dg.positions.insert(dg.positions.end(), bulk.begin(), bulk.end());
    dg.positions.insert(dg.positions.end(), sigma.begin(), sigma.end());

    // Edges at distance <= 3 eps whose segment stays in N. Segments from a
    // point farther than 3 eps from Sigma stay in N automatically; otherwise
    // sample the segment and allow excursions shallower than `slack`, which
    // keeps chords of the boundary circles but rejects jumps across the
    // lambda-wide gaps between unconnected triangles.
    const double slack = std::min(0.5 * eps, 0.25 * D.geometry.lambda);
    const int n = dg.size();
    std::vector<char> deep(n, 0);
    for (int v = 0; v < n; ++v)
        deep[v] = !sampler.within(dg.positions[v], reach + spacing);
    auto segmentInside = [&](const DiskPoint& a, const DiskPoint& b) {
        const GeodesicSegment seg{a, b};
        const int m = std::max(2, static_cast<int>(std::ceil(seg.length() / (0.5 * slack))));
        for (int s = 1; s < m; ++s) {
            const DiskPoint z = pointAlongSegment(seg, static_cast<double>(s) / m);
            if (!locator.contains(z) && !sampler.within(z, slack))
                return false;
        }
        return true;
    };
    DiskGrid vertexGrid(1.5 * eps);
    for (int v = 0; v < n; ++v)
        vertexGrid.insert(dg.positions[v], v);
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        vertexGrid.forNear(dg.positions[v], reach, [&](int w) {
            if (w <= v || hypDistance(dg.positions[v], dg.positions[w]) > reach)
                return false;
            if (deep[v] || deep[w] || segmentInside(dg.positions[v], dg.positions[w]))
                edges.emplace_back(v, w);
            return false;
        });
    }
    for (int i = 0; i < dg.boundaryCount; ++i)
        edges.emplace_back(dg.copyOf(i), dg.boundaryVertex(i));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    try {
        dg.graph = GraphWithBoundary(dg.interiorCount(), dg.boundaryCount, std::move(edges));
    } catch (const Error& e) {
        throw Error(ErrorKind::Construction, std::string("epsilon too large (disconnection): ") + e.what());
    }
    return dg;
}

/// The map phi: discretization vertices -> local vertices of G.
inline std::vector<int> cobblestoneMap(const DiscretizationGraph& dg, const DomainModel& D, const GraphWithBoundary& G)
{
    if (static_cast<int>(D.hosts.size()) != G.size())
        throw Error(ErrorKind::Construction, "domain was not built from this subgraph");
    const DomainLocator locator(D);
    std::vector<int> phi(dg.size(), -1);

    // Fixed interior choice for a boundary vertex: its smallest interior neighbor.
    auto interiorNeighbor = [&](int local) {
        for (int w : G.neighbors(local))
            if (!G.isBoundary(w))
                return w;
        throw Error(ErrorKind::Construction, "boundary vertex " + std::to_string(G.hostId(local)) +
                                                 " has no interior neighbor");
    };
    // Nearest boundary-vertex triangle, by distance to its sides.
    auto nearestBoundaryTriangle = [&](const DiskPoint& z) {
        int best = -1;
        double bestDist = 1e300;
        for (int l = G.interiorCount(); l < G.size(); ++l) {
            const HypTriangle& tri = D.shrunk[l];
            double d = tri.contains(z) ? 0.0 : 1e300;
            for (int s = 0; s < 3; ++s)
                d = std::min(d, distanceToSegment(z, tri.sideSegment(s)));
            if (d < bestDist) {
                bestDist = d;
                best = l;
            }
        }
        return best;
    };

    for (int i = 0; i < dg.boundaryCount; ++i) {
        const auto& ref = dg.boundaryRefs[i];
        const auto& prim = D.boundary[ref.curve].primitives[ref.primitive];
        int target = -1;
        if (prim.kind == PrimitiveKind::Circle) {
            target = G.localIndex(prim.ballHost);
        } else if (prim.kind == PrimitiveKind::Segment && D.pieces[prim.piece].kind == PieceKind::Triangle) {
            target = G.localIndex(D.pieces[prim.piece].hosts[0]);
        } else {
            target = nearestBoundaryTriangle(dg.positions[dg.boundaryVertex(i)]);
        }
        if (target < 0 || !G.isBoundary(target))
            throw Error(ErrorKind::Construction, "boundary vertex " + std::to_string(i) + " does not map into B");
        phi[dg.boundaryVertex(i)] = target;
    }

    for (int v = 0; v < dg.interiorCount(); ++v) {
        const DiskPoint& z = dg.positions[v];
        const int pi = locator.nearestPiece(z);
        if (pi < 0)
            throw Error(ErrorKind::Construction, "unclassifiable discretization vertex " + std::to_string(v));
        const Piece& pc = D.pieces[pi];
        int target = -1;
        switch (pc.kind) {
        case PieceKind::Triangle: {
            const int l = G.localIndex(pc.hosts[0]);
            target = G.isBoundary(l) ? interiorNeighbor(l) : l;
            break;
        }
        case PieceKind::Quadrilateral: {
            const int a = G.localIndex(pc.hosts[0]), b = G.localIndex(pc.hosts[1]);
            target = !G.isBoundary(a) ? a : b;
            break;
        }
        case PieceKind::CycleGon: {
            std::vector<int> hosts(pc.hosts);
            std::sort(hosts.begin(), hosts.end());
            for (int h : hosts) {
                const int l = G.localIndex(h);
                if (!G.isBoundary(l)) {
                    target = l;
                    break;
                }
            }
            break;
        }
        }
        if (target < 0 || G.isBoundary(target))
            throw Error(ErrorKind::Construction, "interior discretization vertex " + std::to_string(v) +
                                                     " does not map into the interior");
        phi[v] = target;
    }
    return phi;
}

struct WitnessPair {
    int source = -1;
    int target = -1;
    int sourceDistance = 0;
    int targetDistance = 0;
};

struct RoughIsometryReport {
    double c1 = 1.0;
    double c2 = 0.0;
    double c3 = 0.0;
    /// Constants refitted on boundary-vertex pairs only.
    double boundaryC1 = 1.0;
    double boundaryC2 = 0.0;
    bool boundaryToBoundary = true; // phi(V_Sigma) inside B
    bool boundaryOnto = true;       // phi(V_Sigma) covers B
    bool surjective = true;
    bool sampled = false;
    std::size_t pairsChecked = 0;
    std::vector<WitnessPair> witnessPairs; // pair attaining c1, then the one attaining c2
};

struct RoughIsometryOptions {
    std::size_t pairCap = kAllPairsCap;
    bool allowSampling = true;
    std::uint64_t seed = 1;
};

namespace detail {

/// Distinct (source, target) distance pairs with one witness each.
class PairCollector {
public:
    void add(int a, int b, int u, int v)
    {
        ++count_;
        witness_.try_emplace({a, b}, WitnessPair{u, v, a, b});
    }
    std::size_t count() const { return count_; }

    std::vector<DistancePair> pairs() const
    {
        std::vector<DistancePair> out;
        for (const auto& [key, w] : witness_)
            out.push_back({static_cast<double>(key.first), static_cast<double>(key.second), w.source, w.target});
        return out;
    }
    const WitnessPair& witness(int a, int b) const { return witness_.at({a, b}); }

private:
    std::size_t count_ = 0;
    std::map<std::pair<int, int>, WitnessPair> witness_;
};

} // namespace detail

/// Smallest constants with  d_src / C1 - C2 <= d_tgt(phi, phi) <= C1 d_src + C2
/// (see fitRoughIsometry) and C3 = max distance from a target vertex to the
/// image. All source pairs are used when there are at most `pairCap`;
/// otherwise BFS sources are sampled with a seeded generator.
inline RoughIsometryReport roughIsometryConstants(const std::vector<int>& phi, const GraphWithBoundary& source,
                                                  const GraphWithBoundary& target, RoughIsometryOptions opts = {})
{
    const int ns = source.size(), nt = target.size();
    if (static_cast<int>(phi.size()) != ns)
        throw Error(ErrorKind::InvalidArgument, "map is not total on the source graph");
    for (int w : phi)
        if (w < 0 || w >= nt)
            throw Error(ErrorKind::InvalidArgument, "map sends a vertex outside the target graph");

    RoughIsometryReport rep;
    const auto targetDist = allPairsDistances(target.adjacency());

    std::vector<int> sources(ns);
    std::iota(sources.begin(), sources.end(), 0);
    const std::size_t totalPairs = static_cast<std::size_t>(ns) * (ns - 1) / 2;
    if (totalPairs > opts.pairCap) {
        if (!opts.allowSampling)
            throw Error(ErrorKind::InvalidArgument, "pair cap exceeded and sampling is disabled");
        rep.sampled = true;
        const std::size_t keep = std::max<std::size_t>(1, opts.pairCap / ns);
        std::mt19937_64 rng(opts.seed);
        std::shuffle(sources.begin(), sources.end(), rng);
        sources.resize(keep);
        // Boundary vertices always act as sources so the restricted check is exhaustive.
        for (int v = source.interiorCount(); v < ns; ++v)
            sources.push_back(v);
        std::sort(sources.begin(), sources.end());
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    }

    detail::PairCollector all, boundary;
    std::vector<char> isSource(ns, 0);
    for (int s : sources)
        isSource[s] = 1;
    for (int s : sources) {
        const auto d = bfsDistances(source.adjacency(), s);
        for (int v = 0; v < ns; ++v) {
            if (v == s || (isSource[v] && v < s))
                continue;
            const int a = d[v], b = targetDist[phi[s]][phi[v]];
            all.add(a, b, s, v);
            if (source.isBoundary(s) && source.isBoundary(v))
                boundary.add(a, b, s, v);
        }
    }
    rep.pairsChecked = all.count();
    const auto pairs = all.pairs();
    const RoughFit fit = fitRoughIsometry(pairs);
    rep.c1 = fit.c1;
    rep.c2 = fit.c2;
    if (fit.witness.a >= 0) // C1 = 1 needs no witness
        rep.witnessPairs.push_back(
            all.witness(static_cast<int>(fit.witness.source), static_cast<int>(fit.witness.target)));
    for (const auto& pr : pairs) {
        const double slackUp = pr.target - fit.c1 * pr.source, slackDown = pr.source / fit.c1 - pr.target;
        if (std::max(slackUp, slackDown) >= fit.c2 - 1e-12) {
            rep.witnessPairs.push_back(all.witness(static_cast<int>(pr.source), static_cast<int>(pr.target)));
            break;
        }
    }
    if (boundary.count() > 0) {
        const RoughFit bf = fitRoughIsometry(boundary.pairs());
        rep.boundaryC1 = bf.c1;
        rep.boundaryC2 = bf.c2;
    }

    std::vector<char> hit(nt, 0);
    for (int v = 0; v < ns; ++v)
        hit[phi[v]] = 1;
    int c3 = 0;
    for (int w = 0; w < nt; ++w) {
        int nearest = std::numeric_limits<int>::max();
        for (int u = 0; u < nt; ++u)
            if (hit[u] && targetDist[w][u] >= 0)
                nearest = std::min(nearest, targetDist[w][u]);
        c3 = std::max(c3, nearest);
    }
    rep.c3 = c3;
    rep.surjective = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });

    std::vector<char> boundaryHit(nt, 0);
    for (int v = source.interiorCount(); v < ns; ++v) {
        if (!target.isBoundary(phi[v]))
            rep.boundaryToBoundary = false;
        boundaryHit[phi[v]] = 1;
    }
    for (int w = target.interiorCount(); w < nt; ++w)
        if (!boundaryHit[w])
            rep.boundaryOnto = false;
    return rep;
}

} // namespace hsteklov
