#pragma once

// Reflection tiling of the triangle group T*(p,q,r) and its dual host graph.

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "hsteklov/hypgeo.hpp"
#include "hsteklov/point_index.hpp"
#include "hsteklov/rough_isometry.hpp"

namespace hsteklov {

inline constexpr int kDefaultDepthCap = 9;
inline constexpr double kDedupTolerance = 1e-6;
inline constexpr double kDedupCell = 1e-7;

struct Tile {
    int id = -1;
    HypTriangle triangle;
    DiskPoint incenter;
    HypIsometry isometry; // seed tile -> this tile
    int depth = 0;
    /// Tile across side i (the side opposite corner i), or -1 on the frontier.
    std::array<int, 3> neighbors{-1, -1, -1};
    /// Tiling-vertex id of corner i. Corner i always has angle pi/{p,q,r}[i].
    std::array<int, 3> corners{-1, -1, -1};
};

/// A vertex of the tessellation (a corner shared by several tiles).
struct TilingVertex {
    DiskPoint position;
    int type = 0;              // 0, 1, 2 for angles pi/p, pi/q, pi/r
    std::vector<int> tiles;    // counter-clockwise around the vertex
    int expectedValence = 0;   // 2p, 2q or 2r

    bool complete() const { return static_cast<int>(tiles.size()) == expectedValence; }
};

struct SideRecord {
    int tileA = -1;
    int tileB = -1; // -1 while only one generated tile carries this side
};

class Tiling {
public:
    int p = 0, q = 0, r = 0;
    int maxDepth = 0;
    std::vector<Tile> tiles;
    std::vector<TilingVertex> vertices;
    std::vector<SideRecord> sides; // indexed by canonical side key
    Incircle seedIncircle;

    const Tile& seed() const { return tiles.front(); }
    int order(int type) const { return type == 0 ? p : (type == 1 ? q : r); }
};

namespace detail {

inline DiskPoint sideMidpoint(const HypTriangle& t, int side)
{
    return pointAlongSegment(t.sideSegment(side), 0.5);
}

} // namespace detail

/// Breadth-first closure of the seed tile under side reflections, up to
/// `maxDepth` reflections, with geometric deduplication on incenters.
inline Tiling generateTiling(int p, int q, int r, int maxDepth, int depthCap = kDefaultDepthCap)
{
    if (!isHyperbolicTriple(p, q, r))
        throw Error(ErrorKind::Tiling, "not hyperbolic");
    if (maxDepth < 0)
        throw Error(ErrorKind::Tiling, "negative tiling depth");
    if (maxDepth > depthCap)
        throw Error(ErrorKind::Tiling,
                    "tiling depth " + std::to_string(maxDepth) + " exceeds cap " + std::to_string(depthCap));

    Tiling tiling;
    tiling.p = p;
    tiling.q = q;
    tiling.r = r;
    tiling.maxDepth = maxDepth;

    const HypTriangle seed = triangleFromAngles(p, q, r);
    tiling.seedIncircle = incenterAndInradius(seed);

    PointIndex centers(kDedupCell, kDedupTolerance);
    auto makeTile = [&](const HypIsometry& iso, int depth) {
        Tile t;
        t.id = static_cast<int>(tiling.tiles.size());
        t.triangle = seed.mapped(iso);
        t.incenter = iso(tiling.seedIncircle.center);
        t.isometry = iso;
        t.depth = depth;
        return t;
    };

    tiling.tiles.push_back(makeTile(HypIsometry::identity(), 0));
    centers.findOrInsert(tiling.tiles[0].incenter);

    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        if (tiling.tiles[cur].depth >= maxDepth)
            continue;
        for (int s = 0; s < 3; ++s) {
            const GeodesicSegment side = tiling.tiles[cur].triangle.sideSegment(s);
            const HypIsometry mirror = HypIsometry::reflection(side.p, side.q);
            const HypIsometry iso = mirror * tiling.tiles[cur].isometry;
            bool inserted = false;
            const DiskPoint c = iso(tiling.seedIncircle.center);
            const int id = centers.findOrInsert(c, &inserted);
            if (inserted) {
                tiling.tiles.push_back(makeTile(iso, tiling.tiles[cur].depth + 1));
                queue.push_back(id);
            }
        }
    }

    // Side and vertex bookkeeping over every generated tile.
    PointIndex sideIndex(kDedupCell, kDedupTolerance);
    PointIndex vertexIndex(kDedupCell, kDedupTolerance);
    for (auto& tile : tiling.tiles) {
        for (int s = 0; s < 3; ++s) {
            const int key = sideIndex.findOrInsert(detail::sideMidpoint(tile.triangle, s));
            if (key == static_cast<int>(tiling.sides.size()))
                tiling.sides.push_back({tile.id, -1});
            else if (tiling.sides[key].tileB < 0)
                tiling.sides[key].tileB = tile.id;
            else
                throw Error(ErrorKind::Tiling, "side shared by more than two tiles (overlap)");
        }
        for (int c = 0; c < 3; ++c) {
            const int key = vertexIndex.findOrInsert(tile.triangle.vertices[c]);
            if (key == static_cast<int>(tiling.vertices.size())) {
                TilingVertex v;
                v.position = tile.triangle.vertices[c];
                v.type = c;
                v.expectedValence = 2 * tiling.order(c);
                tiling.vertices.push_back(v);
            }
            tiling.vertices[key].tiles.push_back(tile.id);
            tile.corners[c] = key;
        }
    }
    for (const auto& side : tiling.sides) {
        if (side.tileB < 0)
            continue;
        auto link = [&](int from, int to) {
            Tile& t = tiling.tiles[from];
            const Tile& o = tiling.tiles[to];
            for (int s = 0; s < 3; ++s) {
                // The shared side is the one whose corners both belong to `o`.
                const int c1 = t.corners[(s + 1) % 3], c2 = t.corners[(s + 2) % 3];
                const bool has1 = std::find(o.corners.begin(), o.corners.end(), c1) != o.corners.end();
                const bool has2 = std::find(o.corners.begin(), o.corners.end(), c2) != o.corners.end();
                if (has1 && has2) {
                    t.neighbors[s] = to;
                    return;
                }
            }
            throw Error(ErrorKind::Tiling, "adjacent tiles share no side");
        };
        link(side.tileA, side.tileB);
        link(side.tileB, side.tileA);
    }
    for (auto& v : tiling.vertices) {
        std::sort(v.tiles.begin(), v.tiles.end(), [&](int a, int b) {
            return directionAngle(v.position, tiling.tiles[a].incenter) <
                   directionAngle(v.position, tiling.tiles[b].incenter);
        });
    }
    return tiling;
}

/// Dual 3-regular graph: one vertex per tile (at its incenter), one edge per
/// side shared by two generated tiles.
struct HostGraph {
    std::vector<DiskPoint> positions;
    std::vector<int> depthOf;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency;
    int maxDepth = 0;

    std::size_t size() const { return positions.size(); }
    /// Vertices whose full neighborhood has been generated.
    bool trusted(int v) const { return depthOf[v] <= maxDepth - 1; }
    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
};

inline HostGraph buildHostGraph(const Tiling& t)
{
    HostGraph g;
    g.maxDepth = t.maxDepth;
    g.adjacency.resize(t.tiles.size());
    for (const auto& tile : t.tiles) {
        g.positions.push_back(tile.incenter);
        g.depthOf.push_back(tile.depth);
    }
    for (const auto& side : t.sides) {
        if (side.tileB < 0)
            continue;
        const int a = std::min(side.tileA, side.tileB);
        const int b = std::max(side.tileA, side.tileB);
        g.edges.emplace_back(a, b);
    }
    std::sort(g.edges.begin(), g.edges.end());
    for (const auto& [a, b] : g.edges) {
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    for (auto& adj : g.adjacency)
        std::sort(adj.begin(), adj.end());
    return g;
}

/// Breadth-first distances from `source`; -1 where unreachable.
inline std::vector<int> bfsDistances(const std::vector<std::vector<int>>& adjacency, int source)
{
    std::vector<int> dist(adjacency.size(), -1);
    std::vector<int> frontier{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        const int v = frontier[head];
        for (int w : adjacency[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                frontier.push_back(w);
            }
        }
    }
    return dist;
}

struct EmbeddingConstants {
    double c1 = 1.0;
    double c2 = 0.0;
    double c3 = 0.0;
    std::size_t pairs = 0;
};

/// Empirical constants of the incenter inclusion Gamma -> H^2.
///
/// Samples up to `sampleSize` vertices of depth <= maxDepth/2 (evenly by id),
/// so every shortest path between them stays inside the generated region.
inline EmbeddingConstants embeddingRoughIsometryCheck(const HostGraph& g, const Tiling& t, int sampleSize)
{
    if (sampleSize < 2)
        throw Error(ErrorKind::InvalidArgument, "sample size must be at least 2");
    std::vector<int> pool;
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        if (2 * g.depthOf[v] <= g.maxDepth)
            pool.push_back(v);
    std::vector<int> sample;
    const std::size_t n = std::min<std::size_t>(pool.size(), sampleSize);
    for (std::size_t i = 0; i < n; ++i)
        sample.push_back(pool[i * pool.size() / n]);

    std::vector<DistancePair> pairs;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto dist = bfsDistances(g.adjacency, sample[i]);
        for (std::size_t j = i + 1; j < sample.size(); ++j) {
            pairs.push_back({static_cast<double>(dist[sample[j]]),
                             hypDistance(g.positions[sample[i]], g.positions[sample[j]]), sample[i], sample[j]});
        }
    }
    const RoughFit fit = fitRoughIsometry(pairs);
    const HypTriangle& seed = t.seed().triangle;
    return {fit.c1, fit.c2, std::max({seed.side(0), seed.side(1), seed.side(2)}), pairs.size()};
}

} // namespace hsteklov
