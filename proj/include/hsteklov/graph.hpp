#pragma once

// Finite graphs with boundary and subgraphs induced from a host graph.

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hsteklov/error.hpp"
#include "hsteklov/tiling.hpp"

namespace hsteklov {

enum class VertexRole { Interior, Boundary };

/// (closure, edges, boundary) with interior vertices indexed first, then the
/// boundary, each block sorted by host id when built from a host graph.
class GraphWithBoundary {
public:
    GraphWithBoundary() = default;

    /// Vertices [0, interiorCount) are interior, the rest boundary.
    GraphWithBoundary(int interiorCount, int boundaryCount, std::vector<std::pair<int, int>> edges,
                      std::vector<int> hostIds = {})
        : interiorCount_(interiorCount), hostIds_(std::move(hostIds))
    {
        const int n = interiorCount + boundaryCount;
        if (boundaryCount <= 0)
            throw Error(ErrorKind::Subgraph, "graph with boundary needs a nonempty boundary");
        if (!hostIds_.empty() && static_cast<int>(hostIds_.size()) != n)
            throw Error(ErrorKind::Subgraph, "host id list does not match vertex count");
        adjacency_.resize(n);
        std::set<std::pair<int, int>> seen;
        for (auto [a, b] : edges) {
            if (a == b || a < 0 || b < 0 || a >= n || b >= n)
                throw Error(ErrorKind::Subgraph, "invalid edge");
            if (a > b)
                std::swap(a, b);
            if (!seen.insert({a, b}).second)
                throw Error(ErrorKind::Subgraph, "duplicate edge");
            edges_.emplace_back(a, b);
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
        }
        std::sort(edges_.begin(), edges_.end());
        for (auto& adj : adjacency_)
            std::sort(adj.begin(), adj.end());
        if (n > 0) {
            const auto dist = bfsDistances(adjacency_, 0);
            if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; }))
                throw Error(ErrorKind::Subgraph, "graph with boundary is not connected");
        }
    }

    int size() const { return static_cast<int>(adjacency_.size()); }
    int interiorCount() const { return interiorCount_; }
    int boundaryCount() const { return size() - interiorCount_; }
    VertexRole role(int v) const { return v < interiorCount_ ? VertexRole::Interior : VertexRole::Boundary; }
    bool isBoundary(int v) const { return v >= interiorCount_; }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

    bool hasHost() const { return !hostIds_.empty(); }
    const std::vector<int>& hostIds() const { return hostIds_; }
    int hostId(int v) const { return hostIds_.at(v); }

    /// Local index of a host vertex, or -1.
    int localIndex(int hostId) const
    {
        auto it = std::find(hostIds_.begin(), hostIds_.end(), hostId);
        return it == hostIds_.end() ? -1 : static_cast<int>(it - hostIds_.begin());
    }

    bool adjacent(int a, int b) const { return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b); }

private:
    int interiorCount_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> hostIds_;
};

inline bool isConnectedIn(const HostGraph& g, const std::vector<int>& verts)
{
    if (verts.empty())
        return false;
    std::set<int> inside(verts.begin(), verts.end());
    std::set<int> seen{verts.front()};
    std::vector<int> stack{verts.front()};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : g.adjacency[v])
            if (inside.count(w) && seen.insert(w).second)
                stack.push_back(w);
    }
    return seen.size() == inside.size();
}

/// Subgraph induced by the interior set: B = outer neighbors of the interior,
/// E' = host edges with at least one interior endpoint.
inline GraphWithBoundary induceSubgraph(const HostGraph& g, const std::vector<int>& interior)
{
    if (interior.empty())
        throw Error(ErrorKind::Subgraph, "empty interior");
    std::vector<int> omega(interior);
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
    for (int v : omega)
        if (v < 0 || v >= static_cast<int>(g.size()))
            throw Error(ErrorKind::Subgraph, "interior vertex " + std::to_string(v) + " not in host graph");
    if (!isConnectedIn(g, omega))
        throw Error(ErrorKind::Subgraph, "interior is not connected in the host graph");

    std::set<int> omegaSet(omega.begin(), omega.end());
    std::set<int> boundarySet;
    for (int v : omega)
        for (int w : g.adjacency[v])
            if (!omegaSet.count(w))
                boundarySet.insert(w);
    for (int v : omega)
        if (!g.trusted(v))
            throw Error(ErrorKind::Subgraph,
                        "interior vertex " + std::to_string(v) + " touches the untrusted tiling frontier");
    for (int w : boundarySet)
        if (!g.trusted(w))
            throw Error(ErrorKind::Subgraph,
                        "boundary vertex " + std::to_string(w) + " touches the untrusted tiling frontier");

    std::vector<int> hostIds(omega);
    hostIds.insert(hostIds.end(), boundarySet.begin(), boundarySet.end());
    std::vector<int> local(g.size(), -1);
    for (int i = 0; i < static_cast<int>(hostIds.size()); ++i)
        local[hostIds[i]] = i;

    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : g.edges) {
        const bool aIn = omegaSet.count(a) > 0, bIn = omegaSet.count(b) > 0;
        if ((aIn && local[b] >= 0) || (bIn && local[a] >= 0))
            edges.emplace_back(local[a], local[b]);
    }
    return GraphWithBoundary(static_cast<int>(omega.size()), static_cast<int>(boundarySet.size()),
                             std::move(edges), std::move(hostIds));
}

/// Host vertices within `radius` hops of `center`.
inline std::vector<int> ballVertices(const HostGraph& g, int center, int radius)
{
    if (center < 0 || center >= static_cast<int>(g.size()))
        throw Error(ErrorKind::Subgraph, "ball center not in host graph");
    if (radius < 0)
        throw Error(ErrorKind::Subgraph, "negative ball radius");
    const auto dist = bfsDistances(g.adjacency, center);
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        if (dist[v] >= 0 && dist[v] <= radius)
            out.push_back(v);
    return out;
}

inline GraphWithBoundary ballSubgraph(const HostGraph& g, int center, int radius)
{
    return induceSubgraph(g, ballVertices(g, center, radius));
}

/// Ball with one interior vertex turned into an (isolated) boundary vertex.
inline GraphWithBoundary puncturedBall(const HostGraph& g, int center, int radius, int removed)
{
    auto ball = ballVertices(g, center, radius);
    auto it = std::find(ball.begin(), ball.end(), removed);
    if (it == ball.end())
        throw Error(ErrorKind::Subgraph, "removed vertex " + std::to_string(removed) + " is not inside the ball");
    ball.erase(it);
    if (ball.empty() || !isConnectedIn(g, ball))
        throw Error(ErrorKind::Subgraph, "removing vertex " + std::to_string(removed) + " disconnects the ball");
    return induceSubgraph(g, ball);
}

inline int graphDistance(const GraphWithBoundary& G, int u, int v)
{
    if (u < 0 || v < 0 || u >= G.size() || v >= G.size())
        throw Error(ErrorKind::InvalidArgument, "vertex index out of range");
    return bfsDistances(G.adjacency(), u)[v];
}

inline std::vector<std::vector<int>> allPairsDistances(const std::vector<std::vector<int>>& adjacency)
{
    std::vector<std::vector<int>> out;
    out.reserve(adjacency.size());
    for (int v = 0; v < static_cast<int>(adjacency.size()); ++v)
        out.push_back(bfsDistances(adjacency, v));
    return out;
}

} // namespace hsteklov
