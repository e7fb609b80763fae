#pragma once

// Experiment drivers: spectral scaling on ball families, punctured balls, the
// horseshoe subgraph, and discretization-versus-graph spectral comparison.

#include <chrono>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hsteklov/discretize.hpp"
#include "hsteklov/domain.hpp"
#include "hsteklov/graph.hpp"
#include "hsteklov/io.hpp"
#include "hsteklov/steklov.hpp"
#include "hsteklov/tiling.hpp"

namespace hsteklov {

enum class Family { Balls, PuncturedBalls, Horseshoe, CustomList };

struct ExperimentConfig {
    int p = 2, q = 3, r = 7;
    int depth = kDefaultDepthCap;
    int center = 0;
    int radiusMin = 2;
    int radiusMax = 6;
    int kMax = 5;
    double epsilonFactor = 0.5; // fraction of eps_max
    std::uint64_t seed = 1;
    Family family = Family::Balls;
    std::vector<std::vector<int>> customInteriors;
    std::string outDir = ".";

    /// Ball radius R needs its boundary (depth <= R + 1) trusted.
    int maxBallRadius() const { return depth - 2; }

    void validate() const
    {
        if (!isHyperbolicTriple(p, q, r))
            throw Error(ErrorKind::Config, "(p,q,r) = (" + std::to_string(p) + "," + std::to_string(q) + "," +
                                               std::to_string(r) + ") is not hyperbolic");
        if (depth < 1 || depth > kDefaultDepthCap)
            throw Error(ErrorKind::Config, "depth must lie in [1, " + std::to_string(kDefaultDepthCap) + "]");
        if (radiusMin < 0 || radiusMax < radiusMin)
            throw Error(ErrorKind::Config, "radius range is empty or negative");
        if (family != Family::CustomList && family != Family::Horseshoe && radiusMax > maxBallRadius())
            throw Error(ErrorKind::Config, "radius " + std::to_string(radiusMax) + " needs tiling depth " +
                                               std::to_string(radiusMax + 2) + " (configured " +
                                               std::to_string(depth) + ")");
        if (kMax < 1)
            throw Error(ErrorKind::Config, "k-max must be at least 1");
        if (!(epsilonFactor > 0.0 && epsilonFactor <= 1.0))
            throw Error(ErrorKind::Config, "epsilon factor must lie in (0, 1]");
        if (center != 0)
            throw Error(ErrorKind::Config, "ball families are centered at the seed tile (center 0)");
    }
};

// ---------------------------------------------------------------- scaling

struct ScalingRow {
    int radius = 0;
    int interior = 0;
    int boundary = 0;
    int k = 0;
    bool defined = false; // k < |B|
    double sigma = 0.0;
    double product = 0.0; // sigma_k |B|
    double ratio = 0.0;   // sigma_k |B| / k^2
    double runningMax = 0.0;
    double residual = 0.0;
    bool flagged = false; // residual above tolerance
};

struct ScalingReport {
    ExperimentConfig config;
    std::vector<ScalingRow> rows; // ordered by (radius, k)
    std::map<int, double> maxRatio; // per k over the family
    bool ok = true;

    const ScalingRow* find(int radius, int k) const
    {
        for (const auto& row : rows)
            if (row.radius == radius && row.k == k)
                return &row;
        return nullptr;
    }

    std::string csv() const
    {
        std::ostringstream os;
        os << "radius,interior,boundary,k,defined,sigma,sigma_times_boundary,ratio,running_max,residual,flagged\n";
        for (const auto& row : rows) {
            os << row.radius << ',' << row.interior << ',' << row.boundary << ',' << row.k << ','
               << (row.defined ? 1 : 0) << ',';
            if (row.defined)
                os << io::number(row.sigma) << ',' << io::number(row.product) << ',' << io::number(row.ratio) << ','
                   << io::number(row.runningMax) << ',' << io::number(row.residual);
            else
                os << ",,,,";
            os << ',' << (row.flagged ? 1 : 0) << '\n';
        }
        return os.str();
    }

    io::json json() const
    {
        io::json rowsJson = io::json::array();
        for (const auto& row : rows) {
            io::json j{{"radius", row.radius}, {"interior", row.interior}, {"boundary", row.boundary},
                       {"k", row.k},           {"defined", row.defined},   {"flagged", row.flagged}};
            if (row.defined) {
                j["sigma"] = row.sigma;
                j["sigma_times_boundary"] = row.product;
                j["ratio"] = row.ratio;
                j["running_max"] = row.runningMax;
                j["residual"] = row.residual;
            }
            rowsJson.push_back(j);
        }
        io::json summary = io::json::object();
        for (const auto& [k, m] : maxRatio)
            summary[std::to_string(k)] = m;
        return {{"p", config.p},         {"q", config.q},         {"r", config.r},
                {"depth", config.depth}, {"k_max", config.kMax},  {"rows", rowsJson},
                {"max_ratio", summary},  {"ok", ok}};
    }
};

inline ScalingReport runScaling(const ExperimentConfig& cfg)
{
    cfg.validate();
    const Tiling t = generateTiling(cfg.p, cfg.q, cfg.r, cfg.depth);
    const HostGraph g = buildHostGraph(t);
    ScalingReport rep;
    rep.config = cfg;
    std::map<int, double> running;
    for (int radius = cfg.radiusMin; radius <= cfg.radiusMax; ++radius) {
        const GraphWithBoundary G = ballSubgraph(g, cfg.center, radius);
        const SteklovSpectrum s = steklovSpectrum(G);
        for (int k = 1; k <= cfg.kMax; ++k) {
            ScalingRow row;
            row.radius = radius;
            row.interior = G.interiorCount();
            row.boundary = G.boundaryCount();
            row.k = k;
            row.defined = k < G.boundaryCount();
            if (row.defined) {
                row.sigma = s.eigenvalues[k];
                row.product = row.sigma * row.boundary;
                row.ratio = row.product / (static_cast<double>(k) * k);
                row.residual = s.residuals[k];
                row.flagged = row.residual > kResidualTolerance;
                auto [it, fresh] = running.try_emplace(k, row.ratio);
                if (!fresh)
                    it->second = std::max(it->second, row.ratio);
                row.runningMax = it->second;
                rep.ok = rep.ok && !row.flagged;
            }
            rep.rows.push_back(row);
        }
    }
    rep.maxRatio = running;
    return rep;
}

// ---------------------------------------------------------------- punctured ball

/// Interior vertex whose deletion keeps the ball connected and adds exactly
/// one boundary vertex, nearest to the center first (ties by id).
inline int choosePuncture(const HostGraph& g, int center, int radius)
{
    const GraphWithBoundary ball = ballSubgraph(g, center, radius);
    const auto dist = bfsDistances(g.adjacency, center);
    std::vector<int> cands = ballVertices(g, center, radius);
    std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    for (int v : cands) {
        try {
            if (puncturedBall(g, center, radius, v).boundaryCount() == ball.boundaryCount() + 1)
                return v;
        } catch (const Error&) {
        }
    }
    throw Error(ErrorKind::Subgraph, "no vertex of the radius-" + std::to_string(radius) +
                                         " ball can be removed without disconnecting it");
}

struct PuncturedReport {
    int radius = 0;
    int removed = -1;
    int ballBoundary = 0;
    int puncturedBoundary = 0;
    int ballComponents = 0;
    int puncturedComponents = 0;
    bool circleAtRemoved = false;
    SteklovSpectrum ballSpectrum;
    SteklovSpectrum puncturedSpectrum;
    bool ok = false;

    io::json json() const
    {
        return {{"radius", radius},
                {"removed_vertex", removed},
                {"ball_boundary", ballBoundary},
                {"punctured_boundary", puncturedBoundary},
                {"ball_components", ballComponents},
                {"punctured_components", puncturedComponents},
                {"circle_at_removed", circleAtRemoved},
                {"ball_spectrum", io::toJson(ballSpectrum)},
                {"punctured_spectrum", io::toJson(puncturedSpectrum)},
                {"ok", ok}};
    }
    std::string csv() const
    {
        std::ostringstream os;
        os << "case,boundary,components,sigma0,sigma1\n";
        os << "ball," << ballBoundary << ',' << ballComponents << ',' << io::number(ballSpectrum.eigenvalues[0]) << ','
           << io::number(ballSpectrum.eigenvalues.at(1)) << '\n';
        os << "punctured," << puncturedBoundary << ',' << puncturedComponents << ','
           << io::number(puncturedSpectrum.eigenvalues[0]) << ',' << io::number(puncturedSpectrum.eigenvalues.at(1))
           << '\n';
        return os.str();
    }
};

inline PuncturedReport runPuncturedBall(const ExperimentConfig& cfg, int radius)
{
    cfg.validate();
    const Tiling t = generateTiling(cfg.p, cfg.q, cfg.r, cfg.depth);
    const HostGraph g = buildHostGraph(t);
    PuncturedReport rep;
    rep.radius = radius;
    rep.removed = choosePuncture(g, cfg.center, radius);
    const GraphWithBoundary ball = ballSubgraph(g, cfg.center, radius);
    const GraphWithBoundary punct = puncturedBall(g, cfg.center, radius, rep.removed);
    const DomainModel db = buildDomain(ball, t), dp = buildDomain(punct, t);
    rep.ballBoundary = ball.boundaryCount();
    rep.puncturedBoundary = punct.boundaryCount();
    rep.ballComponents = db.componentCount();
    rep.puncturedComponents = dp.componentCount();
    for (std::size_t b = 0; b < dp.ballHosts.size(); ++b)
        if (dp.ballHosts[b] == rep.removed)
            rep.circleAtRemoved = samePoint(dp.balls[b].center, t.tiles[rep.removed].incenter);
    rep.ballSpectrum = steklovSpectrum(ball);
    rep.puncturedSpectrum = steklovSpectrum(punct);
    rep.ok = rep.puncturedBoundary == rep.ballBoundary + 1 && rep.puncturedComponents == rep.ballComponents + 1 &&
             rep.circleAtRemoved && rep.ballSpectrum.eigenvalues[0] == 0.0 &&
             rep.puncturedSpectrum.eigenvalues[0] == 0.0;
    return rep;
}

// ---------------------------------------------------------------- horseshoe

struct HorseshoeReport {
    int pivot = -1; // tiling vertex the horseshoe wraps around
    int w1 = -1, w2 = -1;
    std::vector<int> interior;
    int hostDistance = -1;     // d_Gamma(w1, w2)
    int subgraphDistance = -1; // d_Omega(w1, w2)
    bool connectorBetweenTips = false;
    StructuralReport structural;
    bool ok = false;

    io::json json() const
    {
        return {{"pivot_tiling_vertex", pivot},
                {"w1", w1},
                {"w2", w2},
                {"interior", interior},
                {"host_distance", hostDistance},
                {"subgraph_distance", subgraphDistance},
                {"connector_between_tips", connectorBetweenTips},
                {"structural_ok", structural.ok},
                {"structural_failures", structural.failures},
                {"ok", ok}};
    }
    std::string csv() const
    {
        std::ostringstream os;
        os << "w1,w2,interior,host_distance,subgraph_distance,connector_between_tips,structural_ok\n"
           << w1 << ',' << w2 << ',' << interior.size() << ',' << hostDistance << ',' << subgraphDistance << ','
           << (connectorBetweenTips ? 1 : 0) << ',' << (structural.ok ? 1 : 0) << '\n';
        return os.str();
    }
};

/// The tiles around the seed's corner of largest order form a cycle of
/// length 2n; dropping two adjacent ones leaves a path whose two ends have
/// the dropped tiles (adjacent in the host graph) as boundary vertices.
inline HorseshoeReport runHorseshoe(const ExperimentConfig& cfg)
{
    cfg.validate();
    const Tiling t = generateTiling(cfg.p, cfg.q, cfg.r, cfg.depth);
    const HostGraph g = buildHostGraph(t);
    int type = 0;
    for (int c = 1; c < 3; ++c)
        if (t.order(c) > t.order(type))
            type = c;
    HorseshoeReport rep;
    rep.pivot = t.seed().corners[type];
    const TilingVertex& tv = t.vertices[rep.pivot];
    if (!tv.complete())
        throw Error(ErrorKind::Construction, "horseshoe ring is incomplete at depth " + std::to_string(cfg.depth));
    const auto& ring = tv.tiles;
    const int m = static_cast<int>(ring.size());
    rep.w1 = ring[0];
    rep.w2 = ring[1];
    for (int k = 2; k < m; ++k)
        rep.interior.push_back(ring[k]);
    GraphWithBoundary G;
    try {
        G = induceSubgraph(g, rep.interior);
    } catch (const Error& e) {
        throw Error(ErrorKind::Construction,
                    "horseshoe infeasible at depth " + std::to_string(cfg.depth) + ": " + e.what());
    }
    rep.hostDistance = bfsDistances(g.adjacency, rep.w1)[rep.w2];
    rep.subgraphDistance = graphDistance(G, G.localIndex(rep.w1), G.localIndex(rep.w2));
    const DomainModel D = buildDomain(G, t);
    for (const auto& pc : D.pieces)
        if (pc.kind == PieceKind::Quadrilateral &&
            pc.hosts == std::vector<int>{std::min(rep.w1, rep.w2), std::max(rep.w1, rep.w2)})
            rep.connectorBetweenTips = true;
    rep.structural = structuralEquivalenceCheck(D, G);
    rep.ok = rep.hostDistance == 1 && rep.subgraphDistance >= 10 && !rep.connectorBetweenTips && rep.structural.ok;
    return rep;
}

// ---------------------------------------------------------------- compare

/// Structural facts about a spectrum, kept when the spectrum itself is too
/// large to carry around.
struct SpectrumHealth {
    int size = 0;
    double sigma0 = 0.0;
    double rawSmallest = 0.0;
    double sigma1 = 0.0;
    double asymmetry = 0.0;
    double maxResidual = 0.0;

    static SpectrumHealth of(const SteklovSpectrum& s)
    {
        return {s.size(), s.eigenvalues.at(0), s.rawSmallest, s.size() > 1 ? s.eigenvalues[1] : 0.0, s.asymmetry,
                s.maxResidual()};
    }
    io::json json() const
    {
        return {{"size", size},           {"sigma0", sigma0},       {"raw_smallest", rawSmallest},
                {"sigma1", sigma1},       {"asymmetry", asymmetry}, {"max_residual", maxResidual}};
    }
};

struct CompareRow {
    int radius = 0;
    int interior = 0;
    int boundary = 0;
    double epsilon = 0.0;
    int discreteVertices = 0;
    int discreteBoundary = 0;
    std::vector<double> sigmaGraph;    // k = 1..kMax
    std::vector<double> sigmaDiscrete; // k = 1..kMax
    std::vector<double> ratio;         // discrete / graph
    double maxResidual = 0.0;
    SpectrumHealth graphHealth, discreteHealth;
    RoughIsometryReport rough;
    double seconds = 0.0;
};

struct CompareReport {
    ExperimentConfig config;
    std::vector<CompareRow> rows;
    std::vector<double> ratioSpread;  // per k: max/min ratio over the family
    double c1Growth = 0.0, c2Growth = 0.0, c3Growth = 0.0; // last / first
    bool ok = true;

    std::string csv() const
    {
        std::ostringstream os;
        os << "radius,interior,boundary,epsilon,discrete_vertices,discrete_boundary,k,sigma_graph,sigma_discrete,"
              "ratio,c1,c2,c3\n";
        for (const auto& row : rows)
            for (std::size_t k = 0; k < row.ratio.size(); ++k)
                os << row.radius << ',' << row.interior << ',' << row.boundary << ',' << io::number(row.epsilon)
                   << ',' << row.discreteVertices << ',' << row.discreteBoundary << ',' << k + 1 << ','
                   << io::number(row.sigmaGraph[k]) << ',' << io::number(row.sigmaDiscrete[k]) << ','
                   << io::number(row.ratio[k]) << ',' << io::number(row.rough.c1) << ','
                   << io::number(row.rough.c2) << ',' << io::number(row.rough.c3) << '\n';
        return os.str();
    }

    io::json json() const
    {
        io::json rowsJson = io::json::array();
        for (const auto& row : rows)
            rowsJson.push_back({{"radius", row.radius},
                                {"interior", row.interior},
                                {"boundary", row.boundary},
                                {"epsilon", row.epsilon},
                                {"discrete_vertices", row.discreteVertices},
                                {"discrete_boundary", row.discreteBoundary},
                                {"sigma_graph", row.sigmaGraph},
                                {"sigma_discrete", row.sigmaDiscrete},
                                {"ratio", row.ratio},
                                {"max_residual", row.maxResidual},
                                {"graph_spectrum", row.graphHealth.json()},
                                {"discrete_spectrum", row.discreteHealth.json()},
                                {"rough_isometry", io::toJson(row.rough)}});
        return {{"rows", rowsJson},
                {"ratio_spread", ratioSpread},
                {"c1_growth", c1Growth},
                {"c2_growth", c2Growth},
                {"c3_growth", c3Growth},
                {"ok", ok}};
    }
};

inline double growth(double first, double last) { return first > 0.0 ? last / first : (last > 0.0 ? 1e300 : 1.0); }

inline CompareReport runDiscretizeCompare(const ExperimentConfig& cfg)
{
    cfg.validate();
    const Tiling t = generateTiling(cfg.p, cfg.q, cfg.r, cfg.depth);
    const HostGraph g = buildHostGraph(t);
    CompareReport rep;
    rep.config = cfg;
    for (int radius = cfg.radiusMin; radius <= cfg.radiusMax; ++radius) {
        const auto start = std::chrono::steady_clock::now();
        CompareRow row;
        row.radius = radius;
        const GraphWithBoundary G = ballSubgraph(g, cfg.center, radius);
        const DomainModel D = buildDomain(G, t);
        row.interior = G.interiorCount();
        row.boundary = G.boundaryCount();
        row.epsilon = cfg.epsilonFactor * epsilonMax(D);
        const DiscretizationGraph dg = buildDiscretization(D, row.epsilon);
        row.discreteVertices = dg.size();
        row.discreteBoundary = dg.boundaryCount;
        const auto phi = cobblestoneMap(dg, D, G);
        RoughIsometryOptions opts;
        opts.seed = cfg.seed;
        row.rough = roughIsometryConstants(phi, dg.graph, G, opts);
        const SteklovSpectrum sg = steklovSpectrum(G), sd = steklovSpectrum(dg.graph);
        row.maxResidual = std::max(sg.maxResidual(), sd.maxResidual());
        row.graphHealth = SpectrumHealth::of(sg);
        row.discreteHealth = SpectrumHealth::of(sd);
        for (int k = 1; k <= cfg.kMax && k < G.boundaryCount(); ++k) {
            row.sigmaGraph.push_back(sg.eigenvalues[k]);
            row.sigmaDiscrete.push_back(sd.eigenvalues[k]);
            row.ratio.push_back(sd.eigenvalues[k] / sg.eigenvalues[k]);
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rep.ok = rep.ok && row.maxResidual <= kResidualTolerance && row.rough.surjective &&
                 row.rough.boundaryToBoundary;
        rep.rows.push_back(std::move(row));
    }
    std::size_t kCount = rep.rows.front().ratio.size();
    for (const auto& row : rep.rows)
        kCount = std::min(kCount, row.ratio.size());
    for (std::size_t k = 0; k < kCount; ++k) {
        double lo = 1e300, hi = 0.0;
        for (const auto& row : rep.rows) {
            lo = std::min(lo, row.ratio[k]);
            hi = std::max(hi, row.ratio[k]);
        }
        rep.ratioSpread.push_back(hi / lo);
    }
    const auto& first = rep.rows.front().rough;
    const auto& last = rep.rows.back().rough;
    rep.c1Growth = growth(first.c1, last.c1);
    rep.c2Growth = growth(first.c2, last.c2);
    rep.c3Growth = growth(first.c3, last.c3);
    return rep;
}

} // namespace hsteklov
