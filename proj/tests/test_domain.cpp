#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "hsteklov/domain.hpp"
#include "hsteklov/experiments.hpp"
#include "oracles.hpp"

using namespace hsteklov;

namespace {

const Tiling& tiling()
{
    static const Tiling t = generateTiling(2, 3, 7, 7);
    return t;
}

const HostGraph& host()
{
    static const HostGraph g = buildHostGraph(tiling());
    return g;
}

/// Polygonal boundary components: connected classes of corners joined by
/// piece edges that belong to exactly one piece.
int outerComponents(const DomainModel& D)
{
    std::map<std::pair<int, int>, int> uses;
    for (const Piece& pc : D.pieces)
        for (std::size_t k = 0; k < pc.corners.size(); ++k) {
            const int a = pc.corners[k], b = pc.corners[(k + 1) % pc.corners.size()];
            ++uses[{std::min(a, b), std::max(a, b)}];
        }
    reference::UnionFind uf(static_cast<int>(D.corners.size()));
    std::set<int> onBoundary;
    for (const auto& [e, n] : uses)
        if (n == 1) {
            uf.unite(e.first, e.second);
            onBoundary.insert(e.first);
            onBoundary.insert(e.second);
        }
    std::set<int> roots;
    for (int c : onBoundary)
        roots.insert(uf.find(c));
    return static_cast<int>(roots.size());
}

/// Closed cycles around complete tiling vertices, found from tile geometry.
int expectedCycleGons(const GraphWithBoundary& G, const Tiling& t)
{
    int count = 0;
    for (const TilingVertex& tv : t.vertices) {
        std::vector<std::pair<double, int>> around;
        for (const Tile& tile : t.tiles)
            for (const DiskPoint& v : tile.triangle.vertices)
                if (hypDistance(v, tv.position) < 1e-7)
                    around.push_back({directionAngle(tv.position, tile.incenter), tile.id});
        if (static_cast<int>(around.size()) != 2 * t.order(tv.type))
            continue;
        std::sort(around.begin(), around.end());
        bool closed = true;
        for (std::size_t k = 0; k < around.size() && closed; ++k) {
            const int a = G.localIndex(around[k].second);
            const int b = G.localIndex(around[(k + 1) % around.size()].second);
            closed = a >= 0 && b >= 0 && G.adjacent(a, b);
        }
        count += closed;
    }
    return count;
}

DomainModel withoutPiece(DomainModel D, int piece)
{
    D.pieces.erase(D.pieces.begin() + piece);
    for (auto& cb : D.cobblestones)
        for (auto* list : {&cb.quads, &cb.gons}) {
            list->erase(std::remove(list->begin(), list->end(), piece), list->end());
            for (int& x : *list)
                if (x > piece)
                    --x;
        }
    return D;
}

} // namespace

TEST(ShrinkTriangle, ScalesVertexDistancesFromTheIncenter)
{
    for (auto [p, q, r] : {std::tuple{2, 3, 7}, std::tuple{3, 3, 4}}) {
        const HypTriangle t = triangleFromAngles(p, q, r);
        const HypTriangle s = shrinkTriangle(t);
        const Incircle in = incenterAndInradius(t);
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(hypDistance(in.center, s.vertices[i]), 0.9 * hypDistance(in.center, t.vertices[i]), 1e-9);
            EXPECT_TRUE(t.contains(s.vertices[i], -1e-12));
        }
        EXPECT_TRUE(s.contains(in.center, -1e-12));
    }
}

TEST(ShrinkTriangle, KeepsThreeFoldSymmetry)
{
    const HypTriangle t = triangleFromAngles(4, 4, 4);
    const HypTriangle s = shrinkTriangle(t);
    const DiskPoint c = incenterAndInradius(t).center;
    const double d0 = hypDistance(c, s.vertices[0]);
    EXPECT_NEAR(hypDistance(c, s.vertices[1]), d0, 1e-12);
    EXPECT_NEAR(hypDistance(c, s.vertices[2]), d0, 1e-12);
}

TEST(ShrunkenGeometry, ClassesAndConstants)
{
    const ShrunkenGeometry g = shrunkenGeometry(tiling());
    EXPECT_GT(g.lambda, 0.0);
    for (double len : g.segmentClasses)
        EXPECT_GE(len, g.lambda);
    EXPECT_NEAR(g.ballRadius(), 0.5 * g.rho(), 1e-15);
    EXPECT_NEAR(g.trim(), 0.1 * g.lambda, 1e-15);
}

TEST(Domain, SingleVertexStar)
{
    const GraphWithBoundary G = induceSubgraph(host(), {0});
    const DomainModel D = buildDomain(G, tiling());
    EXPECT_EQ(D.pieceCount(PieceKind::Triangle), 4);
    EXPECT_EQ(D.pieceCount(PieceKind::Quadrilateral), 3);
    EXPECT_EQ(D.pieceCount(PieceKind::CycleGon), 0);
    EXPECT_EQ(D.balls.size(), 3u);
    EXPECT_EQ(D.polygonalComponents, 1);
    EXPECT_EQ(D.componentCount(), 4);
    EXPECT_GE(boundaryLength(D), 3.0 * circlePerimeter({DiskPoint(), D.geometry.ballRadius()}));
}

TEST(Domain, PieceCountsMatchConstructionOracle)
{
    for (int radius = 0; radius <= 4; ++radius) {
        const GraphWithBoundary G = ballSubgraph(host(), 0, radius);
        const DomainModel D = buildDomain(G, tiling());
        EXPECT_EQ(D.pieceCount(PieceKind::Triangle), G.size());
        EXPECT_EQ(D.pieceCount(PieceKind::Quadrilateral), static_cast<int>(G.edges().size()));
        EXPECT_EQ(D.pieceCount(PieceKind::CycleGon), expectedCycleGons(G, tiling())) << "radius " << radius;
        EXPECT_EQ(static_cast<int>(D.balls.size()), G.boundaryCount());
        EXPECT_EQ(D.polygonalComponents, outerComponents(D));
        EXPECT_EQ(D.componentCount(), outerComponents(D) + G.boundaryCount());
        for (std::size_t p = 0; p < D.pieces.size(); ++p)
            EXPECT_GT(detail::signedArea(D.polygon(static_cast<int>(p))), 0.0);
    }
}

TEST(Domain, RightAngleCycleGivesOneFourGon)
{
    const GraphWithBoundary G = ballSubgraph(host(), 0, 2);
    const DomainModel D = buildDomain(G, tiling());
    const int z = tiling().seed().corners[0]; // angle pi/2
    int found = 0;
    for (const Piece& pc : D.pieces)
        if (pc.kind == PieceKind::CycleGon && pc.tilingVertex == z) {
            ++found;
            EXPECT_EQ(pc.corners.size(), 4u);
        }
    EXPECT_EQ(found, 1);
}

TEST(Domain, PuncturedBallGainsOneCircle)
{
    for (int radius : {2, 3}) {
        const int v = choosePuncture(host(), 0, radius);
        const GraphWithBoundary ball = ballSubgraph(host(), 0, radius);
        const GraphWithBoundary punct = puncturedBall(host(), 0, radius, v);
        const DomainModel Db = buildDomain(ball, tiling()), Dp = buildDomain(punct, tiling());
        EXPECT_EQ(punct.boundaryCount(), ball.boundaryCount() + 1);
        EXPECT_EQ(Dp.componentCount(), Db.componentCount() + 1) << "radius " << radius;
        EXPECT_EQ(Dp.polygonalComponents, Db.polygonalComponents);
        const auto it = std::find(Dp.ballHosts.begin(), Dp.ballHosts.end(), v);
        ASSERT_NE(it, Dp.ballHosts.end());
        const HypCircle& c = Dp.balls[it - Dp.ballHosts.begin()];
        EXPECT_LT(hypDistance(c.center, tiling().tiles[v].incenter), 1e-12);
    }
    EXPECT_EQ(choosePuncture(host(), 0, 3), 0);
}

TEST(Domain, BoundaryLengthBoundAndSharpCorners)
{
    for (int radius = 0; radius <= 3; ++radius) {
        const GraphWithBoundary G = ballSubgraph(host(), 0, radius);
        const DomainModel D = buildDomain(G, tiling());
        const DomainModel S = buildDomain(G, tiling(), CornerMode::Sharp);
        const double c4 = circlePerimeter({DiskPoint(), D.geometry.ballRadius()});
        EXPECT_GE(boundaryLength(D), c4 * G.boundaryCount());
        const BoundaryBreakdown b = boundaryBreakdown(D);
        EXPECT_NEAR(b.segments + b.fillets + b.circles, boundaryLength(D), 1e-9);
        EXPECT_EQ(b.circleCount, G.boundaryCount());
        EXPECT_NEAR(b.circles, c4 * G.boundaryCount(), 1e-9);
        EXPECT_EQ(boundaryBreakdown(S).filletCount, 0);
        EXPECT_LT(std::abs(boundaryLength(D) - boundaryLength(S)), 6.0 * D.geometry.trim() * b.filletCount);
    }
}

TEST(Domain, FiniteCurveTypeInventory)
{
    const GraphWithBoundary G = ballSubgraph(host(), 0, 4);
    const DomainModel S = buildDomain(G, tiling(), CornerMode::Sharp);
    const DomainModel D = buildDomain(G, tiling());
    std::set<long long> lengths, angles;
    for (const auto& c : S.boundary)
        for (const auto& p : c.primitives)
            if (p.kind == PrimitiveKind::Segment)
                lengths.insert(std::llround(p.length * 1e7));
    for (const auto& c : D.boundary)
        for (const auto& p : c.primitives)
            if (p.kind == PrimitiveKind::Fillet)
                angles.insert(std::llround(p.fillet.interiorAngle * 1e7));
    EXPECT_LE(lengths.size(), 9u);
    EXPECT_LE(angles.size(), 18u);
    EXPECT_LE(lengths.size() + angles.size() + 1, 28u);
}

TEST(Domain, FilletsStayNearTheirCorners)
{
    const GraphWithBoundary G = ballSubgraph(host(), 0, 3);
    const DomainModel D = buildDomain(G, tiling());
    const double trim = D.geometry.trim();
    int fillets = 0;
    for (const auto& c : D.boundary)
        for (const auto& p : c.primitives) {
            if (p.kind != PrimitiveKind::Fillet)
                continue;
            ++fillets;
            for (int s = 0; s <= 20; ++s)
                EXPECT_LE(hypDistance(p.at(s / 20.0), p.fillet.corner), trim * (1.0 + 1e-9));
            EXPECT_LE(p.length, 2.0 * trim);
        }
    EXPECT_GT(fillets, 0);
}

TEST(Domain, BoundaryCurvesAreClosedAndContinuous)
{
    const GraphWithBoundary G = ballSubgraph(host(), 0, 3);
    const DomainModel D = buildDomain(G, tiling());
    for (const auto& c : D.boundary) {
        const auto& prims = c.primitives;
        for (std::size_t k = 0; k < prims.size(); ++k) {
            const DiskPoint end = prims[k].at(1.0);
            const DiskPoint next = prims[(k + 1) % prims.size()].at(0.0);
            EXPECT_LT(hypDistance(end, next), 1e-9);
        }
    }
}

TEST(Domain, RemovedBallsInsideTheirShrunkenTriangles)
{
    const GraphWithBoundary G = ballSubgraph(host(), 0, 3);
    const DomainModel D = buildDomain(G, tiling());
    for (std::size_t b = 0; b < D.balls.size(); ++b) {
        const HypTriangle& tri = D.shrunk[D.localOf(D.ballHosts[b])];
        for (int s = 0; s < 3; ++s) {
            const auto seg = tri.sideSegment(s);
            EXPECT_GT(distanceToLine(D.balls[b].center, seg.p, seg.q), D.balls[b].radius);
        }
        EXPECT_TRUE(G.isBoundary(G.localIndex(D.ballHosts[b])));
    }
}

TEST(StructuralCheck, PassesOnBalls)
{
    for (int radius = 1; radius <= 4; ++radius) {
        const GraphWithBoundary G = ballSubgraph(host(), 0, radius);
        const StructuralReport rep = structuralEquivalenceCheck(buildDomain(G, tiling()), G);
        EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures.front());
    }
}

TEST(StructuralCheck, DeletedQuadrilateralIsReportedOnItsEdge)
{
    const GraphWithBoundary G = ballSubgraph(host(), 0, 2);
    const DomainModel D = buildDomain(G, tiling());
    int quad = -1;
    for (std::size_t p = 0; p < D.pieces.size() && quad < 0; ++p)
        if (D.pieces[p].kind == PieceKind::Quadrilateral)
            quad = static_cast<int>(p);
    ASSERT_GE(quad, 0);
    const auto hosts = D.pieces[quad].hosts;
    const StructuralReport rep = structuralEquivalenceCheck(withoutPiece(D, quad), G);
    EXPECT_FALSE(rep.ok);
    const std::string edge = std::to_string(hosts[0]) + "-" + std::to_string(hosts[1]);
    bool named = false;
    for (const auto& f : rep.failures)
        named = named || f.find(edge) != std::string::npos;
    EXPECT_TRUE(named) << "failures do not mention edge " << edge;
}

TEST(DomainLocator, ClassifiesBoundaryBallsAndCenters)
{
    const GraphWithBoundary G = ballSubgraph(host(), 0, 2);
    const DomainModel D = buildDomain(G, tiling());
    const DomainLocator loc(D);
    for (const auto& c : D.boundary)
        for (const auto& p : c.primitives)
            for (int s = 0; s <= 8; ++s)
                EXPECT_TRUE(loc.contains(p.at(s / 8.0)));
    for (int i = 0; i < G.size(); ++i) {
        const DiskPoint centre = tiling().tiles[G.hostId(i)].incenter;
        EXPECT_EQ(loc.contains(centre), !G.isBoundary(i));
        EXPECT_EQ(loc.inRemovedBall(centre), G.isBoundary(i));
    }
    EXPECT_FALSE(loc.contains(DiskPoint(0.95, 0.0)));
}

TEST(Domain, RequiresHostBackReferences)
{
    const GraphWithBoundary G(1, 2, {{0, 1}, {0, 2}});
    EXPECT_THROW(buildDomain(G, tiling()), Error);
}
