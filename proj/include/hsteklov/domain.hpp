#pragma once

// Hyperbolic domain attached to a subgraph of the triangle-tiling graph.
//
// Every vertex of the closure contributes a shrunken copy T' of its tile,
// every subgraph edge a connector quadrilateral between the two facing sides,
// and every tiling vertex whose surrounding tiles form a closed cycle in the
// subgraph a 2n-gon. Balls of radius rho/2 (rho = inradius of T') are removed
// around boundary vertices and the polygonal corners are rounded by circular
// fillets confined to a lambda/10 neighborhood.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hsteklov/graph.hpp"
#include "hsteklov/hypgeo.hpp"
#include "hsteklov/spatial.hpp"
#include "hsteklov/tiling.hpp"

namespace hsteklov {

inline constexpr double kShrinkFactor = 0.9;
inline constexpr double kBoundarySlack = 1e-12;

/// Moves each vertex towards the incenter so its distance becomes 9/10.
inline HypTriangle shrinkTriangle(const HypTriangle& t)
{
    const Incircle in = incenterAndInradius(t);
    std::array<DiskPoint, 3> v;
    for (int i = 0; i < 3; ++i)
        v[i] = pointAlongSegment({in.center, t.vertices[i]}, kShrinkFactor);
    return HypTriangle::fromVertices(v[0], v[1], v[2]);
}

/// Quantities that depend only on (p, q, r).
struct ShrunkenGeometry {
    HypTriangle seedShrunk;
    Incircle shrunkIncircle;
    /// Lengths of the boundary segment classes: the three sides of T', then
    /// the short connector sides (tile side s, endpoint corner c) in the order
    /// (0,1) (0,2) (1,2) (1,0) (2,0) (2,1).
    std::array<double, 9> segmentClasses{};
    double lambda = 0.0;

    double rho() const { return shrunkIncircle.radius; }
    double ballRadius() const { return 0.5 * shrunkIncircle.radius; }
    double trim() const { return 0.1 * lambda; }
};

inline ShrunkenGeometry shrunkenGeometry(const Tiling& t)
{
    ShrunkenGeometry g;
    const HypTriangle& seed = t.seed().triangle;
    g.seedShrunk = shrinkTriangle(seed);
    g.shrunkIncircle = incenterAndInradius(g.seedShrunk);
    for (int i = 0; i < 3; ++i)
        g.segmentClasses[i] = g.seedShrunk.side(i);
    int k = 3;
    for (int s = 0; s < 3; ++s) {
        const GeodesicSegment side = seed.sideSegment(s);
        for (int c : {(s + 1) % 3, (s + 2) % 3}) {
            const DiskPoint x = g.seedShrunk.vertices[c];
            g.segmentClasses[k++] = hypDistance(x, reflectAcross(side, x));
        }
    }
    g.lambda = *std::min_element(g.segmentClasses.begin(), g.segmentClasses.end());
    return g;
}

enum class PieceKind { Triangle, Quadrilateral, CycleGon };

inline const char* to_string(PieceKind k)
{
    switch (k) {
    case PieceKind::Triangle: return "triangle";
    case PieceKind::Quadrilateral: return "quadrilateral";
    case PieceKind::CycleGon: return "cycle-gon";
    }
    return "?";
}

/// A corner of some T': the shrunken image of corner `type` of tile `host`.
struct DomainCorner {
    int host = -1;
    int type = 0;
    DiskPoint position;
};

struct Piece {
    PieceKind kind = PieceKind::Triangle;
    std::vector<int> corners; // counter-clockwise, indices into DomainModel::corners
    /// Triangle: {w}. Quadrilateral: {v1, v2} with v1 < v2. Cycle-gon: the
    /// surrounding tile centers in cyclic order. All host ids.
    std::vector<int> hosts;
    int tilingVertex = -1;
};

enum class CornerMode { Smooth, Sharp };
enum class PrimitiveKind { Segment, Fillet, Circle };

inline const char* to_string(PrimitiveKind k)
{
    switch (k) {
    case PrimitiveKind::Segment: return "segment";
    case PrimitiveKind::Fillet: return "fillet";
    case PrimitiveKind::Circle: return "circle";
    }
    return "?";
}

/// Circular arc tangent to both sides of a polygon corner at distance `trim`
/// from it. Stored in the frame where the corner is the origin; there the
/// sides are straight rays and the arc is a Euclidean circle arc.
struct FilletArc {
    DiskPoint corner;
    HypIsometry toLocal;
    Complex center;           // local Euclidean center
    double radius = 0.0;      // local Euclidean radius
    double startAngle = 0.0;  // angle (about center) of the entry trim point
    double sweep = 0.0;       // signed sweep to the exit trim point
    double interiorAngle = 0.0;
    bool reflex = false;
    Complex entry, exit;      // local trim points

    Complex localAt(double u) const { return center + std::polar(radius, startAngle + u * sweep); }
    DiskPoint at(double u) const { return DiskPoint(toLocal.inverse().apply(localAt(u))); }

    double length() const
    {
        // Hyperbolic length element 2|dz| / (1 - |z|^2) in the local frame.
        const auto f = [&](double a) {
            const Complex z = center + std::polar(radius, a);
            return 2.0 * radius / (1.0 - std::norm(z));
        };
        const double a0 = std::min(startAngle, startAngle + sweep);
        const double a1 = std::max(startAngle, startAngle + sweep);
        return integrate(f, a0, a1, 1e-13);
    }

    /// Local point in the region between the corner and the arc, enlarged by
    /// `slack` (Euclidean, local frame) on every side when positive.
    bool inCornerRegion(Complex local, double slack = 0.0) const
    {
        // Triangle (0, entry, exit) minus the fillet disk.
        auto cross = [](Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); };
        auto unit = [](Complex a) { return a / std::abs(a); };
        const double s1 = cross(unit(entry), local);
        const double s2 = cross(unit(exit - entry), local - entry);
        const double s3 = cross(unit(-exit), local - exit);
        const bool inside = (s1 >= -slack && s2 >= -slack && s3 >= -slack) || (s1 <= slack && s2 <= slack && s3 <= slack);
        return inside && std::abs(local - center) > radius - slack;
    }
};

/// Returns nullopt when the corner is straight (no rounding needed).
inline std::optional<FilletArc> makeFillet(const DiskPoint& prev, const DiskPoint& corner, const DiskPoint& next,
                                           double trim)
{
    const double pi = std::numbers::pi;
    FilletArc f;
    f.corner = corner;
    f.toLocal = HypIsometry::toOrigin(corner);
    const double out = std::arg(f.toLocal.apply(next.z()));
    const double in = std::arg(f.toLocal.apply(prev.z()));
    // Interior lies to the left of travel: counter-clockwise from `out` to `in`.
    f.interiorAngle = std::fmod(in - out + 4.0 * pi, 2.0 * pi);
    if (std::abs(f.interiorAngle - pi) < 1e-9)
        return std::nullopt;
    f.reflex = f.interiorAngle > pi;
    const double wedge = f.reflex ? 2.0 * pi - f.interiorAngle : f.interiorAngle;
    const double bisector = f.reflex ? out - 0.5 * wedge : out + 0.5 * wedge;
    const double re = radiusAtDistance(trim);
    f.center = std::polar(re / std::cos(0.5 * wedge), bisector);
    f.radius = re * std::tan(0.5 * wedge);
    f.entry = std::polar(re, in);
    f.exit = std::polar(re, out);
    const double a0 = std::arg(f.entry - f.center);
    const double a1 = std::arg(f.exit - f.center);
    const double am = std::arg(-f.center);
    f.startAngle = a0;
    f.sweep = std::remainder(am - a0, 2.0 * pi) + std::remainder(a1 - am, 2.0 * pi);
    return f;
}

struct BoundaryPrimitive {
    PrimitiveKind kind = PrimitiveKind::Segment;
    GeodesicSegment segment;
    FilletArc fillet;
    HypCircle circle;
    int piece = -1;    // segment: piece whose edge this is
    int corner = -1;   // fillet: domain corner id
    int ballHost = -1; // circle: host id of the boundary vertex
    double length = 0.0;

    /// Point at parameter u in [0, 1] along the direction of travel (domain on
    /// the left). Uniform in arc length for segments and circles.
    DiskPoint at(double u) const
    {
        switch (kind) {
        case PrimitiveKind::Segment: return pointAlongSegment(segment, std::clamp(u, 0.0, 1.0));
        case PrimitiveKind::Fillet: return fillet.at(u);
        case PrimitiveKind::Circle:
        default: {
            // Clockwise around the removed ball so the domain stays on the left.
            const Complex local = std::polar(radiusAtDistance(circle.radius), -2.0 * std::numbers::pi * u);
            return DiskPoint(HypIsometry::toOrigin(circle.center).inverse().apply(local));
        }
        }
    }
};

struct BoundaryCurve {
    std::vector<BoundaryPrimitive> primitives;
    bool isCircle = false;

    double length() const
    {
        double s = 0.0;
        for (const auto& p : primitives)
            s += p.length;
        return s;
    }
};

/// Tile T_w intersected with the domain, recorded by the pieces it meets.
struct Cobblestone {
    int host = -1;
    int triangle = -1;       // piece index of T'_w
    std::vector<int> quads;  // connector pieces touching T'_w
    std::vector<int> gons;   // cycle-gons around corners of T_w
    int ball = -1;           // removed-ball index when w is a boundary vertex
};

struct DomainModel {
    int p = 0, q = 0, r = 0;
    CornerMode mode = CornerMode::Smooth;
    ShrunkenGeometry geometry;
    std::vector<int> hosts;              // closure vertices, graph-local order
    std::vector<bool> boundaryHost;      // parallel to hosts
    std::vector<HypTriangle> shrunk;     // T'_w, parallel to hosts
    std::vector<DomainCorner> corners;   // 3 per host: index 3 i + type
    std::vector<Piece> pieces;
    std::vector<HypCircle> balls;        // removed balls
    std::vector<int> ballHosts;          // parallel to balls
    std::vector<BoundaryCurve> boundary; // polygonal curves first, then circles
    int polygonalComponents = 0;
    std::vector<Cobblestone> cobblestones; // parallel to hosts

    int pieceCount(PieceKind k) const
    {
        return static_cast<int>(std::count_if(pieces.begin(), pieces.end(), [k](const Piece& pc) { return pc.kind == k; }));
    }
    int componentCount() const { return static_cast<int>(boundary.size()); }
    int localOf(int host) const
    {
        auto it = std::find(hosts.begin(), hosts.end(), host);
        return it == hosts.end() ? -1 : static_cast<int>(it - hosts.begin());
    }
    std::vector<DiskPoint> polygon(int piece) const
    {
        std::vector<DiskPoint> out;
        for (int c : pieces[piece].corners)
            out.push_back(corners[c].position);
        return out;
    }
};

namespace detail {

inline double signedArea(const std::vector<DiskPoint>& poly)
{
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& u = poly[i];
        const auto& v = poly[(i + 1) % poly.size()];
        a += u.x() * v.y() - v.x() * u.y();
    }
    return 0.5 * a;
}

inline void orientCounterClockwise(Piece& piece, const std::vector<DomainCorner>& corners)
{
    std::vector<DiskPoint> poly;
    for (int c : piece.corners)
        poly.push_back(corners[c].position);
    if (signedArea(poly) < 0.0)
        std::reverse(piece.corners.begin(), piece.corners.end());
}

inline int cornerAt(const Tile& tile, int tilingVertex)
{
    for (int c = 0; c < 3; ++c)
        if (tile.corners[c] == tilingVertex)
            return c;
    return -1;
}

} // namespace detail

inline DomainModel buildDomain(const GraphWithBoundary& G, const Tiling& t, CornerMode mode = CornerMode::Smooth)
{
    if (!G.hasHost())
        throw Error(ErrorKind::Construction, "domain needs a subgraph with host back-references");
    DomainModel D;
    D.p = t.p;
    D.q = t.q;
    D.r = t.r;
    D.mode = mode;
    D.geometry = shrunkenGeometry(t);
    D.hosts = G.hostIds();
    const int n = G.size();
    for (int i = 0; i < n; ++i) {
        const int host = D.hosts[i];
        if (host < 0 || host >= static_cast<int>(t.tiles.size()))
            throw Error(ErrorKind::Construction, "no tile for host vertex " + std::to_string(host));
        D.boundaryHost.push_back(G.isBoundary(i));
        const HypTriangle tri = D.geometry.seedShrunk.mapped(t.tiles[host].isometry);
        D.shrunk.push_back(tri);
        for (int c = 0; c < 3; ++c)
            D.corners.push_back({host, c, tri.vertices[c]});
    }

    // Shrunken triangles.
    for (int i = 0; i < n; ++i) {
        Piece pc;
        pc.kind = PieceKind::Triangle;
        pc.corners = {3 * i, 3 * i + 1, 3 * i + 2};
        pc.hosts = {D.hosts[i]};
        detail::orientCounterClockwise(pc, D.corners);
        D.pieces.push_back(pc);
    }

    // Connector quadrilaterals, one per subgraph edge.
    for (const auto& [a, b] : G.edges()) {
        const Tile& ta = t.tiles[D.hosts[a]];
        const Tile& tb = t.tiles[D.hosts[b]];
        int side = -1;
        for (int s = 0; s < 3; ++s)
            if (ta.neighbors[s] == tb.id)
                side = s;
        if (side < 0)
            throw Error(ErrorKind::Construction, "subgraph edge between non-adjacent tiles");
        const int ca = (side + 1) % 3, cb = (side + 2) % 3;
        const int da = detail::cornerAt(tb, ta.corners[ca]);
        const int db = detail::cornerAt(tb, ta.corners[cb]);
        if (da < 0 || db < 0)
            throw Error(ErrorKind::Construction, "adjacent tiles do not share a side");
        Piece pc;
        pc.kind = PieceKind::Quadrilateral;
        pc.corners = {3 * a + ca, 3 * a + cb, 3 * b + db, 3 * b + da};
        pc.hosts = {std::min(D.hosts[a], D.hosts[b]), std::max(D.hosts[a], D.hosts[b])};
        detail::orientCounterClockwise(pc, D.corners);
        D.pieces.push_back(pc);
    }

    // Cycle-gons around tiling vertices whose tiles close up in the subgraph.
    std::set<int> touched;
    for (int host : D.hosts)
        for (int c = 0; c < 3; ++c)
            touched.insert(t.tiles[host].corners[c]);
    for (int z : touched) {
        const TilingVertex& tv = t.vertices[z];
        if (!tv.complete())
            continue;
        std::vector<int> locals;
        for (int tile : tv.tiles)
            locals.push_back(G.localIndex(tile));
        if (std::any_of(locals.begin(), locals.end(), [](int l) { return l < 0; }))
            continue;
        bool closed = true;
        for (std::size_t k = 0; k < locals.size() && closed; ++k)
            closed = G.adjacent(locals[k], locals[(k + 1) % locals.size()]);
        if (!closed)
            continue;
        Piece pc;
        pc.kind = PieceKind::CycleGon;
        pc.tilingVertex = z;
        for (std::size_t k = 0; k < locals.size(); ++k) {
            pc.corners.push_back(3 * locals[k] + detail::cornerAt(t.tiles[tv.tiles[k]], z));
            pc.hosts.push_back(tv.tiles[k]);
        }
        detail::orientCounterClockwise(pc, D.corners);
        D.pieces.push_back(pc);
    }

    // Removed balls around boundary vertices.
    for (int i = 0; i < n; ++i) {
        if (!G.isBoundary(i))
            continue;
        D.balls.push_back({t.tiles[D.hosts[i]].incenter, D.geometry.ballRadius()});
        D.ballHosts.push_back(D.hosts[i]);
    }

    // Polygonal boundary: directed piece edges without a reverse partner.
    std::map<std::pair<int, int>, int> directed;
    for (int pi = 0; pi < static_cast<int>(D.pieces.size()); ++pi) {
        const auto& cs = D.pieces[pi].corners;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const std::pair<int, int> e{cs[k], cs[(k + 1) % cs.size()]};
            if (!directed.emplace(e, pi).second)
                throw Error(ErrorKind::Construction, "overlapping pieces along corner pair " +
                                                         std::to_string(e.first) + "-" + std::to_string(e.second));
        }
    }
    std::map<int, std::pair<int, int>> nextOf; // from -> (to, piece)
    for (const auto& [e, pi] : directed) {
        if (directed.count({e.second, e.first}))
            continue;
        if (!nextOf.emplace(e.first, std::make_pair(e.second, pi)).second)
            throw Error(ErrorKind::Construction, "pinched boundary at corner " + std::to_string(e.first));
    }
    std::set<int> used;
    const double trim = D.geometry.trim();
    for (const auto& [start, unused] : nextOf) {
        if (used.count(start))
            continue;
        std::vector<int> cycle;
        std::vector<int> owners;
        for (int cur = start; !used.count(cur);) {
            used.insert(cur);
            cycle.push_back(cur);
            auto it = nextOf.find(cur);
            if (it == nextOf.end())
                throw Error(ErrorKind::Construction, "open boundary chain at corner " + std::to_string(cur));
            owners.push_back(it->second.second);
            cur = it->second.first;
        }
        const int m = static_cast<int>(cycle.size());
        auto pos = [&](int k) { return D.corners[cycle[((k % m) + m) % m]].position; };
        std::vector<std::optional<FilletArc>> fillets(m);
        if (mode == CornerMode::Smooth)
            for (int k = 0; k < m; ++k)
                fillets[k] = makeFillet(pos(k - 1), pos(k), pos(k + 1), trim);

        BoundaryCurve curve;
        for (int k = 0; k < m; ++k) {
            if (fillets[k]) {
                BoundaryPrimitive arc;
                arc.kind = PrimitiveKind::Fillet;
                arc.fillet = *fillets[k];
                arc.corner = cycle[k];
                arc.length = arc.fillet.length();
                curve.primitives.push_back(arc);
            }
            BoundaryPrimitive seg;
            seg.kind = PrimitiveKind::Segment;
            GeodesicSegment full{pos(k), pos(k + 1)};
            const double len = full.length();
            const double t0 = fillets[k] ? trim / len : 0.0;
            const double t1 = fillets[(k + 1) % m] ? 1.0 - trim / len : 1.0;
            seg.segment = {pointAlongSegment(full, t0), pointAlongSegment(full, t1)};
            seg.piece = owners[k];
            seg.length = seg.segment.length();
            curve.primitives.push_back(seg);
        }
        D.boundary.push_back(std::move(curve));
    }
    D.polygonalComponents = static_cast<int>(D.boundary.size());
    for (std::size_t b = 0; b < D.balls.size(); ++b) {
        BoundaryCurve curve;
        curve.isCircle = true;
        BoundaryPrimitive c;
        c.kind = PrimitiveKind::Circle;
        c.circle = D.balls[b];
        c.ballHost = D.ballHosts[b];
        c.length = circlePerimeter(c.circle);
        curve.primitives.push_back(c);
        D.boundary.push_back(std::move(curve));
    }

    // Cobblestones.
    D.cobblestones.resize(n);
    for (int i = 0; i < n; ++i) {
        D.cobblestones[i].host = D.hosts[i];
        D.cobblestones[i].triangle = i;
    }
    for (int pi = 0; pi < static_cast<int>(D.pieces.size()); ++pi) {
        const Piece& pc = D.pieces[pi];
        if (pc.kind == PieceKind::Triangle)
            continue;
        for (int host : pc.hosts) {
            auto& cb = D.cobblestones[D.localOf(host)];
            (pc.kind == PieceKind::Quadrilateral ? cb.quads : cb.gons).push_back(pi);
        }
    }
    for (std::size_t b = 0; b < D.ballHosts.size(); ++b)
        D.cobblestones[D.localOf(D.ballHosts[b])].ball = static_cast<int>(b);
    return D;
}

inline double boundaryLength(const DomainModel& D)
{
    double s = 0.0;
    for (const auto& c : D.boundary)
        s += c.length();
    return s;
}

struct BoundaryBreakdown {
    double segments = 0.0;
    double fillets = 0.0;
    double circles = 0.0;
    int segmentCount = 0;
    int filletCount = 0;
    int circleCount = 0;
};

inline BoundaryBreakdown boundaryBreakdown(const DomainModel& D)
{
    BoundaryBreakdown b;
    for (const auto& c : D.boundary) {
        for (const auto& p : c.primitives) {
            switch (p.kind) {
            case PrimitiveKind::Segment: b.segments += p.length; ++b.segmentCount; break;
            case PrimitiveKind::Fillet: b.fillets += p.length; ++b.filletCount; break;
            case PrimitiveKind::Circle: b.circles += p.length; ++b.circleCount; break;
            }
        }
    }
    return b;
}

/// Two cobblestones are adjacent when they share a connector quadrilateral.
inline bool cobblestonesAdjacent(const DomainModel& D, int localA, int localB)
{
    const auto& qa = D.cobblestones[localA].quads;
    const auto& qb = D.cobblestones[localB].quads;
    return std::any_of(qa.begin(), qa.end(),
                       [&](int piece) { return std::find(qb.begin(), qb.end(), piece) != qb.end(); });
}

struct StructuralReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string msg)
    {
        ok = false;
        failures.push_back(std::move(msg));
    }
};

/// Checks that the domain reproduces the subgraph: piece bijections,
/// cobblestone adjacency <=> graph adjacency, and one boundary circle inside
/// each boundary vertex's cobblestone.
inline StructuralReport structuralEquivalenceCheck(const DomainModel& D, const GraphWithBoundary& G)
{
    StructuralReport rep;
    const int n = G.size();
    if (static_cast<int>(D.hosts.size()) != n) {
        rep.fail("domain has " + std::to_string(D.hosts.size()) + " cobblestones for " + std::to_string(n) +
                 " closure vertices");
        return rep;
    }

    std::map<int, int> triangleOf;
    std::map<std::pair<int, int>, int> quadCount;
    for (const auto& pc : D.pieces) {
        if (pc.kind == PieceKind::Triangle)
            ++triangleOf[pc.hosts.at(0)];
        else if (pc.kind == PieceKind::Quadrilateral)
            ++quadCount[{pc.hosts.at(0), pc.hosts.at(1)}];
    }
    for (int i = 0; i < n; ++i) {
        const int h = G.hostId(i);
        if (triangleOf[h] != 1)
            rep.fail("vertex " + std::to_string(h) + " has " + std::to_string(triangleOf[h]) + " shrunken triangles");
    }
    if (static_cast<int>(triangleOf.size()) != n)
        rep.fail("triangle pieces reference vertices outside the closure");
    for (const auto& [a, b] : G.edges()) {
        const std::pair<int, int> key{std::min(G.hostId(a), G.hostId(b)), std::max(G.hostId(a), G.hostId(b))};
        const int c = quadCount.count(key) ? quadCount[key] : 0;
        if (c != 1)
            rep.fail("edge " + std::to_string(key.first) + "-" + std::to_string(key.second) + " has " +
                     std::to_string(c) + " connector quadrilaterals");
    }
    for (const auto& [key, c] : quadCount) {
        const int la = G.localIndex(key.first), lb = G.localIndex(key.second);
        if (la < 0 || lb < 0 || !G.adjacent(la, lb))
            rep.fail("quadrilateral " + std::to_string(key.first) + "-" + std::to_string(key.second) +
                     " does not correspond to a subgraph edge");
    }
    for (const auto& pc : D.pieces) {
        if (pc.kind != PieceKind::CycleGon)
            continue;
        const std::size_t m = pc.hosts.size();
        for (std::size_t k = 0; k < m; ++k) {
            const int la = G.localIndex(pc.hosts[k]), lb = G.localIndex(pc.hosts[(k + 1) % m]);
            if (la < 0 || lb < 0 || !G.adjacent(la, lb)) {
                rep.fail("cycle-gon at tiling vertex " + std::to_string(pc.tilingVertex) + " is not a closed cycle");
                break;
            }
        }
    }

    for (int a = 0; a < n; ++a) {
        const int la = D.localOf(G.hostId(a));
        for (int b = a + 1; b < n; ++b) {
            const int lb = D.localOf(G.hostId(b));
            const bool graphAdj = G.adjacent(a, b);
            const bool domAdj = la >= 0 && lb >= 0 && cobblestonesAdjacent(D, la, lb);
            if (graphAdj != domAdj)
                rep.fail("adjacency mismatch on edge " + std::to_string(G.hostId(a)) + "-" +
                         std::to_string(G.hostId(b)) + (graphAdj ? " (missing in domain)" : " (extra in domain)"));
        }
    }

    std::set<int> ballSet(D.ballHosts.begin(), D.ballHosts.end());
    if (ballSet.size() != D.ballHosts.size())
        rep.fail("a boundary vertex has more than one removed ball");
    for (int i = 0; i < n; ++i) {
        const int h = G.hostId(i);
        if (G.isBoundary(i) != (ballSet.count(h) > 0))
            rep.fail("vertex " + std::to_string(h) + (G.isBoundary(i) ? " is boundary without a boundary circle"
                                                                        : " is interior but has a boundary circle"));
    }
    for (std::size_t b = 0; b < D.balls.size(); ++b) {
        const int l = D.localOf(D.ballHosts[b]);
        if (l < 0) {
            rep.fail("circle around " + std::to_string(D.ballHosts[b]) + " has no cobblestone");
            continue;
        }
        const HypTriangle& tri = D.shrunk[l];
        double clearance = 1e9;
        for (int s = 0; s < 3; ++s) {
            const auto seg = tri.sideSegment(s);
            clearance = std::min(clearance, distanceToLine(D.balls[b].center, seg.p, seg.q));
        }
        if (!tri.contains(D.balls[b].center) || clearance <= D.balls[b].radius)
            rep.fail("circle around " + std::to_string(D.ballHosts[b]) + " leaves its shrunken triangle");
    }
    return rep;
}

/// Point location in a domain: pieces, removed balls and fillet regions.
class DomainLocator {
public:
    explicit DomainLocator(const DomainModel& D, double cell = 0.02) : D_(&D), grid_(cell), cell_(cell)
    {
        for (int pi = 0; pi < static_cast<int>(D.pieces.size()); ++pi) {
            const auto poly = D.polygon(pi);
            PieceLines pl;
            for (std::size_t k = 0; k < poly.size(); ++k) {
                const GeodesicLine line(poly[k], poly[(k + 1) % poly.size()]);
                pl.lines.push_back(line);
                pl.signs.push_back(line.side(poly[(k + 2) % poly.size()]) > 0 ? 1.0 : -1.0);
            }
            lines_.push_back(std::move(pl));
            double x0 = 1, x1 = -1, y0 = 1, y1 = -1;
            for (const auto& v : poly) {
                x0 = std::min(x0, v.x()); x1 = std::max(x1, v.x());
                y0 = std::min(y0, v.y()); y1 = std::max(y1, v.y());
            }
            const double pad = 0.1 * std::max(x1 - x0, y1 - y0) + 1e-3;
            for (auto cx = cellOf(x0 - pad); cx <= cellOf(x1 + pad); ++cx)
                for (auto cy = cellOf(y0 - pad); cy <= cellOf(y1 + pad); ++cy)
                    cells_[key(cx, cy)].push_back(pi);
        }
        for (const auto& curve : D.boundary)
            for (const auto& prim : curve.primitives)
                if (prim.kind == PrimitiveKind::Fillet)
                    fillets_.push_back(&prim.fillet);
        for (int f = 0; f < static_cast<int>(fillets_.size()); ++f)
            grid_.insert(fillets_[f]->corner, f);
        for (int b = 0; b < static_cast<int>(D.balls.size()); ++b)
            ballGrid_.insert(D.balls[b].center, b);
    }

    /// Index of a piece containing the point (closed), or -1.
    int pieceAt(const DiskPoint& z, double tol = 1e-12) const
    {
        auto it = cells_.find(key(cellOf(z.x()), cellOf(z.y())));
        if (it == cells_.end())
            return -1;
        for (int pi : it->second)
            if (inPiece(pi, z, tol))
                return pi;
        return -1;
    }

    bool inPiece(int pi, const DiskPoint& z, double tol = 1e-12) const
    {
        const auto& pl = lines_[pi];
        for (std::size_t k = 0; k < pl.lines.size(); ++k)
            if (pl.signs[k] * pl.lines[k].side(z) < -tol)
                return false;
        return true;
    }

    bool inRemovedBall(const DiskPoint& z) const
    {
        return ballGrid_.forNear(z, D_->geometry.ballRadius() + 1e-9, [&](int b) {
            return hypDistance(z, D_->balls[b].center) < D_->balls[b].radius - 1e-12;
        });
    }

    /// Membership in the closed domain N.
    bool contains(const DiskPoint& z) const
    {
        if (inRemovedBall(z))
            return false;
        bool inside = pieceAt(z) >= 0;
        const double reach = D_->geometry.trim() + 1e-9;
        grid_.forNear(z, reach, [&](int f) {
            const FilletArc& arc = *fillets_[f];
            if (hypDistance(z, arc.corner) > reach)
                return false;
            // Closed domain: the arc itself belongs to N.
            const Complex local = arc.toLocal.apply(z.z());
            if (arc.inCornerRegion(local, arc.reflex ? kBoundarySlack : -kBoundarySlack)) {
                inside = arc.reflex;
                return true;
            }
            return false;
        });
        return inside;
    }

    /// Piece whose polygon is nearest to the point (the containing one if any).
    int nearestPiece(const DiskPoint& z) const
    {
        const int direct = pieceAt(z);
        if (direct >= 0)
            return direct;
        int best = -1;
        double bestDist = 1e300;
        for (int pi = 0; pi < static_cast<int>(D_->pieces.size()); ++pi) {
            const auto poly = D_->polygon(pi);
            for (std::size_t k = 0; k < poly.size(); ++k) {
                const double d = distanceToSegment(z, {poly[k], poly[(k + 1) % poly.size()]});
                if (d < bestDist) {
                    bestDist = d;
                    best = pi;
                }
            }
        }
        return best;
    }

private:
    struct PieceLines {
        std::vector<GeodesicLine> lines;
        std::vector<double> signs;
    };

    std::int64_t cellOf(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
    static std::uint64_t key(std::int64_t x, std::int64_t y)
    {
        return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
    }

    const DomainModel* D_;
    DiskGrid grid_;
    DiskGrid ballGrid_{0.02};
    double cell_;
    std::vector<PieceLines> lines_;
    std::vector<const FilletArc*> fillets_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

} // namespace hsteklov
