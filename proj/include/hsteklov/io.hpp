#pragma once

// JSON, CSV and SVG renderings of tilings, subgraphs, spectra, domains and
// discretizations.

#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsteklov/discretize.hpp"
#include "hsteklov/domain.hpp"
#include "hsteklov/graph.hpp"
#include "hsteklov/steklov.hpp"
#include "hsteklov/tiling.hpp"

namespace hsteklov::io {

using nlohmann::json;

inline json point(const DiskPoint& p) { return json::array({p.x(), p.y()}); }

/// Shortest round-trip decimal form; identical input gives identical text.
inline std::string number(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline void writeText(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Config, "cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------- JSON

inline json toJson(const Tiling& t)
{
    json tiles = json::array();
    for (const auto& tile : t.tiles) {
        tiles.push_back({{"id", tile.id},
                         {"depth", tile.depth},
                         {"vertices", json::array({point(tile.triangle.vertices[0]), point(tile.triangle.vertices[1]),
                                                   point(tile.triangle.vertices[2])})},
                         {"incenter", point(tile.incenter)},
                         {"neighbors", tile.neighbors},
                         {"corners", tile.corners}});
    }
    return {{"p", t.p},
            {"q", t.q},
            {"r", t.r},
            {"max_depth", t.maxDepth},
            {"inradius", t.seedIncircle.radius},
            {"tile_count", t.tiles.size()},
            {"vertex_count", t.vertices.size()},
            {"tiles", tiles}};
}

inline json toJson(const GraphWithBoundary& G)
{
    json vertices = json::array();
    for (int v = 0; v < G.size(); ++v)
        vertices.push_back({{"index", v},
                            {"host", G.hasHost() ? G.hostId(v) : v},
                            {"role", G.isBoundary(v) ? "boundary" : "interior"},
                            {"degree", G.degree(v)}});
    return {{"interior_count", G.interiorCount()},
            {"boundary_count", G.boundaryCount()},
            {"edge_count", G.edges().size()},
            {"vertices", vertices},
            {"edges", G.edges()}};
}

inline json toJson(const SteklovSpectrum& s)
{
    return {{"eigenvalues", s.eigenvalues},
            {"residuals", s.residuals},
            {"max_residual", s.maxResidual()},
            {"asymmetry", s.asymmetry},
            {"raw_smallest", s.rawSmallest}};
}

inline json toJson(const DomainModel& D)
{
    json pieces = json::array();
    for (const auto& pc : D.pieces) {
        json corners = json::array();
        for (int c : pc.corners)
            corners.push_back(point(D.corners[c].position));
        json entry{{"kind", to_string(pc.kind)}, {"hosts", pc.hosts}, {"corners", corners}};
        if (pc.kind == PieceKind::CycleGon)
            entry["tiling_vertex"] = pc.tilingVertex;
        pieces.push_back(entry);
    }
    json balls = json::array();
    for (std::size_t b = 0; b < D.balls.size(); ++b)
        balls.push_back({{"host", D.ballHosts[b]}, {"center", point(D.balls[b].center)}, {"radius", D.balls[b].radius}});
    const BoundaryBreakdown bb = boundaryBreakdown(D);
    return {{"p", D.p},
            {"q", D.q},
            {"r", D.r},
            {"corner_mode", D.mode == CornerMode::Smooth ? "smooth" : "sharp"},
            {"rho", D.geometry.rho()},
            {"lambda", D.geometry.lambda},
            {"segment_classes", D.geometry.segmentClasses},
            {"piece_counts",
             {{"triangles", D.pieceCount(PieceKind::Triangle)},
              {"quadrilaterals", D.pieceCount(PieceKind::Quadrilateral)},
              {"cycle_gons", D.pieceCount(PieceKind::CycleGon)}}},
            {"boundary_components", D.componentCount()},
            {"polygonal_components", D.polygonalComponents},
            {"boundary_length",
             {{"total", boundaryLength(D)},
              {"segments", bb.segments},
              {"fillets", bb.fillets},
              {"circles", bb.circles},
              {"segment_count", bb.segmentCount},
              {"fillet_count", bb.filletCount},
              {"circle_count", bb.circleCount}}},
            {"pieces", pieces},
            {"removed_balls", balls}};
}

inline json toJson(const RoughIsometryReport& r)
{
    json witnesses = json::array();
    for (const auto& w : r.witnessPairs)
        witnesses.push_back({{"source", w.source},
                             {"target", w.target},
                             {"source_distance", w.sourceDistance},
                             {"target_distance", w.targetDistance}});
    return {{"c1", r.c1},
            {"c2", r.c2},
            {"c3", r.c3},
            {"boundary_c1", r.boundaryC1},
            {"boundary_c2", r.boundaryC2},
            {"boundary_to_boundary", r.boundaryToBoundary},
            {"boundary_onto", r.boundaryOnto},
            {"surjective", r.surjective},
            {"sampled", r.sampled},
            {"pairs_checked", r.pairsChecked},
            {"witness_pairs", witnesses}};
}

inline json toJson(const DiscretizationGraph& dg)
{
    json vertices = json::array();
    for (int v = 0; v < dg.size(); ++v) {
        const char* role = v < dg.copyCount ? "collar" : (v < dg.interiorCount() ? "interior" : "boundary");
        vertices.push_back({{"position", point(dg.positions[v])}, {"role", role}});
    }
    return {{"epsilon", dg.epsilon},
            {"collar_copies", dg.copyCount},
            {"bulk_interior", dg.bulkCount},
            {"boundary", dg.boundaryCount},
            {"vertices", vertices},
            {"edges", dg.graph.edges()}};
}

// ---------------------------------------------------------------- CSV

inline std::string spectrumCsv(const SteklovSpectrum& s)
{
    std::ostringstream os;
    os << "k,sigma,residual\n";
    for (int k = 0; k < s.size(); ++k)
        os << k << ',' << number(s.eigenvalues[k]) << ',' << number(s.residuals[k]) << '\n';
    return os.str();
}

inline std::string tilingCsv(const Tiling& t)
{
    std::ostringstream os;
    os << "id,depth,incenter_x,incenter_y,n0,n1,n2\n";
    for (const auto& tile : t.tiles)
        os << tile.id << ',' << tile.depth << ',' << number(tile.incenter.x()) << ',' << number(tile.incenter.y())
           << ',' << tile.neighbors[0] << ',' << tile.neighbors[1] << ',' << tile.neighbors[2] << '\n';
    return os.str();
}

inline std::string graphCsv(const GraphWithBoundary& G)
{
    std::ostringstream os;
    os << "index,host,role,degree\n";
    for (int v = 0; v < G.size(); ++v)
        os << v << ',' << (G.hasHost() ? G.hostId(v) : v) << ',' << (G.isBoundary(v) ? "boundary" : "interior") << ','
           << G.degree(v) << '\n';
    return os.str();
}

inline std::string domainCsv(const DomainModel& D)
{
    std::ostringstream os;
    os << "piece,kind,hosts\n";
    for (std::size_t i = 0; i < D.pieces.size(); ++i) {
        os << i << ',' << to_string(D.pieces[i].kind) << ',';
        for (std::size_t h = 0; h < D.pieces[i].hosts.size(); ++h)
            os << (h ? " " : "") << D.pieces[i].hosts[h];
        os << '\n';
    }
    return os.str();
}

inline std::string discretizationCsv(const DiscretizationGraph& dg)
{
    std::ostringstream os;
    os << "vertex,role,x,y\n";
    for (int v = 0; v < dg.size(); ++v) {
        const char* role = v < dg.copyCount ? "collar" : (v < dg.interiorCount() ? "interior" : "boundary");
        os << v << ',' << role << ',' << number(dg.positions[v].x()) << ',' << number(dg.positions[v].y()) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------- SVG

/// Poincare disk drawing in a [-1.05, 1.05]^2 view box with y pointing up.
class SvgCanvas {
public:
    explicit SvgCanvas(int pixels = 900) : pixels_(pixels)
    {
        body_ << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.003\"/>\n";
    }

    void polyline(const std::vector<DiskPoint>& pts, const std::string& stroke, double width, bool closed = false,
                  const std::string& fill = "none")
    {
        body_ << (closed ? "<polygon" : "<polyline") << " points=\"";
        for (const auto& p : pts)
            body_ << number(p.x()) << ',' << number(p.y()) << ' ';
        body_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
    }

    void geodesic(const DiskPoint& a, const DiskPoint& b, const std::string& stroke, double width)
    {
        polyline(sampledSegment(a, b), stroke, width);
    }

    /// Filled polygon with geodesic sides.
    void geodesicPolygon(const std::vector<DiskPoint>& corners, const std::string& fill, const std::string& stroke,
                         double width)
    {
        std::vector<DiskPoint> pts;
        for (std::size_t k = 0; k < corners.size(); ++k) {
            auto side = sampledSegment(corners[k], corners[(k + 1) % corners.size()]);
            pts.insert(pts.end(), side.begin(), side.end() - 1);
        }
        polyline(pts, stroke, width, true, fill);
    }

    void circle(const HypCircle& c, const std::string& fill, const std::string& stroke, double width)
    {
        const auto [center, radius] = c.euclidean();
        body_ << "<circle cx=\"" << number(center.real()) << "\" cy=\"" << number(center.imag()) << "\" r=\""
              << number(radius) << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
              << "\"/>\n";
    }

    void dot(const DiskPoint& p, double r, const std::string& fill)
    {
        body_ << "<circle cx=\"" << number(p.x()) << "\" cy=\"" << number(p.y()) << "\" r=\"" << r << "\" fill=\""
              << fill << "\"/>\n";
    }

    void cross(const DiskPoint& p, double r, const std::string& stroke)
    {
        body_ << "<path d=\"M" << number(p.x() - r) << ' ' << number(p.y() - r) << " L" << number(p.x() + r) << ' '
              << number(p.y() + r) << " M" << number(p.x() - r) << ' ' << number(p.y() + r) << " L"
              << number(p.x() + r) << ' ' << number(p.y() - r) << "\" stroke=\"" << stroke
              << "\" stroke-width=\"" << 0.4 * r << "\" fill=\"none\"/>\n";
    }

    std::string str() const
    {
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels_ << "\" height=\"" << pixels_
           << "\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n<g transform=\"scale(1,-1)\">\n"
           << body_.str() << "</g>\n</svg>\n";
        return os.str();
    }

private:
    static std::vector<DiskPoint> sampledSegment(const DiskPoint& a, const DiskPoint& b, int n = 12)
    {
        std::vector<DiskPoint> pts;
        for (int i = 0; i <= n; ++i)
            pts.push_back(pointAlongSegment({a, b}, static_cast<double>(i) / n));
        return pts;
    }

    int pixels_;
    std::ostringstream body_;
};

inline void drawTiles(SvgCanvas& svg, const Tiling& t, const std::vector<int>& tiles, const std::string& fill)
{
    for (int id : tiles) {
        const auto& v = t.tiles[id].triangle.vertices;
        svg.geodesicPolygon({v[0], v[1], v[2]}, fill, "#999", 0.002);
    }
}

inline std::string tilingSvg(const Tiling& t)
{
    SvgCanvas svg;
    std::vector<int> all(t.tiles.size());
    std::iota(all.begin(), all.end(), 0);
    drawTiles(svg, t, all, "none");
    return svg.str();
}

/// Interior vertices as dots, boundary vertices as crosses.
inline void drawVertices(SvgCanvas& svg, const Tiling& t, const GraphWithBoundary& G)
{
    for (int v = 0; v < G.size(); ++v) {
        const DiskPoint& c = t.tiles[G.hostId(v)].incenter;
        if (G.isBoundary(v))
            svg.cross(c, 0.008, "#c00");
        else
            svg.dot(c, 0.006, "#036");
    }
}

inline std::string subgraphSvg(const Tiling& t, const GraphWithBoundary& G)
{
    SvgCanvas svg;
    std::vector<int> all(t.tiles.size());
    std::iota(all.begin(), all.end(), 0);
    drawTiles(svg, t, all, "none");
    for (const auto& [a, b] : G.edges())
        svg.geodesic(t.tiles[G.hostId(a)].incenter, t.tiles[G.hostId(b)].incenter, "#036", 0.003);
    drawVertices(svg, t, G);
    return svg.str();
}

inline void drawDomain(SvgCanvas& svg, const DomainModel& D)
{
    for (int pi = 0; pi < static_cast<int>(D.pieces.size()); ++pi)
        svg.geodesicPolygon(D.polygon(pi), "#cde", "none", 0.0);
    for (const auto& curve : D.boundary) {
        for (const auto& prim : curve.primitives) {
            if (prim.kind == PrimitiveKind::Circle) {
                svg.circle(prim.circle, "#fff", "#024", 0.002);
                continue;
            }
            std::vector<DiskPoint> pts;
            for (int i = 0; i <= 12; ++i)
                pts.push_back(prim.at(i / 12.0));
            svg.polyline(pts, "#024", 0.002);
        }
    }
}

inline std::string domainSvg(const Tiling& t, const GraphWithBoundary& G, const DomainModel& D)
{
    SvgCanvas svg;
    std::vector<int> all(t.tiles.size());
    std::iota(all.begin(), all.end(), 0);
    drawTiles(svg, t, all, "none");
    drawDomain(svg, D);
    drawVertices(svg, t, G);
    return svg.str();
}

inline std::string discretizationSvg(const Tiling& t, const GraphWithBoundary& G, const DomainModel& D,
                                     const DiscretizationGraph& dg)
{
    SvgCanvas svg;
    drawTiles(svg, t, G.hostIds(), "none");
    drawDomain(svg, D);
    const double r = 0.15 * dg.epsilon;
    for (int v = 0; v < dg.size(); ++v) {
        const char* color = v < dg.copyCount ? "#e80" : (v < dg.interiorCount() ? "#036" : "#c00");
        svg.dot(dg.positions[v], r, color);
    }
    return svg.str();
}

} // namespace hsteklov::io
