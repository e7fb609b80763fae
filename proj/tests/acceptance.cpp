// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "hsteklov/hsteklov.hpp"
#include "oracles.hpp"

using namespace hsteklov;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (pass)
                detail << "first failure: " << what;
            pass = false;
        }
    }
};

/// Spectrum structure over every instance computed by the other criteria.
struct SpectrumLedger {
    int instances = 0;
    int failures = 0;
    double worstAsymmetry = 0.0;
    double worstRaw = 0.0;
    double smallestSigma1 = 1e300;
    std::string firstFailure;

    void add(const std::string& name, int boundary, int size, double sigma0, double raw, double sigma1,
             double asymmetry)
    {
        ++instances;
        worstAsymmetry = std::max(worstAsymmetry, asymmetry);
        worstRaw = std::max(worstRaw, std::abs(raw));
        smallestSigma1 = std::min(smallestSigma1, sigma1);
        const bool ok = size == boundary && sigma0 == 0.0 && std::abs(raw) < 1e-10 && sigma1 > 1e-10 &&
                        asymmetry <= 1e-9 && raw >= -1e-9;
        if (!ok && failures++ == 0)
            firstFailure = name;
    }
    void add(const std::string& name, int boundary, const SteklovSpectrum& s)
    {
        add(name, boundary, s.size(), s.eigenvalues.at(0), s.rawSmallest, s.size() > 1 ? s.eigenvalues[1] : 0.0,
            s.asymmetry);
    }
    void add(const std::string& name, int boundary, const SpectrumHealth& h)
    {
        add(name, boundary, h.size, h.sigma0, h.rawSmallest, h.sigma1, h.asymmetry);
    }
};

SpectrumLedger ledger;

// ------------------------------------------------------------------ 1

void spectrumOracle(Outcome& o)
{
    const Tiling t = generateTiling(2, 3, 7, 4);
    const HostGraph g = buildHostGraph(t);
    std::set<std::vector<int>> interiors;
    for (int c = 0; c < static_cast<int>(g.size()); ++c)
        for (int radius = 0; radius <= 1; ++radius) {
            const auto ball = ballVertices(g, c, radius);
            interiors.insert(ball);
            if (ball.size() > 1)
                for (std::size_t drop = 0; drop < ball.size(); ++drop) {
                    auto rest = ball;
                    rest.erase(rest.begin() + drop);
                    interiors.insert(rest);
                }
        }
    int checked = 0;
    double worst = 0.0;
    for (const auto& omega : interiors) {
        GraphWithBoundary G;
        try {
            G = induceSubgraph(g, omega);
        } catch (const Error&) {
            continue; // disconnected or touching the untrusted frontier
        }
        if (G.size() > 12)
            continue;
        const SteklovSpectrum a = steklovSpectrum(G), b = rayleighOracle(G);
        ledger.add("oracle subgraph", G.boundaryCount(), a);
        o.require(a.size() == b.size(), "size mismatch");
        for (int k = 0; k < std::min(a.size(), b.size()); ++k)
            worst = std::max(worst, std::abs(a.eigenvalues[k] - b.eigenvalues[k]));
        ++checked;
    }
    o.require(checked > 0, "no subgraphs");
    o.require(worst <= 1e-8, "oracle deviation");
    o.detail << (o.pass ? "" : "; ") << checked << " subgraphs, max |sigma - oracle| = " << worst;
}

// ------------------------------------------------------------------ 2

void closedForms(Outcome& o)
{
    struct Case {
        const char* name;
        GraphWithBoundary G;
        std::vector<double> spectrum;
    };
    const Case cases[] = {
        {"path", GraphWithBoundary(1, 2, {{0, 1}, {0, 2}}), {0.0, 1.0}},
        {"star", GraphWithBoundary(1, 3, {{0, 1}, {0, 2}, {0, 3}}), {0.0, 1.0, 1.0}},
    };
    double worst = 0.0;
    for (const auto& c : cases) {
        const int n = c.G.size(), nb = c.G.boundaryCount();
        std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
        for (auto [a, b] : c.G.edges()) {
            L[a][a] += 1;
            L[b][b] += 1;
            L[a][b] -= 1;
            L[b][a] -= 1;
        }
        const auto hand = reference::schurComplement(L, nb);
        const Eigen::MatrixXd dtn = dtnMatrix(assembleLaplacian(c.G));
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j)
                worst = std::max(worst, std::abs(dtn(i, j) - hand[i][j]));
        const SteklovSpectrum s = steklovSpectrum(c.G);
        ledger.add(c.name, nb, s);
        o.require(s.size() == static_cast<int>(c.spectrum.size()), std::string(c.name) + " size");
        for (std::size_t k = 0; k < c.spectrum.size() && k < s.eigenvalues.size(); ++k)
            worst = std::max(worst, std::abs(s.eigenvalues[k] - c.spectrum[k]));
    }
    o.require(worst <= 1e-10, "closed-form deviation");
    o.detail << (o.pass ? "" : "; ") << "path {0,1}, star {0,1,1}, max deviation " << worst;
}

// ------------------------------------------------------------------ 4

void tilingValidity(Outcome& o)
{
    for (auto [p, q, r] : {std::tuple{2, 3, 7}, std::tuple{3, 3, 4}}) {
        const std::string name = "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
        const Tiling t = generateTiling(p, q, r, 5);
        const HostGraph g = buildHostGraph(t);
        double congruence = 0.0;
        for (const Tile& tile : t.tiles)
            for (int s = 0; s < 3; ++s)
                congruence = std::max(congruence, std::abs(tile.triangle.side(s) - t.seed().triangle.side(s)));
        o.require(congruence <= 1e-8, name + " congruence");
        int irregular = 0;
        for (int v = 0; v < static_cast<int>(g.size()); ++v)
            if (g.depthOf[v] <= 4 && g.degree(v) != 3)
                ++irregular;
        o.require(irregular == 0, name + " 3-regularity");
        const int words = reference::reflectionWordTileCount(p, q, r, 2);
        const int tiles = static_cast<int>(generateTiling(p, q, r, 2).tiles.size());
        o.require(words == tiles, name + " depth-2 count");
        o.detail << (o.detail.tellp() > 0 ? "; " : "") << name << " depth-2 tiles " << tiles << " (oracle " << words
                 << "), congruence " << congruence << ", irregular " << irregular;
    }
}

// ------------------------------------------------------------------ 5, 9

ExperimentConfig scalingConfig()
{
    ExperimentConfig cfg;
    cfg.depth = 9;
    cfg.radiusMin = 2;
    cfg.radiusMax = 6;
    cfg.kMax = 5;
    return cfg;
}

void scaling(Outcome& o)
{
    const ExperimentConfig cfg = scalingConfig();
    const ScalingReport rep = runScaling(cfg);
    o.require(rep.ok, "residual flagged");
    for (int k = 1; k <= 5; ++k) {
        const ScalingRow* first = rep.find(2, k);
        const ScalingRow* last = rep.find(6, k);
        o.require(first && last && first->defined && last->defined, "undefined cell");
        if (!first || !last)
            continue;
        const double growth = last->runningMax / first->runningMax;
        o.require(growth <= 1.5, "k=" + std::to_string(k) + " running max grew by " + std::to_string(growth));
        if (k <= 3)
            o.require(last->sigma < first->sigma, "k=" + std::to_string(k) + " no decay");
        o.detail << (o.detail.tellp() > 0 ? "; " : "") << "k=" << k << " max ratio growth " << growth;
    }
    // Spectra of the family for the structural criterion.
    const HostGraph g = buildHostGraph(generateTiling(cfg.p, cfg.q, cfg.r, cfg.depth));
    for (int radius = 0; radius <= cfg.maxBallRadius(); ++radius) {
        const GraphWithBoundary G = ballSubgraph(g, 0, radius);
        ledger.add("ball " + std::to_string(radius), G.boundaryCount(), steklovSpectrum(G));
    }
}

void determinism(Outcome& o, const fs::path& outDir)
{
    fs::create_directories(outDir);
    const ExperimentConfig cfg = scalingConfig();
    const fs::path a = outDir / "scaling_run1.csv", b = outDir / "scaling_run2.csv";
    io::writeText(a.string(), runScaling(cfg).csv());
    io::writeText(b.string(), runScaling(cfg).csv());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const std::string x = slurp(a), y = slurp(b);
    o.require(!x.empty() && x == y, "CSV outputs differ");
    o.detail << x.size() << " bytes, identical=" << (x == y ? "yes" : "no");
}

// ------------------------------------------------------------------ 6

int outerComponents(const DomainModel& D)
{
    std::map<std::pair<int, int>, int> uses;
    for (const Piece& pc : D.pieces)
        for (std::size_t k = 0; k < pc.corners.size(); ++k) {
            const int a = pc.corners[k], b = pc.corners[(k + 1) % pc.corners.size()];
            ++uses[{std::min(a, b), std::max(a, b)}];
        }
    reference::UnionFind uf(static_cast<int>(D.corners.size()));
    std::set<int> touched;
    for (const auto& [e, n] : uses)
        if (n == 1) {
            uf.unite(e.first, e.second);
            touched.insert(e.first);
        }
    std::set<int> roots;
    for (int c : touched)
        roots.insert(uf.find(c));
    return static_cast<int>(roots.size());
}

void domains(Outcome& o)
{
    const Tiling t = generateTiling(2, 3, 7, 6);
    const HostGraph g = buildHostGraph(t);
    auto checkDomain = [&](const std::string& name, const GraphWithBoundary& G) {
        const DomainModel D = buildDomain(G, t);
        o.require(D.pieceCount(PieceKind::Triangle) == G.size(), name + " triangles");
        o.require(D.pieceCount(PieceKind::Quadrilateral) == static_cast<int>(G.edges().size()), name + " quads");
        o.require(static_cast<int>(D.balls.size()) == G.boundaryCount(), name + " balls");
        const int outer = outerComponents(D);
        o.require(D.componentCount() == outer + G.boundaryCount(), name + " components");
        const double c4 = circlePerimeter({DiskPoint(), D.geometry.ballRadius()});
        o.require(boundaryLength(D) >= c4 * G.boundaryCount(), name + " length bound");
        o.require(structuralEquivalenceCheck(D, G).ok, name + " structural check");
        return D.componentCount();
    };
    for (int radius = 1; radius <= 4; ++radius)
        checkDomain("ball " + std::to_string(radius), ballSubgraph(g, 0, radius));
    const int v = choosePuncture(g, 0, 2);
    const int base = checkDomain("ball 2", ballSubgraph(g, 0, 2));
    const int punct = checkDomain("punctured", puncturedBall(g, 0, 2, v));
    o.require(punct == base + 1, "punctured ball does not gain exactly one circle");
    o.detail << (o.pass ? "" : "; ") << "radii 1..4 ok; punctured radius 2 (v*=" << v << ") components " << base
             << " -> " << punct;
}

// ------------------------------------------------------------------ 7

void discretization(Outcome& o)
{
    ExperimentConfig cfg;
    cfg.depth = 6;
    cfg.radiusMin = 2;
    cfg.radiusMax = 4;
    cfg.kMax = 3;
    cfg.epsilonFactor = 0.5;
    const CompareReport rep = runDiscretizeCompare(cfg);
    for (const auto& row : rep.rows) {
        const std::string name = "radius " + std::to_string(row.radius);
        o.require(row.rough.surjective, name + " not surjective");
        o.require(row.rough.boundaryToBoundary, name + " V_Sigma leaves B");
        o.require(row.ratio.size() == 3, name + " missing ratios");
        ledger.add("graph " + name, row.boundary, row.graphHealth);
        ledger.add("discretization " + name, row.discreteBoundary, row.discreteHealth);
    }
    o.require(rep.c1Growth <= 1.5 && rep.c2Growth <= 1.5 && rep.c3Growth <= 1.5, "rough constants grew");
    for (double s : rep.ratioSpread)
        o.require(s <= 25.0, "ratio spread");
    const auto& first = rep.rows.front().rough;
    const auto& last = rep.rows.back().rough;
    o.detail << (o.pass ? "" : "; ") << "C r2=(" << first.c1 << "," << first.c2 << "," << first.c3 << ") r4=("
             << last.c1 << "," << last.c2 << "," << last.c3 << "), ratio spread k=1..3:";
    for (double s : rep.ratioSpread)
        o.detail << ' ' << s;
    o.detail << ", |V| per radius:";
    for (const auto& row : rep.rows)
        o.detail << ' ' << row.discreteVertices;
}

// ------------------------------------------------------------------ 8

void horseshoe(Outcome& o)
{
    const HorseshoeReport rep = runHorseshoe(ExperimentConfig{});
    o.require(rep.hostDistance == 1, "host distance");
    o.require(rep.subgraphDistance >= 10, "subgraph distance");
    o.require(!rep.connectorBetweenTips, "connector between tips");
    o.require(rep.structural.ok, "structural check");
    o.detail << (o.pass ? "" : "; ") << "d_host=" << rep.hostDistance << " d_subgraph=" << rep.subgraphDistance
             << " connector=" << (rep.connectorBetweenTips ? "yes" : "no");
}

// ------------------------------------------------------------------ 3

void spectrumStructure(Outcome& o)
{
    o.require(ledger.instances > 0, "no instances");
    o.require(ledger.failures == 0, ledger.firstFailure);
    o.detail << (o.pass ? "" : "; ") << ledger.instances << " instances, max asymmetry " << ledger.worstAsymmetry
             << ", max |raw sigma0| " << ledger.worstRaw << ", min sigma1 " << ledger.smallestSigma1;
}

} // namespace

int main(int argc, char** argv)
{
    const fs::path outDir = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_out");
    struct Criterion {
        int id;
        const char* name;
        double budget; // seconds
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> order = {
        {1, "spectrum oracle equivalence", 10, spectrumOracle},
        {2, "closed-form spectra", 1, closedForms},
        {4, "tiling validity", 30, tilingValidity},
        {5, "scaling experiment", 300, scaling},
        {6, "domain construction", 30, domains},
        {7, "discretization and rough isometry", 300, discretization},
        {8, "horseshoe", 60, horseshoe},
        {9, "determinism", 600, [&](Outcome& o) { determinism(o, outDir); }},
        {3, "spectrum structure", 1, spectrumStructure},
    };
    std::map<int, std::string> lines;
    int failed = 0;
    for (const auto& c : order) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget)
            o.require(false, "runtime over budget");
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ") [" << std::fixed;
        line.precision(2);
        line << secs << " s] " << o.detail.str();
        lines[c.id] = line.str();
        failed += !o.pass;
    }
    for (const auto& [id, line] : lines)
        std::cout << line << '\n';
    std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << '\n';
    return failed;
}
