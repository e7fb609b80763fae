// Command-line front end for tilings, subgraph spectra, domains and
// discretizations.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "hsteklov/hsteklov.hpp"

namespace fs = std::filesystem;
using namespace hsteklov;

namespace {

struct Options {
    ExperimentConfig cfg;
    std::string radius;
    std::string format = "json";
};

/// "R" or "A..B".
void parseRadius(const std::string& text, int& lo, int& hi)
{
    try {
        const auto dots = text.find("..");
        std::size_t used = 0;
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text, &used);
            if (used != text.size())
                throw std::invalid_argument(text);
        } else {
            lo = std::stoi(text.substr(0, dots));
            hi = std::stoi(text.substr(dots + 2), &used);
            if (used != text.size() - dots - 2)
                throw std::invalid_argument(text);
        }
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Config, "radius must be an integer or a range A..B, got '" + text + "'");
    }
}

std::string outPath(const Options& o, const std::string& stem)
{
    fs::create_directories(o.cfg.outDir);
    return (fs::path(o.cfg.outDir) / (stem + "." + o.format)).string();
}

void emit(const Options& o, const std::string& stem, const std::string& text)
{
    const std::string path = outPath(o, stem);
    io::writeText(path, text);
    std::cout << stem << ": wrote " << path << '\n';
}

[[noreturn]] void unsupported(const Options& o, const std::string& cmd)
{
    throw Error(ErrorKind::Config, "format " + o.format + " is not available for " + cmd);
}

struct Host {
    Tiling t;
    HostGraph g;
};

Host host(const ExperimentConfig& cfg)
{
    Host h{generateTiling(cfg.p, cfg.q, cfg.r, cfg.depth), {}};
    h.g = buildHostGraph(h.t);
    return h;
}

int runTile(const Options& o)
{
    if (!isHyperbolicTriple(o.cfg.p, o.cfg.q, o.cfg.r))
        throw Error(ErrorKind::Config, "not hyperbolic");
    const Tiling t = generateTiling(o.cfg.p, o.cfg.q, o.cfg.r, o.cfg.depth);
    if (o.format == "json")
        emit(o, "tile", io::toJson(t).dump(1));
    else if (o.format == "csv")
        emit(o, "tile", io::tilingCsv(t));
    else
        emit(o, "tile", io::tilingSvg(t));
    std::cout << "tiles=" << t.tiles.size() << " vertices=" << t.vertices.size() << '\n';
    return 0;
}

int runSubgraph(const Options& o)
{
    o.cfg.validate();
    const Host h = host(o.cfg);
    const GraphWithBoundary G = ballSubgraph(h.g, o.cfg.center, o.cfg.radiusMax);
    if (o.format == "json")
        emit(o, "subgraph", io::toJson(G).dump(1));
    else if (o.format == "csv")
        emit(o, "subgraph", io::graphCsv(G));
    else
        emit(o, "subgraph", io::subgraphSvg(h.t, G));
    std::cout << "interior=" << G.interiorCount() << " boundary=" << G.boundaryCount()
              << " edges=" << G.edges().size() << '\n';
    return 0;
}

int runSpectrum(const Options& o)
{
    o.cfg.validate();
    const Host h = host(o.cfg);
    const GraphWithBoundary G = ballSubgraph(h.g, o.cfg.center, o.cfg.radiusMax);
    const SteklovSpectrum s = steklovSpectrum(G);
    if (o.format == "json")
        emit(o, "spectrum", io::toJson(s).dump(1));
    else if (o.format == "csv")
        emit(o, "spectrum", io::spectrumCsv(s));
    else
        unsupported(o, "spectrum");
    std::cout << "boundary=" << s.size() << " sigma1=" << io::number(s.eigenvalues.at(1))
              << " max_residual=" << s.maxResidual() << '\n';
    return s.maxResidual() <= kResidualTolerance ? 0 : 3;
}

int runDomain(const Options& o)
{
    o.cfg.validate();
    const Host h = host(o.cfg);
    const GraphWithBoundary G = ballSubgraph(h.g, o.cfg.center, o.cfg.radiusMax);
    const DomainModel D = buildDomain(G, h.t);
    const StructuralReport check = structuralEquivalenceCheck(D, G);
    if (o.format == "json") {
        auto j = io::toJson(D);
        j["structural_ok"] = check.ok;
        j["structural_failures"] = check.failures;
        emit(o, "domain", j.dump(1));
    } else if (o.format == "csv") {
        emit(o, "domain", io::domainCsv(D));
    } else {
        emit(o, "domain", io::domainSvg(h.t, G, D));
    }
    std::cout << "pieces=" << D.pieces.size() << " components=" << D.componentCount()
              << " boundary_length=" << io::number(boundaryLength(D)) << " structural=" << (check.ok ? "ok" : "FAIL")
              << '\n';
    for (const auto& f : check.failures)
        std::cerr << "  " << f << '\n';
    return check.ok ? 0 : 3;
}

int runDiscretize(const Options& o)
{
    o.cfg.validate();
    const Host h = host(o.cfg);
    const GraphWithBoundary G = ballSubgraph(h.g, o.cfg.center, o.cfg.radiusMax);
    const DomainModel D = buildDomain(G, h.t);
    const DiscretizationGraph dg = buildDiscretization(D, o.cfg.epsilonFactor * epsilonMax(D));
    const auto phi = cobblestoneMap(dg, D, G);
    RoughIsometryOptions opts;
    opts.seed = o.cfg.seed;
    const RoughIsometryReport rough = roughIsometryConstants(phi, dg.graph, G, opts);
    if (o.format == "json") {
        auto j = io::toJson(dg);
        j["rough_isometry"] = io::toJson(rough);
        emit(o, "discretize", j.dump(1));
    } else if (o.format == "csv") {
        emit(o, "discretize", io::discretizationCsv(dg));
    } else {
        emit(o, "discretize", io::discretizationSvg(h.t, G, D, dg));
    }
    std::cout << "vertices=" << dg.size() << " boundary=" << dg.boundaryCount << " C1=" << rough.c1
              << " C2=" << rough.c2 << " C3=" << rough.c3 << '\n';
    return rough.surjective && rough.boundaryToBoundary ? 0 : 3;
}

int runScalingCmd(const Options& o)
{
    const ScalingReport rep = runScaling(o.cfg);
    if (o.format == "csv")
        emit(o, "scaling", rep.csv());
    else if (o.format == "json")
        emit(o, "scaling", rep.json().dump(1));
    else
        unsupported(o, "scaling");
    for (const auto& [k, m] : rep.maxRatio)
        std::cout << "k=" << k << " max sigma_k|B|/k^2=" << io::number(m) << '\n';
    return rep.ok ? 0 : 3;
}

int runPuncturedCmd(const Options& o)
{
    const PuncturedReport rep = runPuncturedBall(o.cfg, o.cfg.radiusMax);
    if (o.format == "json") {
        emit(o, "punctured", rep.json().dump(1));
    } else if (o.format == "csv") {
        emit(o, "punctured", rep.csv());
    } else {
        const Host h = host(o.cfg);
        const GraphWithBoundary G = puncturedBall(h.g, o.cfg.center, o.cfg.radiusMax, rep.removed);
        emit(o, "punctured", io::domainSvg(h.t, G, buildDomain(G, h.t)));
    }
    std::cout << "removed=" << rep.removed << " boundary " << rep.ballBoundary << "->" << rep.puncturedBoundary
              << " components " << rep.ballComponents << "->" << rep.puncturedComponents << '\n';
    return rep.ok ? 0 : 3;
}

int runHorseshoeCmd(const Options& o)
{
    const HorseshoeReport rep = runHorseshoe(o.cfg);
    if (o.format == "json") {
        emit(o, "horseshoe", rep.json().dump(1));
    } else if (o.format == "csv") {
        emit(o, "horseshoe", rep.csv());
    } else {
        const Host h = host(o.cfg);
        const GraphWithBoundary G = induceSubgraph(h.g, rep.interior);
        emit(o, "horseshoe", io::domainSvg(h.t, G, buildDomain(G, h.t)));
    }
    std::cout << "d_host(w1,w2)=" << rep.hostDistance << " d_subgraph(w1,w2)=" << rep.subgraphDistance
              << " connector_between_tips=" << (rep.connectorBetweenTips ? "yes" : "no") << '\n';
    return rep.ok ? 0 : 3;
}

int runCompareCmd(const Options& o)
{
    const CompareReport rep = runDiscretizeCompare(o.cfg);
    if (o.format == "csv")
        emit(o, "compare", rep.csv());
    else if (o.format == "json")
        emit(o, "compare", rep.json().dump(1));
    else
        unsupported(o, "compare");
    for (std::size_t k = 0; k < rep.ratioSpread.size(); ++k)
        std::cout << "k=" << k + 1 << " ratio max/min=" << io::number(rep.ratioSpread[k]) << '\n';
    std::cout << "C1 growth=" << rep.c1Growth << " C2 growth=" << rep.c2Growth << '\n';
    return rep.ok ? 0 : 3;
}

void printError(const std::string& kind, const std::string& message)
{
    std::cerr << io::json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Steklov spectra of subgraphs of hyperbolic triangle tilings"};
    app.require_subcommand(1);
    Options o;

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Options&);
        const char* defaultRadius;
    };
    const Command commands[] = {
        {"tile", "generate the reflection tiling", runTile, "2"},
        {"subgraph", "ball subgraph of the dual graph", runSubgraph, "2"},
        {"spectrum", "Steklov spectrum of a ball subgraph", runSpectrum, "2"},
        {"domain", "hyperbolic domain of a ball subgraph", runDomain, "2"},
        {"discretize", "epsilon-discretization and rough-isometry constants", runDiscretize, "2"},
        {"scaling", "sigma_k |B| / k^2 over a family of balls", runScalingCmd, "2..6"},
        {"punctured", "ball versus ball with one interior vertex removed", runPuncturedCmd, "2"},
        {"horseshoe", "subgraph whose tips are adjacent in the host graph", runHorseshoeCmd, "0"},
        {"compare", "discretization spectra against graph spectra", runCompareCmd, "2..4"},
    };
    std::map<CLI::App*, const Command*> byApp;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--p", o.cfg.p, "first angle denominator")->capture_default_str();
        sub->add_option("--q", o.cfg.q, "second angle denominator")->capture_default_str();
        sub->add_option("--r", o.cfg.r, "third angle denominator")->capture_default_str();
        sub->add_option("--depth", o.cfg.depth, "reflection depth of the tiling")->capture_default_str();
        sub->add_option("--radius", o.radius, "ball radius R or range A..B");
        sub->add_option("--k-max", o.cfg.kMax, "largest eigenvalue index")->capture_default_str();
        sub->add_option("--epsilon-factor", o.cfg.epsilonFactor, "epsilon as a fraction of eps_max")
            ->capture_default_str();
        sub->add_option("--seed", o.cfg.seed, "seed for sampled pair checks")->capture_default_str();
        sub->add_option("--out-dir", o.cfg.outDir, "output directory")->capture_default_str();
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"csv", "json", "svg"}))
            ->capture_default_str();
        byApp[sub] = &c;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        printError("usage", e.what());
        return 1;
    }

    const Command* cmd = byApp.at(app.get_subcommands().front());
    try {
        parseRadius(o.radius.empty() ? cmd->defaultRadius : o.radius, o.cfg.radiusMin, o.cfg.radiusMax);
        return cmd->run(o);
    } catch (const Error& e) {
        printError(to_string(e.kind()), e.what());
        return 2;
    } catch (const std::exception& e) {
        printError("internal", e.what());
        return 2;
    }
}
