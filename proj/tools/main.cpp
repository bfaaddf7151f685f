#include "svi/intersect.hpp"
#include "svi/errors.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace svi;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
    std::vector<std::string> cycles;
    std::string seedText = "0x5EED";
    int runs = 2;
    std::string mode = "json";
    std::optional<int> ambient;
    std::string pointsJoined;  // newline-separated point literals (Join policy keeps brackets intact)
    std::string systemPath;
    bool directLinear = false;

    std::vector<std::string> points() const {
        std::vector<std::string> out;
        std::stringstream ss(pointsJoined);
        std::string line;
        while (std::getline(ss, line)) {
            if (!line.empty()) out.push_back(line);
        }
        return out;
    }
};

std::uint64_t parseSeed(const std::string& s) {
    try {
        size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos, 0);
        if (pos != s.size()) throw UsageError("trailing characters in seed: " + s);
        return v;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("cannot parse seed: " + s);
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool looksLikeFile(const std::string& arg) {
    std::ifstream in(arg);
    return static_cast<bool>(in);
}

// Cycle arguments are file paths or inline cycle text. All arguments of one
// invocation share an ambient: the largest per-argument probe (headers and
// point statements are exact, variable scans are lower bounds), overridable
// with --ambient.
std::vector<Cycle> loadCycles(const Options& opt) {
    std::vector<std::string> texts;
    texts.reserve(opt.cycles.size());
    for (const auto& arg : opt.cycles) {
        if (looksLikeFile(arg)) {
            texts.push_back(slurp(arg));
        } else if (arg.find('/') != std::string::npos || arg.ends_with(".cyc")) {
            throw UsageError("cannot open file: " + arg);
        } else {
            texts.push_back(arg);
        }
    }
    std::optional<int> ambient = opt.ambient;
    for (const auto& t : texts) {
        auto probe = scanAmbient(t);
        if (probe && (!ambient || *probe > *ambient)) ambient = probe;
    }
    std::vector<Cycle> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(parseCycleText(t, ambient));
    return out;
}

ordered_json inputJson(const Cycle& c) {
    ordered_json j;
    j["ambient"] = c.ring->nvars() - 1;
    ordered_json dims = ordered_json::array(), degrees = ordered_json::array();
    for (const auto& [dim, deg] : cycleDegree(c)) {
        dims.push_back(dim);
        degrees.push_back(deg);
    }
    j["dims"] = std::move(dims);
    j["degrees"] = std::move(degrees);
    j["total_degree"] = cycleTotalDegree(c);
    return j;
}

ordered_json inputsJson(const std::vector<Cycle>& cs) {
    ordered_json a = ordered_json::array();
    for (const auto& c : cs) a.push_back(inputJson(c));
    return a;
}

ordered_json chunkJson(const Chunk& ch) {
    ordered_json e;
    e["dim"] = ch.dim;
    e["degree"] = ch.degree();
    ordered_json gens = ordered_json::array();
    for (const auto& g : ch.ideal.gens()) gens.push_back(g.str());
    e["ideal"] = std::move(gens);
    return e;
}

void emitText(const ordered_json& j) {
    std::cout << j.dump(2) << "\n";
}

// JSON mode prints the canonical compact bytes on stdout and timing on
// stderr, keeping the payload byte-deterministic; text mode pretty-prints
// with timing inline.
void emit(const ordered_json& j, const Options& opt, double elapsedMs) {
    if (opt.mode == "text") {
        ordered_json t = j;
        t["elapsed_ms"] = elapsedMs;
        emitText(t);
    } else {
        std::cout << j.dump() << "\n";
        std::cerr << "elapsed_ms " << elapsedMs << "\n";
    }
}

ProjPoint requirePoint(const Options& opt) {
    auto pts = opt.points();
    if (pts.size() != 1) throw UsageError("exactly one --point is required");
    return ProjPoint::parse(pts[0]);
}

int dispatch(const std::string& command, const Options& opt) {
    const std::uint64_t seed = parseSeed(opt.seedText);
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    if (command == "degree") {
        auto cs = loadCycles(opt);
        ordered_json j;
        j["command"] = "degree";
        j["inputs"] = inputsJson(cs);
        const auto& c = cs[0];
        ordered_json dims = ordered_json::array(), degrees = ordered_json::array();
        for (const auto& [dim, deg] : cycleDegree(c)) {
            dims.push_back(dim);
            degrees.push_back(deg);
        }
        j["dims"] = std::move(dims);
        j["degrees"] = std::move(degrees);
        j["total_degree"] = cycleTotalDegree(c);
        emit(j, opt, elapsed());
        return 0;
    }
    if (command == "mult") {
        auto cs = loadCycles(opt);
        ProjPoint x = requirePoint(opt);
        long long m = multiplicityAt(cs[0], x);
        ordered_json j;
        j["command"] = "mult";
        j["inputs"] = inputsJson(cs);
        j["point"] = x.str();
        j["multiplicity"] = m;
        emit(j, opt, elapsed());
        return 0;
    }
    if (command == "join") {
        auto cs = loadCycles(opt);
        Cycle joined = ruledJoin(cs);
        ordered_json j;
        j["command"] = "join";
        j["inputs"] = inputsJson(cs);
        j["ambient"] = joined.ring->nvars() - 1;
        ordered_json comps = ordered_json::array();
        for (const auto& ch : joined.chunks) comps.push_back(chunkJson(ch));
        j["components"] = std::move(comps);
        j["total_degree"] = cycleTotalDegree(joined);
        emit(j, opt, elapsed());
        return 0;
    }
    if (command == "sv") {
        auto cs = loadCycles(opt);
        if (opt.systemPath.empty()) throw UsageError("sv requires --system <forms-file>");
        const Cycle& c = cs[0];
        std::vector<Poly> forms;
        std::istringstream in(slurp(opt.systemPath));
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto l = line.find_first_not_of(" \t\r");
            if (l == std::string::npos) continue;
            forms.push_back(Poly::parse(c.ring, line));
        }
        if (forms.empty()) throw UsageError("system file contains no forms");
        LinearSystem sys{c.ring, forms};
        SvOutput out = sv(c, sys, seed);
        long long inputDeg = cycleTotalDegree(c);
        int inputDim = c.isZero() ? -1 : c.chunks[0].dim;
        MassCheck mass = svMassCheck(out, inputDeg, static_cast<int>(forms.size()), inputDim);
        ordered_json j;
        j["command"] = "sv";
        j["inputs"] = inputsJson(cs);
        ordered_json levels = ordered_json::array();
        for (const auto& level : out.v) {
            ordered_json lv = ordered_json::array();
            for (const auto& ch : level) lv.push_back(chunkJson(ch));
            levels.push_back(std::move(lv));
        }
        j["v"] = std::move(levels);
        ordered_json res = ordered_json::array();
        for (const auto& ch : out.residual) res.push_back(chunkJson(ch));
        j["residual"] = std::move(res);
        ordered_json sampled = ordered_json::array();
        for (const auto& h : out.sampled) sampled.push_back(h.str());
        j["sampled"] = std::move(sampled);
        j["mass"] = {{"input_degree", mass.inputDegree},
                     {"inside_sum", mass.insideSum},
                     {"deficit", mass.deficit}};
        j["seed"] = std::to_string(seed);
        emit(j, opt, elapsed());
        return 0;
    }
    if (command == "bullet" || command == "bezout-check") {
        auto cs = loadCycles(opt);
        BulletReport rep;
        if (opt.directLinear) {
            if (cs.size() != 2)
                throw UsageError("--direct-linear takes exactly two cycles");
            rep = bulletDirectLinear(cs[0], cs[1], seed, opt.runs);
        } else {
            rep = bullet(cs, seed, opt.runs);
        }
        if (command == "bullet") {
            std::string payload = bulletReportJson(rep, "bullet");
            if (opt.mode == "text") {
                ordered_json t = ordered_json::parse(payload);
                t["elapsed_ms"] = elapsed();
                emitText(t);
            } else {
                std::cout << payload << "\n";
                std::cerr << "elapsed_ms " << elapsed() << "\n";
            }
            return 0;
        }
        ordered_json j;
        j["command"] = "bezout-check";
        j["inputs"] = inputsJson(cs);
        if (rep.rho)
            j["rho"] = *rep.rho;
        else
            j["rho"] = nullptr;
        j["bezout_product"] = rep.bezoutProduct;
        j["total_degree"] = rep.totalDegree;
        j["residual_degree"] = rep.residualDegree;
        j["balanced"] = true; // audits inside bullet() throw otherwise
        emit(j, opt, elapsed());
        return 0;
    }
    if (command == "epsilon") {
        auto cs = loadCycles(opt);
        ProjPoint x = requirePoint(opt);
        EpsilonTable table = epsilon(cs, x, seed, opt.directLinear);
        ordered_json j;
        j["command"] = "epsilon";
        j["inputs"] = inputsJson(cs);
        j["point"] = table.point.str();
        j["values"] = table.values;
        j["seed"] = std::to_string(seed);
        emit(j, opt, elapsed());
        return 0;
    }
    if (command == "polar-oracle") {
        auto cs = loadCycles(opt);
        auto rawPts = opt.points();
        std::vector<ProjPoint> pts;
        pts.reserve(rawPts.size());
        for (const auto& p : rawPts) pts.push_back(ProjPoint::parse(p));
        PolarOracle po = polarOracle(cs[0], pts, seed);
        ordered_json j;
        j["command"] = "polar-oracle";
        j["inputs"] = inputsJson(cs);
        j["curve_degree"] = po.curveDegree;
        j["total"] = po.total;
        ordered_json rows = ordered_json::array();
        for (size_t i = 0; i < pts.size(); ++i)
            rows.push_back({{"point", pts[i].str()}, {"multiplicity", po.pointMultiplicities[i]}});
        j["points"] = std::move(rows);
        j["singular_mass"] = po.singularMass;
        j["moving_mass"] = po.movingMass;
        j["polar"] = po.polar.str();
        j["seed"] = std::to_string(seed);
        emit(j, opt, elapsed());
        return 0;
    }
    throw UsageError("unknown command: " + command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact intersection products of projective cycles"};
    app.require_subcommand(1);

    Options opt;
    std::string commandName;
    auto addCommon = [&](CLI::App* sub, int minCycles, bool wantRuns) {
        sub->add_option("cycles", opt.cycles, "cycle files or inline cycle text")
            ->required()
            ->expected(minCycles, -1);
        sub->add_option("--seed", opt.seedText, "RNG seed (decimal or 0x hex)");
        if (wantRuns) sub->add_option("--runs", opt.runs, "independent runs")->check(CLI::Range(2, 16));
        sub->add_option("--ambient", opt.ambient, "ambient projective dimension");
        sub->add_option("--mode", opt.mode, "output mode")
            ->check(CLI::IsMember({"json", "text"}));
        sub->callback([&, sub] { commandName = sub->get_name(); });
        return sub;
    };

    addCommon(app.add_subcommand("degree", "dimension-wise degrees of a cycle"), 1, false);
    auto* mult = addCommon(app.add_subcommand("mult", "multiplicity of a cycle at a point"), 1, false);
    mult->add_option("--point", opt.pointsJoined, "projective point [c0, c1, ...]")
        ->multi_option_policy(CLI::MultiOptionPolicy::Join)
        ->required();
    addCommon(app.add_subcommand("join", "ruled join of two or more cycles"), 2, false);
    auto* svc = addCommon(app.add_subcommand("sv", "intersection cycles against a linear system"), 1, false);
    svc->add_option("--system", opt.systemPath, "file with one linear form per line")->required();
    auto* bul = addCommon(app.add_subcommand("bullet", "intersection product of cycles"), 2, true);
    bul->add_flag("--direct-linear", opt.directLinear,
                  "first factor is a linear space; work in the base space directly");
    auto* eps = addCommon(app.add_subcommand("epsilon", "local intersection numbers at a point"), 2, false);
    eps->add_option("--point", opt.pointsJoined, "projective point")
        ->multi_option_policy(CLI::MultiOptionPolicy::Join)
        ->required();
    eps->add_flag("--direct-linear", opt.directLinear,
                  "first factor is a linear space; work in the base space directly");
    addCommon(app.add_subcommand("bezout-check", "degree accounting of the product"), 2, true);
    auto* po = addCommon(app.add_subcommand("polar-oracle", "polar intersection oracle for a plane curve"), 1, false);
    po->add_option("--point", opt.pointsJoined, "candidate singular point (repeatable)")
        ->multi_option_policy(CLI::MultiOptionPolicy::Join);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        return dispatch(commandName, opt);
    } catch (const GenericityError& e) {
        std::cerr << "genericity error: " << e.what() << "\n";
        return 2;
    } catch (const InstabilityError& e) {
        std::cerr << "instability: " << e.what() << "\n";
        return 2;
    } catch (const StabilizationError& e) {
        std::cerr << "stabilization failure: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const AuditError& e) {
        std::cerr << "internal audit failure: " << e.what() << "\n";
        return 70;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}
