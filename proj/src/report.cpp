#include "svi/intersect.hpp"

#include "json.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

namespace svi {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> genStrings(const Ideal& I) {
    std::vector<std::string> out;
    out.reserve(I.gens().size());
    for (const auto& g : I.gens()) out.push_back(g.str());
    return out;
}

std::string joinStrings(const std::vector<std::string>& v) {
    std::string k;
    for (const auto& s : v) {
        k += s;
        k += ';';
    }
    return k;
}

ordered_json inputJson(const Cycle& c) {
    ordered_json j;
    j["ambient"] = c.ring->nvars() - 1;
    ordered_json dims = ordered_json::array();
    ordered_json degrees = ordered_json::array();
    for (const auto& [dim, deg] : cycleDegree(c)) {
        dims.push_back(dim);
        degrees.push_back(deg);
    }
    j["dims"] = std::move(dims);
    j["degrees"] = std::move(degrees);
    j["total_degree"] = cycleTotalDegree(c);
    return j;
}

} // namespace

std::string bulletReportJson(const BulletReport& rep, const std::string& command) {
    ordered_json j;
    j["command"] = command;
    ordered_json inputs = ordered_json::array();
    for (const auto& c : rep.inputs) inputs.push_back(inputJson(c));
    j["inputs"] = std::move(inputs);
    if (rep.rho)
        j["rho"] = *rep.rho;
    else
        j["rho"] = nullptr;
    if (rep.d)
        j["d"] = *rep.d;
    else
        j["d"] = nullptr;

    // (dim, printed key) sort across both kinds so output order is stable.
    std::vector<std::tuple<int, std::string, ordered_json>> entries;
    for (const auto& ch : rep.fixed) {
        ordered_json e;
        e["kind"] = "fixed";
        e["dim"] = ch.dim;
        e["degree"] = ch.degree();
        auto gens = genStrings(ch.ideal);
        e["ideal"] = gens;
        entries.emplace_back(ch.dim, joinStrings(gens), std::move(e));
    }
    for (const auto& mc : rep.moving) {
        ordered_json e;
        e["kind"] = "moving";
        e["dim"] = mc.dim;
        e["degree"] = mc.degree;
        ordered_json wits = ordered_json::array();
        std::string key;
        for (size_t i = 0; i < mc.witnesses.size(); ++i) {
            auto gens = genStrings(mc.witnesses[i]);
            if (i == 0) key = joinStrings(gens);
            wits.push_back(gens);
        }
        e["witnesses"] = std::move(wits);
        entries.emplace_back(mc.dim, std::move(key), std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    ordered_json components = ordered_json::array();
    for (auto& [dim, key, e] : entries) components.push_back(std::move(e));
    j["components"] = std::move(components);

    j["total_degree"] = rep.totalDegree;
    j["residual_degree"] = rep.residualDegree;
    j["bezout_product"] = rep.bezoutProduct;
    j["fulton_degree"] = rep.fultonDegree;
    ordered_json seeds = ordered_json::array();
    for (auto s : rep.runSeeds) seeds.push_back(std::to_string(s));
    j["seeds"] = std::move(seeds);
    j["runs"] = rep.runs;
    return j.dump();
}

} // namespace svi
