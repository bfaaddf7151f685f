// Python bindings: a string-level surface over the exact engine. Polynomials,
// cycles and points travel as text; results come back as native Python
// numbers, lists and dicts (or as the canonical JSON report for the product).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "svi/cycle.hpp"
#include "svi/errors.hpp"
#include "svi/ideal.hpp"
#include "svi/intersect.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace svi;

namespace {

RingPtr ringFrom(const std::vector<std::string>& vars) {
    if (vars.empty()) throw UsageError("need at least one variable name");
    return PolyRing::make(vars);
}

Ideal idealFrom(const RingPtr& R, const std::vector<std::string>& gens) {
    std::vector<Poly> ps;
    ps.reserve(gens.size());
    for (const auto& g : gens) ps.push_back(Poly::parse(R, g));
    return Ideal(R, std::move(ps));
}

// Same ambient inference as the command line: an explicit ambient wins,
// otherwise the largest variable index mentioned across all texts.
std::vector<Cycle> cyclesFrom(const std::vector<std::string>& texts, int ambient) {
    std::optional<int> amb;
    if (ambient >= 0) amb = ambient;
    for (const auto& t : texts) {
        auto probe = scanAmbient(t);
        if (probe && (!amb || *probe > *amb)) amb = probe;
    }
    std::vector<Cycle> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(parseCycleText(t, amb));
    return out;
}

Cycle oneCycle(const std::string& text, int ambient) {
    return cyclesFrom({text}, ambient)[0];
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact intersection products of projective cycles: ruled joins, "
              "Stueckrad-Vogel cuts, fixed/moving classification, local "
              "multiplicities, and the Groebner toolkit underneath.";

    m.def("version", [] { return std::string("0.1.0"); }, "Library version string.");

    m.def(
        "groebner_basis",
        [](const std::vector<std::string>& vars, const std::vector<std::string>& gens) {
            auto gb = groebner(idealFrom(ringFrom(vars), gens), MonomialOrder::grevlexOrder());
            std::vector<std::string> out;
            out.reserve(gb->polys.size());
            for (const auto& p : gb->polys) out.push_back(p.str());
            return out;
        },
        py::arg("variables"), py::arg("generators"),
        "Reduced degree-reverse-lexicographic Groebner basis, canonical form.");

    m.def(
        "hilbert_summary",
        [](const std::vector<std::string>& vars, const std::vector<std::string>& gens) {
            HilbertSummary h = hilbert(idealFrom(ringFrom(vars), gens));
            return std::make_pair(h.dim, h.degree);
        },
        py::arg("variables"), py::arg("generators"),
        "(projective dimension, degree) of the scheme cut out by the ideal; "
        "dimension -1 means empty.");

    m.def(
        "cycle_degrees",
        [](const std::string& text, int ambient) {
            std::map<int, long long> d = cycleDegree(oneCycle(text, ambient));
            return d;
        },
        py::arg("text"), py::arg("ambient") = -1,
        "Per-dimension degrees of a cycle given in the text format.");

    m.def(
        "total_degree",
        [](const std::string& text, int ambient) {
            return cycleTotalDegree(oneCycle(text, ambient));
        },
        py::arg("text"), py::arg("ambient") = -1, "Sum of all component degrees.");

    m.def(
        "multiplicity",
        [](const std::string& text, const std::string& point, int ambient) {
            return multiplicityAt(oneCycle(text, ambient), ProjPoint::parse(point));
        },
        py::arg("text"), py::arg("point"), py::arg("ambient") = -1,
        "Hilbert-Samuel multiplicity of the cycle at a projective point "
        "\"[c0, c1, ...]\" (0 when the point is off the support).");

    m.def(
        "join",
        [](const std::vector<std::string>& texts, int ambient) {
            Cycle j = ruledJoin(cyclesFrom(texts, ambient));
            py::dict out;
            out["ambient"] = j.ring->nvars() - 1;
            out["degrees"] = cycleDegree(j);
            out["total_degree"] = cycleTotalDegree(j);
            return out;
        },
        py::arg("texts"), py::arg("ambient") = -1,
        "Ruled join of two or more cycles: its ambient dimension and "
        "per-dimension degrees.");

    m.def(
        "bullet_json",
        [](const std::vector<std::string>& texts, std::uint64_t seed, int runs,
           bool direct_linear, int ambient) {
            auto inputs = cyclesFrom(texts, ambient);
            BulletReport rep;
            if (direct_linear) {
                if (inputs.size() != 2)
                    throw UsageError("direct_linear needs exactly two cycles");
                rep = bulletDirectLinear(inputs[0], inputs[1], seed, runs);
            } else {
                rep = bullet(inputs, seed, runs);
            }
            return bulletReportJson(rep, "bullet");
        },
        py::arg("texts"), py::arg("seed") = 24301, py::arg("runs") = 2,
        py::arg("direct_linear") = false, py::arg("ambient") = -1,
        "Intersection product of the cycles: the full fixed/moving report as "
        "canonical JSON (byte-deterministic for a given seed).");

    m.def(
        "epsilon",
        [](const std::vector<std::string>& texts, const std::string& point,
           std::uint64_t seed, bool direct_linear, int ambient) {
            EpsilonTable t = epsilon(cyclesFrom(texts, ambient), ProjPoint::parse(point),
                                     seed, direct_linear);
            return t.values;
        },
        py::arg("texts"), py::arg("point"), py::arg("seed") = 24301,
        py::arg("direct_linear") = false, py::arg("ambient") = -1,
        "Local intersection numbers (eps_0, eps_1, ...) of the product at a point.");

    m.def(
        "sv_masses",
        [](const std::string& text, const std::vector<std::string>& forms,
           std::uint64_t seed, int ambient) {
            Cycle c = oneCycle(text, ambient);
            std::vector<Poly> fs;
            fs.reserve(forms.size());
            for (const auto& f : forms) fs.push_back(Poly::parse(c.ring, f));
            LinearSystem sys{c.ring, std::move(fs)};
            SvOutput out = sv(c, sys, seed);
            int dim = 0;
            for (const auto& ch : c.chunks) dim = std::max(dim, ch.dim);
            MassCheck mc = svMassCheck(out, cycleTotalDegree(c),
                                       static_cast<int>(sys.forms.size()), dim);
            return std::make_tuple(mc.inputDegree, mc.insideSum, mc.deficit);
        },
        py::arg("text"), py::arg("forms"), py::arg("seed") = 24301,
        py::arg("ambient") = -1,
        "Run the intersection cut loop against the linear system and return "
        "(input degree, central mass, residual deficit).");

    m.def(
        "polar_split",
        [](const std::string& text, const std::vector<std::string>& points,
           std::uint64_t seed, int ambient) {
            std::vector<ProjPoint> pts;
            pts.reserve(points.size());
            for (const auto& p : points) pts.push_back(ProjPoint::parse(p));
            PolarOracle po = polarOracle(oneCycle(text, ambient), pts, seed);
            return std::make_tuple(po.total, po.singularMass, po.movingMass,
                                   po.pointMultiplicities);
        },
        py::arg("text"), py::arg("points"), py::arg("seed") = 24301,
        py::arg("ambient") = -1,
        "Polar intersection oracle for a reduced plane curve: (total, singular "
        "mass, moving mass, per-point multiplicities).");
}
