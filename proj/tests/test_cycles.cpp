#include "doctest.h"

#include "svi/cycle.hpp"
#include "svi/errors.hpp"
#include "svi/rng.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace svi;

namespace {

std::string fixturesDir() {
    if (const char* env = std::getenv("SVI_FIXTURES")) return env;
    return "fixtures";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "cannot open fixture " << path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Ideal parseIdeal(const RingPtr& R, const std::vector<std::string>& gens) {
    std::vector<Poly> ps;
    for (const auto& s : gens) ps.push_back(Poly::parse(R, s));
    return Ideal(R, std::move(ps));
}

Cycle cuspCurve() {
    auto R = PolyRing::projective(2);
    return makeHypersurface(Poly::parse(R, "x1^3 - x0*x2^2"), 1);
}

} // namespace

TEST_CASE("cycle builders produce the expected chunks") {
    auto R = PolyRing::projective(2);

    Cycle h = makeHypersurface(Poly::parse(R, "x1^2 - x0*x2"), 2);
    REQUIRE(h.chunks.size() == 1);
    CHECK(h.chunks[0].coeff == 2);
    CHECK(h.chunks[0].dim == 1);
    CHECK(h.chunks[0].hdeg == 2);
    CHECK(h.chunks[0].degree() == 4);

    Cycle line = makeLinearSpace(R, {Poly::parse(R, "x1 - x2")});
    REQUIRE(line.chunks.size() == 1);
    CHECK(line.chunks[0].dim == 1);
    CHECK(line.chunks[0].hdeg == 1);

    Cycle pt = makePoint(R, ProjPoint::parse("[1, 2, 3]"));
    REQUIRE(pt.chunks.size() == 1);
    CHECK(pt.chunks[0].dim == 0);
    CHECK(pt.chunks[0].hdeg == 1);
    CHECK(pointOnSupport(pt, ProjPoint::parse("[2, 4, 6]")));
    CHECK_FALSE(pointOnSupport(pt, ProjPoint::parse("[1, 1, 1]")));

    Cycle full = makeFullSpace(R);
    REQUIRE(full.chunks.size() == 1);
    CHECK(full.chunks[0].dim == 2);
    CHECK(full.chunks[0].hdeg == 1);
    CHECK(full.chunks[0].ideal.isZero());

    CHECK_THROWS_AS(makeHypersurface(Poly::parse(R, "x1^2 - x0*x2"), 0), Error);
    CHECK_THROWS_AS(makeHypersurface(Poly::parse(R, "x1^2 - x0"), 1), Error);
    CHECK_THROWS_AS(makeLinearSpace(R, {Poly::parse(R, "x1"), Poly::parse(R, "2*x1")}), Error);
}

TEST_CASE("makeCycle merges equal ideals and sorts deterministically") {
    auto R = PolyRing::projective(2);
    auto a = *chunkFromUnmixed(parseIdeal(R, {"x1"}), 2);
    auto b = *chunkFromUnmixed(parseIdeal(R, {"x1"}), 3);
    auto c = *chunkFromUnmixed(parseIdeal(R, {"x0", "x2"}), 1);
    Cycle m = makeCycle(R, {a, c, b});
    REQUIRE(m.chunks.size() == 2);
    CHECK(m.chunks[0].dim == 0); // sorted point first
    CHECK(m.chunks[1].coeff == 5);
    CHECK(cycleTotalDegree(m) == 6);
    auto byDim = cycleDegree(m);
    CHECK(byDim[0] == 1);
    CHECK(byDim[1] == 5);
}

TEST_CASE("cycle text round trips through print and parse") {
    const char* names[] = {"aplane", "conic",  "conic1",  "conic2", "cusp",
                           "diag3",  "full2",  "h2",      "h2z4",   "h3",
                           "line1",  "line2",  "line3",   "line_x1", "linepair",
                           "point_a3", "pointa", "pointb", "z4",     "zgraph"};
    for (const char* name : names) {
        CAPTURE(name);
        Cycle c = parseCycleText(slurp(fixturesDir() + "/" + name + ".cyc"));
        Cycle again = parseCycleText(cycleToText(c));
        CHECK(c == again);
        CHECK(cycleToText(c) == cycleToText(again));
    }
}

TEST_CASE("cycle parser rejects malformed input") {
    CHECK_THROWS_AS(parseCycleText("ambient 2\ncomponent coeff=1\nx1^2 - x0\n"), Error);
    CHECK_THROWS_AS(parseCycleText("ambient 2\ncomponent coeff=0\nx1\n"), Error);
    CHECK_THROWS_AS(parseCycleText("ambient 2\ncomponent coeff=-2\nx1\n"), Error);
    // Not unmixed: line with an embedded point is not equal to its hull.
    CHECK_THROWS_AS(parseCycleText("ambient 2\ncomponent\nx0^2\nx0*x1\n"), Error);
    CHECK_THROWS_AS(parseCycleText("ambient 2\nnonsense 17\n"), ParseError);
    CHECK_THROWS_AS(parseCycleText("ambient 2\npoint [0,0,0]\n"), Error);
    CHECK_THROWS_AS(parseCycleText(""), Error);
    // Ambient mismatch between header and override.
    CHECK_THROWS_AS(parseCycleText("ambient 2\nhypersurface x1^2 - x0*x2\n", 3), Error);
}

TEST_CASE("ambient scan finds the largest variable index") {
    CHECK(scanAmbient("hypersurface x1^3 - x0*x2^2") == 2);
    CHECK(scanAmbient("point [1,0,0,0]") == 3);
    CHECK(scanAmbient("ambient 5\nfull") == 5);
    CHECK(scanAmbient("# only a comment") == std::nullopt);
}

TEST_CASE("multiplicity at a point via Hilbert-Samuel colengths") {
    Cycle cusp = cuspCurve();
    CHECK(multiplicityAt(cusp, ProjPoint::parse("[1,0,0]")) == 2);  // the cusp
    CHECK(multiplicityAt(cusp, ProjPoint::parse("[1,1,1]")) == 1);  // smooth point
    CHECK(multiplicityAt(cusp, ProjPoint::parse("[0,0,1]")) == 1);  // smooth point
    CHECK(multiplicityAt(cusp, ProjPoint::parse("[0,1,0]")) == 0);  // off the curve

    auto R = PolyRing::projective(2);
    Cycle tripleLine = makeHypersurface(Poly::parse(R, "x1"), 3);
    CHECK(multiplicityAt(tripleLine, ProjPoint::parse("[1,0,0]")) == 3);

    // A tacnode-like contact: (x2*x0 - x1^2)(x2*x0 + x1^2) has multiplicity 2
    // at [1,0,0] on each branch's tangent cone count.
    Cycle quart = makeHypersurface(Poly::parse(R, "x2^2*x0^2 - x1^4"), 1);
    CHECK(multiplicityAt(quart, ProjPoint::parse("[1,0,0]")) == 2);
}

TEST_CASE("multiplicity of plane curves matches the order of vanishing") {
    // For a plane curve F and point a, the local multiplicity equals the least
    // total degree appearing in the Taylor expansion of F at a. Random cubics
    // through a = [1,0,0] are generated by forcing the x0^3 coefficient.
    auto R = PolyRing::projective(2);
    Rng rng(20260815, 7);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Term> ts;
        // all degree-3 monomials in x0,x1,x2 except x0^3, random small coeffs
        for (int e0 = 0; e0 <= 3; ++e0)
            for (int e1 = 0; e1 + e0 <= 3; ++e1) {
                int e2 = 3 - e0 - e1;
                if (e0 == 3) continue;
                long c = static_cast<long>(rng.uniformInt(-4, 4));
                if (c == 0) continue;
                ts.push_back({Monomial({e0, e1, e2}), Rational(c)});
            }
        if (ts.empty()) continue;
        Poly F = Poly::fromTerms(R, std::move(ts));
        // Order of vanishing at [1,0,0]: substitute x0 = 1, find min total
        // degree in (x1, x2).
        Poly affine = F.substitute(R, {Poly::constant(R, 1), Poly::variable(R, 1),
                                       Poly::variable(R, 2)});
        if (affine.isZero()) continue;
        int ord = 1000;
        for (const auto& t : affine.terms()) ord = std::min(ord, t.m.deg());
        if (ord == 0 || ord == 3) continue; // point off the curve or F a cone
        Cycle curve = makeHypersurface(F, 1);
        CAPTURE(F.str());
        CHECK(multiplicityAt(curve, ProjPoint::parse("[1,0,0]")) == ord);
        ++checked;
    }
    CHECK(checked >= 10);
}

TEST_CASE("split against a center separates inside and outside parts") {
    auto R = PolyRing::projective(2);
    auto pair = *chunkFromUnmixed(parseIdeal(R, {"x0*x1"}), 1);

    SUBCASE("genuinely mixed support") {
        auto [in, out] = splitBy(pair, parseIdeal(R, {"x0"}));
        REQUIRE(in.has_value());
        REQUIRE(out.has_value());
        CHECK(idealEquals(in->ideal, parseIdeal(R, {"x0"})));
        CHECK(idealEquals(out->ideal, parseIdeal(R, {"x1"})));
        CHECK(in->degree() + out->degree() == pair.degree());
    }
    SUBCASE("chunk contained in the center") {
        auto [in, out] = splitBy(pair, parseIdeal(R, {"x0*x1"}));
        CHECK(in.has_value());
        CHECK_FALSE(out.has_value());
        CHECK(*in == pair);
    }
    SUBCASE("center disjoint from the chunk") {
        auto [in, out] = splitBy(pair, parseIdeal(R, {"x0 - x1", "x2"}));
        CHECK_FALSE(in.has_value());
        REQUIRE(out.has_value());
        CHECK(*out == pair);
    }
    SUBCASE("multiplicities ride along") {
        auto dbl = *chunkFromUnmixed(parseIdeal(R, {"x0^2*x1"}), 3);
        auto [in, out] = splitBy(dbl, parseIdeal(R, {"x0"}));
        REQUIRE(in.has_value());
        REQUIRE(out.has_value());
        CHECK(in->coeff == 3);
        CHECK(idealEquals(in->ideal, parseIdeal(R, {"x0^2"})));
        CHECK(in->hdeg == 2);
        CHECK(idealEquals(out->ideal, parseIdeal(R, {"x1"})));
        CHECK(in->degree() + out->degree() == dbl.degree());
    }
}

TEST_CASE("hypersurface cuts multiply degrees and honor multiplicity") {
    auto R = PolyRing::projective(2);

    auto conic = *chunkFromUnmixed(parseIdeal(R, {"x1^2 - x0*x2"}), 1);
    Chunk cut = cutWithHypersurface(conic, Poly::parse(R, "x1"));
    CHECK(cut.dim == 0);
    CHECK(cut.degree() == 2); // conic meets a line in two points (counted)

    // Cut a hypersurface of degree 2: degrees multiply.
    Chunk cut2 = cutWithHypersurface(conic, Poly::parse(R, "x0^2 - x1*x2"));
    CHECK(cut2.dim == 0);
    CHECK(cut2.degree() == 4);

    // A double line cut by a transversal line is a double point.
    auto dline = *chunkFromUnmixed(parseIdeal(R, {"x0^2"}), 1);
    Chunk dcut = cutWithHypersurface(dline, Poly::parse(R, "x1"));
    CHECK(dcut.dim == 0);
    CHECK(dcut.hdeg == 2);
    CHECK(chunkMultiplicityAt(dcut, ProjPoint::parse("[0,0,1]")) == 2);

    // Improper cut (hypersurface contains a component) must refuse.
    auto pair = *chunkFromUnmixed(parseIdeal(R, {"x0*x1"}), 1);
    CHECK_THROWS_AS(cutWithHypersurface(pair, Poly::parse(R, "x0")), GenericityError);

    // The divisor cut requires linear forms.
    Cycle cusp = cuspCurve();
    Chunk ccut = cutWithDivisor(cusp.chunks[0], Poly::parse(R, "x2"));
    CHECK(ccut.dim == 0);
    CHECK(ccut.hdeg == 3); // degree preserved
    CHECK_THROWS_AS(cutWithDivisor(cusp.chunks[0], Poly::parse(R, "x2^2")), Error);
}

TEST_CASE("support ideal covers exactly the chunk supports") {
    auto R = PolyRing::projective(2);
    Cycle two = makeCycle(R, {*chunkFromUnmixed(parseIdeal(R, {"x0", "x1"}), 1),
                              *chunkFromUnmixed(parseIdeal(R, {"x2"}), 2)});
    Ideal s = supportIdeal(two);
    CHECK(pointOnSupport(s, ProjPoint::parse("[0,0,1]")));
    CHECK(pointOnSupport(s, ProjPoint::parse("[1,1,0]")));
    CHECK_FALSE(pointOnSupport(s, ProjPoint::parse("[1,1,1]")));
    CHECK(idealIsUnit(supportIdeal(Cycle{R, {}})));
}

TEST_CASE("validated chunk entry rejects mixed ideals") {
    auto R = PolyRing::projective(2);
    CHECK_THROWS_AS(makeChunkValidated(Ideal::unit(R), 1), Error);
    CHECK(makeChunkValidated(parseIdeal(R, {"x0^2"}), 2).has_value());
    CHECK_THROWS_AS(makeChunkValidated(parseIdeal(R, {"x0^2", "x0*x1"}), 1), Error);
}
