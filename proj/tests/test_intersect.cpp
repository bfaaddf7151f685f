#include "doctest.h"

#include "svi/cycle.hpp"
#include "svi/errors.hpp"
#include "svi/intersect.hpp"
#include "svi/rng.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

using namespace svi;

namespace {

Ideal parseIdeal(const RingPtr& R, const std::vector<std::string>& gens) {
    std::vector<Poly> ps;
    for (const auto& s : gens) ps.push_back(Poly::parse(R, s));
    return Ideal(R, std::move(ps));
}

Cycle cuspCurve() {
    auto R = PolyRing::projective(2);
    return makeHypersurface(Poly::parse(R, "x1^3 - x0*x2^2"), 1);
}

Cycle conicCurve() {
    auto R = PolyRing::projective(2);
    return makeHypersurface(Poly::parse(R, "x1^2 - x0*x2"), 1);
}

// Seed-independent structure of a report. Non-reduced fixed chunks embed the
// random divisor coefficients in their scheme representation, so ideals are
// compared by support while (dim, coeff, hdeg) must match exactly.
struct Shape {
    std::vector<Chunk> fixed;
    std::vector<std::pair<int, long long>> moving;
    long long total = 0, residual = 0, bezout = 0;
};

Shape shapeOf(const BulletReport& rep) {
    Shape s;
    s.fixed = makeCycle(rep.ring, rep.fixed).chunks;
    for (const auto& m : rep.moving) s.moving.push_back({m.dim, m.degree});
    std::sort(s.moving.begin(), s.moving.end());
    s.total = rep.totalDegree;
    s.residual = rep.residualDegree;
    s.bezout = rep.bezoutProduct;
    return s;
}

bool sameShape(const Shape& a, const Shape& b) {
    if (a.moving != b.moving || a.total != b.total || a.residual != b.residual ||
        a.bezout != b.bezout || a.fixed.size() != b.fixed.size())
        return false;
    std::vector<bool> used(b.fixed.size(), false);
    for (const auto& ca : a.fixed) {
        bool found = false;
        for (size_t j = 0; j < b.fixed.size() && !found; ++j) {
            const auto& cb = b.fixed[j];
            if (!used[j] && ca.dim == cb.dim && ca.coeff == cb.coeff &&
                ca.hdeg == cb.hdeg && supportsEqualIdeal(ca.ideal, cb.ideal)) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace

TEST_CASE("ruled join adds dimensions and multiplies degrees") {
    auto R2 = PolyRing::projective(2);
    auto R3 = PolyRing::projective(3);
    Rng rng(424242, 0);

    auto randomHypersurface = [&](const RingPtr& R, int maxDeg) {
        for (;;) {
            int d = static_cast<int>(rng.uniformInt(1, maxDeg));
            std::vector<Term> ts;
            int n = R->nvars();
            // random homogeneous polynomial of degree d
            std::vector<int> e(n, 0);
            // iterate over all exponent vectors of total degree d (n small)
            std::vector<std::vector<int>> all;
            std::vector<int> cur(n, 0);
            auto rec = [&](auto&& self, int pos, int left) -> void {
                if (pos == n - 1) {
                    cur[pos] = left;
                    all.push_back(cur);
                    return;
                }
                for (int k = 0; k <= left; ++k) {
                    cur[pos] = k;
                    self(self, pos + 1, left - k);
                }
            };
            rec(rec, 0, d);
            for (const auto& exps : all) {
                long c = static_cast<long>(rng.uniformInt(-3, 3));
                if (c != 0) ts.push_back({Monomial(exps), Rational(c)});
            }
            if (ts.empty()) continue;
            Poly F = Poly::fromTerms(R, std::move(ts));
            if (F.totalDegree() != d) continue;
            return makeHypersurface(F, 1);
        }
    };

    for (int trial = 0; trial < 6; ++trial) {
        Cycle A = randomHypersurface(R2, 3);
        Cycle B = randomHypersurface(R2, 2);
        Cycle J = ruledJoin({A, B});
        REQUIRE(J.chunks.size() == 1);
        CHECK(J.chunks[0].dim == A.chunks[0].dim + B.chunks[0].dim + 1);
        CHECK(J.chunks[0].hdeg == A.chunks[0].hdeg * B.chunks[0].hdeg);
    }
    for (int trial = 0; trial < 2; ++trial) {
        Cycle A = randomHypersurface(R3, 2);
        Cycle B = randomHypersurface(R3, 2);
        Cycle C = makeLinearSpace(R3, {Poly::parse(R3, "x0 - x3")});
        Cycle J = ruledJoin({A, B, C});
        REQUIRE(J.chunks.size() == 1);
        CHECK(J.chunks[0].dim == A.chunks[0].dim + B.chunks[0].dim + C.chunks[0].dim + 2);
        CHECK(J.chunks[0].hdeg == A.chunks[0].hdeg * B.chunks[0].hdeg * C.chunks[0].hdeg);
    }

    // Mixed cycles expand multilinearly: (L1 + L2) join P = L1*P + L2*P.
    Cycle lines = makeCycle(R2, {*chunkFromUnmixed(parseIdeal(R2, {"x0"}), 1),
                                 *chunkFromUnmixed(parseIdeal(R2, {"x1", "x2"}), 2)});
    Cycle pt = makePoint(R2, ProjPoint::parse("[1,1,1]"));
    Cycle J = ruledJoin({lines, pt});
    REQUIRE(J.chunks.size() == 2);
    long long deg = 0;
    for (const auto& ch : J.chunks) deg += ch.degree();
    CHECK(deg == 3);

    // Point join point is the connecting line.
    Cycle Jpp = ruledJoin({makePoint(R2, ProjPoint::parse("[1,0,0]")),
                           makePoint(R2, ProjPoint::parse("[0,1,0]"))});
    REQUIRE(Jpp.chunks.size() == 1);
    CHECK(Jpp.chunks[0].dim == 1);
    CHECK(Jpp.chunks[0].hdeg == 1);
}

TEST_CASE("diagonal system lists the block difference forms") {
    auto jr = joinRing(2, 3);
    CHECK(jr->nvars() == 9);
    LinearSystem sys = diagonalSystem(2, 3, jr);
    CHECK(sys.forms.size() == 6); // (r-1)(n+1)
    CHECK(sys.forms[0] == Poly::parse(jr, "x0_2 - x0_1"));
    CHECK(sys.forms[5] == Poly::parse(jr, "x2_3 - x2_2"));
    for (const auto& f : sys.forms) CHECK(f.totalDegree() == 1);
    CHECK_THROWS_AS(diagonalSystem(2, 1, PolyRing::projective(2)), UsageError);
}

TEST_CASE("diagonal pullback collapses the join diagonal onto the base") {
    auto jr = joinRing(1, 2); // variables x0_1, x1_1, x0_2, x1_2
    auto R = PolyRing::projective(1);

    SUBCASE("the full diagonal maps to the whole base") {
        auto diag = *chunkFromUnmixed(parseIdeal(jr, {"x0_2 - x0_1", "x1_2 - x1_1"}), 1);
        auto out = diagonalPullback(diag, 1, 2);
        REQUIRE(out.size() == 1);
        CHECK(out[0].ideal.isZero());
        CHECK(out[0].dim == 1);
        CHECK(out[0].hdeg == 1);
    }
    SUBCASE("a reduced point on the diagonal maps to that point") {
        auto c = *chunkFromUnmixed(
            parseIdeal(jr, {"x0_2 - x0_1", "x1_2 - x1_1", "x1_1"}), 2);
        auto out = diagonalPullback(c, 1, 2);
        REQUIRE(out.size() == 1);
        CHECK(idealEquals(out[0].ideal, parseIdeal(R, {"x1"})));
        CHECK(out[0].coeff == 2);
        CHECK(out[0].hdeg == 1);
    }
    SUBCASE("scheme structure inside the diagonal is preserved") {
        auto c = *chunkFromUnmixed(
            parseIdeal(jr, {"x0_2 - x0_1", "x1_2 - x1_1", "x1_1^2"}), 1);
        auto out = diagonalPullback(c, 1, 2);
        REQUIRE(out.size() == 1);
        CHECK(idealEquals(out[0].ideal, parseIdeal(R, {"x1^2"})));
        CHECK(out[0].hdeg == 2);
    }
    SUBCASE("scheme structure transverse to the diagonal becomes a coefficient") {
        // Double point sticking out of the diagonal: plain substitution would
        // report degree 1 and lose half the mass.
        auto c = *chunkFromUnmixed(
            parseIdeal(jr, {"x1_1", "x0_1 - x0_2", "x1_2^2"}), 1);
        REQUIRE(c.hdeg == 2);
        auto out = diagonalPullback(c, 1, 2);
        Cycle merged = makeCycle(R, out);
        REQUIRE(merged.chunks.size() == 1);
        CHECK(idealEquals(merged.chunks[0].ideal, parseIdeal(R, {"x1"})));
        CHECK(merged.chunks[0].coeff == 2);
        CHECK(merged.chunks[0].hdeg == 1);
    }
    SUBCASE("chunks off the diagonal are refused") {
        auto off = *chunkFromUnmixed(parseIdeal(jr, {"x0_1", "x1_2"}), 1);
        CHECK_THROWS_AS(diagonalPullback(off, 1, 2), UsageError);
    }
}

TEST_CASE("sv separates central mass from residual mass") {
    auto R = PolyRing::projective(2);
    Cycle cusp = cuspCurve();

    SUBCASE("cusp against the maximal ideal of its singular point") {
        LinearSystem sys{R, {Poly::parse(R, "x1"), Poly::parse(R, "x2")}};
        SvOutput out = sv(cusp, sys, 17);
        REQUIRE(out.v.size() == 2); // steps 0..dim
        CHECK(out.v[0].empty());    // the curve is not contained in the point
        CHECK(out.insideTotal() == 2);  // multiplicity of the cusp
        CHECK(out.residualTotal() == 1);
        CHECK(out.sampled.size() == 1);
        MassCheck mc = svMassCheck(out, 3, 2, 1);
        CHECK(mc.inputDegree == 3);
        CHECK(mc.insideSum == 2);
        CHECK(mc.deficit == 1);
        // The inside part sits at the singular point.
        for (const auto& layer : out.v)
            for (const auto& ch : layer)
                CHECK(pointOnSupport(ch.ideal, ProjPoint::parse("[1,0,0]")));
    }
    SUBCASE("few forms leave no residual") {
        LinearSystem sys{R, {Poly::parse(R, "x1")}};
        SvOutput out = sv(cusp, sys, 17);
        CHECK(out.insideTotal() == 3);
        CHECK(out.residualTotal() == 0);
        MassCheck mc = svMassCheck(out, 3, 1, 1);
        CHECK(mc.deficit == 0);
    }
    SUBCASE("a point off the center is pure residual") {
        Cycle p = makePoint(R, ProjPoint::parse("[0,1,0]"));
        LinearSystem sys{R, {Poly::parse(R, "x1"), Poly::parse(R, "x2")}};
        SvOutput out = sv(p, sys, 17);
        CHECK(out.insideTotal() == 0);
        CHECK(out.residualTotal() == 1);
        CHECK(out.sampled.empty()); // dimension zero: no cuts to make
    }
    SUBCASE("pure function of the seed") {
        LinearSystem sys{R, {Poly::parse(R, "x1"), Poly::parse(R, "x2")}};
        SvOutput a = sv(cusp, sys, 99);
        SvOutput b = sv(cusp, sys, 99);
        REQUIRE(a.sampled.size() == b.sampled.size());
        for (size_t i = 0; i < a.sampled.size(); ++i) CHECK(a.sampled[i] == b.sampled[i]);
        CHECK(a.insideTotal() == b.insideTotal());
        // ... and the central mass does not depend on the seed.
        SvOutput c = sv(cusp, sys, 100);
        CHECK(c.insideTotal() == 2);
    }
}

TEST_CASE("full space is a left identity for the product") {
    Cycle cusp = cuspCurve();
    auto R = cusp.ring;
    BulletReport rep = bullet({makeFullSpace(R), cusp}, 5);
    Cycle fixed = makeCycle(R, rep.fixed);
    CHECK(fixed == cusp);
    CHECK(rep.moving.empty());
    CHECK(rep.totalDegree == 3);
    CHECK(rep.residualDegree == 0);
    CHECK(rep.bezoutProduct == 3);
    CHECK(rep.fultonDegree == 3);
    REQUIRE(rep.rho.has_value());
    CHECK(*rep.rho == 1);
}

TEST_CASE("a point meets a curve in its local multiplicity") {
    auto R = PolyRing::projective(2);
    Cycle cusp = cuspCurve();
    ProjPoint a = ProjPoint::parse("[1,0,0]");

    BulletReport rep = bullet({makePoint(R, a), cusp}, 5);
    REQUIRE(rep.fixed.size() == 1);
    CHECK(rep.fixed[0].coeff == 2); // = multiplicity of the cusp at a
    CHECK(rep.fixed[0].dim == 0);
    CHECK(idealEquals(rep.fixed[0].ideal, parseIdeal(R, {"x1", "x2"})));
    CHECK(rep.moving.empty());
    CHECK(rep.totalDegree == 2);
    CHECK(rep.residualDegree == 1);
    REQUIRE(rep.rho.has_value());
    CHECK(*rep.rho == -1); // improper: residual mass is allowed

    // At a smooth point the coefficient drops to 1.
    BulletReport smooth = bullet({makePoint(R, ProjPoint::parse("[1,1,1]")), cusp}, 5);
    REQUIRE(smooth.fixed.size() == 1);
    CHECK(smooth.fixed[0].coeff == 1);
    CHECK(smooth.totalDegree == 1);
    CHECK(smooth.residualDegree == 2);
}

TEST_CASE("disjoint points yield only residual mass") {
    auto R = PolyRing::projective(2);
    BulletReport rep = bullet({makePoint(R, ProjPoint::parse("[1,0,0]")),
                               makePoint(R, ProjPoint::parse("[0,1,0]"))},
                              5);
    CHECK(rep.fixed.empty());
    CHECK(rep.moving.empty());
    CHECK(rep.totalDegree == 0);
    CHECK(rep.residualDegree == 1);
    CHECK(rep.bezoutProduct == 1);
    REQUIRE(rep.rho.has_value());
    CHECK(*rep.rho == -2);
}

TEST_CASE("product structure does not depend on the seed") {
    Cycle cusp = cuspCurve();
    Shape first = shapeOf(bullet({cusp, cusp}, 1));
    for (std::uint64_t seed : {2ull, 3ull}) {
        Shape s = shapeOf(bullet({cusp, cusp}, seed));
        CHECK(sameShape(s, first));
    }
    CHECK(first.total == 9);
    CHECK(first.bezout == 9);
    CHECK(first.residual == 0);
    // Self-intersection of the cuspidal cubic: the curve itself, a length-3
    // scheme concentrated at its singular point, and moving mass 9 - 6 = 3.
    REQUIRE(first.fixed.size() == 2);
    CHECK(first.fixed[0].dim == 0);
    CHECK(first.fixed[0].degree() == 3);
    CHECK(pointOnSupport(first.fixed[0].ideal, ProjPoint::parse("[1,0,0]")));
    CHECK(chunkMultiplicityAt(first.fixed[0], ProjPoint::parse("[1,0,0]")) * first.fixed[0].coeff == 3);
    CHECK(first.fixed[1].dim == 1);
    CHECK(first.fixed[1].hdeg == 3);
    CHECK(first.moving == std::vector<std::pair<int, long long>>{{0, 3}});
}

TEST_CASE("the product is symmetric in its inputs") {
    Cycle cusp = cuspCurve();
    Cycle conic = conicCurve();
    Shape ab = shapeOf(bullet({cusp, conic}, 7));
    Shape ba = shapeOf(bullet({conic, cusp}, 7));
    CHECK(sameShape(ab, ba));
    CHECK(ab.total == 6);
    CHECK(ab.bezout == 6);
}

TEST_CASE("the product is equivariant under linear coordinate changes") {
    auto R = PolyRing::projective(2);
    Cycle line = makeLinearSpace(R, {Poly::parse(R, "x1")});
    Cycle cusp = cuspCurve();

    CoordinateChange chg = randomCoordinateChange(R, 4040, 1);
    auto transform = [&](const Cycle& c) {
        std::vector<Chunk> chunks;
        for (const auto& ch : c.chunks) {
            Ideal moved = idealApplyMap(ch.ideal, R, chg.forward);
            chunks.push_back(*chunkFromUnmixed(moved, ch.coeff));
        }
        return makeCycle(R, chunks);
    };

    BulletReport plain = bullet({line, cusp}, 11);
    BulletReport moved = bullet({transform(line), transform(cusp)}, 11);

    CHECK(plain.totalDegree == moved.totalDegree);
    CHECK(plain.residualDegree == moved.residualDegree);
    CHECK(plain.moving.size() == moved.moving.size());
    // The fixed part of the transformed product is the transform of the
    // fixed part of the plain product.
    Cycle expected = transform(makeCycle(R, plain.fixed));
    CHECK(expected == makeCycle(R, moved.fixed));
}

TEST_CASE("join path and direct linear path agree") {
    auto R = PolyRing::projective(2);
    Cycle line = makeLinearSpace(R, {Poly::parse(R, "x1")});
    Cycle cusp = cuspCurve();

    BulletReport viaJoin = bullet({line, cusp}, 3);
    BulletReport direct = bulletDirectLinear(line, cusp, 3);

    Cycle fj = makeCycle(R, viaJoin.fixed);
    Cycle fd = makeCycle(R, direct.fixed);
    CHECK(fj == fd);
    REQUIRE(fj.chunks.size() == 1);
    CHECK(fj.chunks[0].dim == 0);
    CHECK(fj.chunks[0].hdeg == 3);
    CHECK(idealEquals(fj.chunks[0].ideal, parseIdeal(R, {"x1", "x0*x2^2"})));
    CHECK(viaJoin.totalDegree == direct.totalDegree);
    CHECK(viaJoin.totalDegree == 3);
    CHECK(viaJoin.residualDegree == direct.residualDegree);
    CHECK(viaJoin.moving.size() == direct.moving.size());
}

TEST_CASE("conic self-intersection splits into itself plus moving mass") {
    Cycle conic = conicCurve();
    BulletReport rep = bullet({conic, conic}, 9);
    Cycle fixed = makeCycle(rep.ring, rep.fixed);
    CHECK(fixed == conic); // the fixed part is the conic itself
    REQUIRE(rep.moving.size() == 1);
    CHECK(rep.moving[0].dim == 0);
    CHECK(rep.moving[0].degree == 2); // d^2 - d with d = 2
    CHECK(rep.totalDegree == 4);
    CHECK(rep.residualDegree == 0);
}

TEST_CASE("local intersection numbers at the cusp") {
    Cycle cusp = cuspCurve();
    EpsilonTable t = epsilon({cusp, cusp}, ProjPoint::parse("[1,0,0]"), 21);
    REQUIRE(t.values.size() == 2);
    CHECK(t.values[0] == 3);
    CHECK(t.values[1] == 2);

    // At a smooth point of the support the table is (0, 1).
    EpsilonTable s = epsilon({cusp, cusp}, ProjPoint::parse("[1,1,1]"), 21);
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == 0);
    CHECK(s.values[1] == 1);
}

TEST_CASE("polar oracle accounts for the full class of a plane curve") {
    Cycle cusp = cuspCurve();
    PolarOracle po = polarOracle(cusp, {ProjPoint::parse("[1,0,0]")}, 31);
    CHECK(po.curveDegree == 3);
    CHECK(po.total == 6); // d(d-1)
    REQUIRE(po.pointMultiplicities.size() == 1);
    CHECK(po.pointMultiplicities[0] == 3); // a cusp absorbs 3
    CHECK(po.singularMass == 3);
    CHECK(po.movingMass == 3);

    Cycle conic = conicCurve();
    PolarOracle pc = polarOracle(conic, {}, 31);
    CHECK(pc.total == 2);
    CHECK(pc.singularMass == 0);
    CHECK(pc.movingMass == 2);
}

TEST_CASE("run seeds derive deterministically from the master seed") {
    CHECK(runSeed(0x5EED, 0) == 13160624358351167139ull);
    CHECK(runSeed(0x5EED, 1) == 8412335439684385869ull);
    CHECK(runSeed(1, 0) != runSeed(1, 1));
    BulletReport rep = bullet({cuspCurve(), cuspCurve()}, 0x5EED);
    REQUIRE(rep.runSeeds.size() >= 2);
    CHECK(rep.runSeeds[0] == runSeed(0x5EED, 0));
    CHECK(rep.runSeeds[1] == runSeed(0x5EED, 1));
}
