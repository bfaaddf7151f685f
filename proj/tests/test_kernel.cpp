#include "doctest.h"

#include "svi/point.hpp"
#include "svi/poly.hpp"
#include "svi/ring.hpp"
#include "svi/rng.hpp"

#include <set>
#include <string>
#include <vector>

using namespace svi;

TEST_CASE("monomial arithmetic") {
    Monomial a({2, 1, 0});
    Monomial b({1, 1, 1});
    CHECK(a.deg() == 3);
    CHECK_FALSE(a.divides(b));
    CHECK(Monomial({1, 1, 0}).divides(a));
    CHECK(a.times(b) == Monomial({3, 2, 1}));
    CHECK(a.times(b).dividedBy(b) == a);
    CHECK(Monomial::lcm(a, b) == Monomial({2, 1, 1}));
    CHECK(Monomial::coprime(Monomial({2, 0, 0}), Monomial({0, 0, 3})));
    CHECK_FALSE(Monomial::coprime(a, b));
    CHECK(Monomial::one(3).isOne());
    CHECK(Monomial::variable(3, 1, 4) == Monomial({0, 4, 0}));
}

TEST_CASE("grevlex order on quadratic monomials") {
    MonomialOrder ord = MonomialOrder::grevlexOrder();
    // Degree dominates.
    CHECK(ord.greater(Monomial({0, 0, 2}), Monomial({1, 0, 0})));
    // Classical chain in three variables.
    std::vector<Monomial> chain = {
        Monomial({2, 0, 0}), Monomial({1, 1, 0}), Monomial({0, 2, 0}),
        Monomial({1, 0, 1}), Monomial({0, 1, 1}), Monomial({0, 0, 2}),
    };
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        CHECK(ord.greater(chain[i], chain[i + 1]));
        CHECK(ord.compare(chain[i + 1], chain[i]) == -1);
    }
    CHECK(ord.compare(chain[0], chain[0]) == 0);
}

TEST_CASE("block order eliminates the front block") {
    MonomialOrder ord = MonomialOrder::blockOrder(1);
    // Any power of the front variable beats anything without it.
    CHECK(ord.greater(Monomial({1, 0, 0}), Monomial({0, 5, 5})));
    CHECK(ord.greater(Monomial({2, 0, 0}), Monomial({1, 9, 9})));
}

TEST_CASE("polynomial parse / print round-trip") {
    auto R = PolyRing::projective(2);
    for (const std::string s : {
             "x1^3 - x0*x2^2",
             "x0^2 + 2*x0*x1 + x1^2",
             "x0",
             "5",
             "x1^2 - 5043841/2415792*x0*x2",
             "-x0 + x1",
         }) {
        Poly f = Poly::parse(R, s);
        CHECK(Poly::parse(R, f.str()) == f);
    }
    // Canonical printing is grevlex-descending.
    CHECK(Poly::parse(R, "x2^2*x0 - x1^3").str() == "-x1^3 + x0*x2^2");
}

TEST_CASE("polynomial arithmetic") {
    auto R = PolyRing::projective(2);
    Poly x0 = Poly::variable(R, 0), x1 = Poly::variable(R, 1);
    CHECK((x0 + x1) * (x0 + x1) == Poly::parse(R, "x0^2 + 2*x0*x1 + x1^2"));
    CHECK((x0 + x1).pow(3) == Poly::parse(R, "x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3"));
    CHECK((x0 - x0).isZero());
    CHECK(Poly::parse(R, "x1^3 - x0*x2^2").totalDegree() == 3);
    CHECK(Poly::parse(R, "x1^3 - x0*x2^2").isHomogeneous());
    CHECK_FALSE(Poly::parse(R, "x1^3 - x0").isHomogeneous());
    CHECK(Poly::parse(R, "x1^3 - x0*x2^2").derivative(1) == Poly::parse(R, "3*x1^2"));
    CHECK(Poly::parse(R, "x1^3 - x0*x2^2").derivative(0) == Poly::parse(R, "-x2^2"));
    Poly f = Poly::parse(R, "x1^2 - x0*x2");
    CHECK(f.evaluate({Rational(1), Rational(2), Rational(4)}) == Rational(0));
    CHECK(f.evaluate({Rational(1), Rational(1), Rational(0)}) == Rational(1));
    CHECK(f.scaled(Rational(-3)) == Poly::parse(R, "-3*x1^2 + 3*x0*x2"));
}

TEST_CASE("substitution is a ring map") {
    auto R = PolyRing::projective(2);
    auto S = PolyRing::projective(1);
    Poly f = Poly::parse(R, "x1^2 - x0*x2");
    // x0 -> x0^2, x1 -> x0*x1, x2 -> x1^2 parametrizes the conic.
    std::vector<Poly> im = {Poly::parse(S, "x0^2"), Poly::parse(S, "x0*x1"),
                            Poly::parse(S, "x1^2")};
    CHECK(f.substitute(S, im).isZero());
    Poly g = Poly::parse(R, "x0 + x1");
    CHECK(g.substitute(S, im) == Poly::parse(S, "x0^2 + x0*x1"));
}

TEST_CASE("homogenize and dehomogenize round-trip") {
    auto P = PolyRing::projective(2);
    auto A = chartRing(P, 0);
    Poly affine = Poly::parse(A, "x2^2 - x1^3");
    Poly hom = homogenize(affine, P, 0);
    CHECK(hom.isHomogeneous());
    CHECK(hom == Poly::parse(P, "x0*x2^2 - x1^3"));
    CHECK(dehomogenize(hom, 0, A) == affine);
}

TEST_CASE("projective points canonicalize") {
    ProjPoint p = ProjPoint::parse("[2, 4, 6]");
    CHECK(p == ProjPoint::parse("[1, 2, 3]"));
    CHECK(p.pivot() == 0);
    CHECK(p.coords()[0] == Rational(1));
    CHECK(ProjPoint::parse(p.str()) == p);

    ProjPoint q = ProjPoint::parse("[0, 0, 5]");
    CHECK(q.pivot() == 2);
    CHECK(q == ProjPoint::parse("[0,0,1]"));
    CHECK(q.ambient() == 2);

    ProjPoint r = ProjPoint::parse("[1, 1/2, -2/3]");
    CHECK(r.coords()[2] == Rational(-2, 3));

    CHECK_THROWS(ProjPoint::parse("[0, 0, 0]"));
    CHECK_THROWS(ProjPoint::parse("[1, 2"));
}

TEST_CASE("rng streams are deterministic and disjoint") {
    Rng a(7, 3), b(7, 3), c(7, 4);
    bool someDiff = false;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t va = a.next();
        CHECK(va == b.next());
        if (va != c.next()) someDiff = true;
    }
    CHECK(someDiff);

    Rng d(123, 5);
    for (int i = 0; i < 500; ++i) {
        long long v = d.uniformInt(-9, 9);
        CHECK(v >= -9);
        CHECK(v <= 9);
    }
    // The full range is actually reached.
    std::set<long long> seen;
    Rng e(1, 1);
    for (int i = 0; i < 500; ++i) seen.insert(e.uniformInt(0, 3));
    CHECK(seen.size() == 4);
}

TEST_CASE("run seeds are frozen") {
    // These exact values appear in every report produced with --seed 0x5EED;
    // they pin cross-platform determinism of the seed derivation.
    CHECK(mix64(0x5EED, 0) == 13160624358351167139ull);
    CHECK(mix64(0x5EED, 1) == 8412335439684385869ull);
    CHECK(mix64(0, 0) != mix64(0, 1));
    CHECK(mix64(1, 0) != mix64(0, 1));
}

TEST_CASE("random linear combinations are reproducible and bounded") {
    auto R = PolyRing::projective(3);
    std::vector<Poly> forms;
    for (int i = 0; i < 4; ++i) forms.push_back(Poly::variable(R, i));
    Poly h1 = randomLinearCombination(forms, 42, 7);
    Poly h2 = randomLinearCombination(forms, 42, 7);
    CHECK(h1 == h2);
    CHECK_FALSE(h1.isZero());
    CHECK(h1.totalDegree() == 1);
    CHECK(randomLinearCombination(forms, 42, 8) != h1);
    for (const auto& t : h1.terms()) {
        CHECK(t.c.get_den() == 1);
        CHECK(t.c <= Rational(9999));
        CHECK(t.c >= Rational(-9999));
    }
}

TEST_CASE("random coordinate changes invert exactly") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto R = PolyRing::projective(3);
        CoordinateChange ch = randomCoordinateChange(R, seed, 0);
        REQUIRE(ch.forward.size() == 4);
        REQUIRE(ch.inverse.size() == 4);
        for (int i = 0; i < 4; ++i) {
            CHECK(ch.forward[i].substitute(R, ch.inverse) == Poly::variable(R, i));
            CHECK(ch.inverse[i].substitute(R, ch.forward) == Poly::variable(R, i));
        }
        // Determinism.
        CoordinateChange again = randomCoordinateChange(R, seed, 0);
        for (int i = 0; i < 4; ++i) CHECK(again.forward[i] == ch.forward[i]);
    }
}
