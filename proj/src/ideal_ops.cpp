#include "svi/errors.hpp"
#include "svi/ideal.hpp"
#include "svi/rng.hpp"

#include <algorithm>

namespace svi {

namespace {

// Fresh auxiliary variable name not clashing with the ring.
std::string freshName(const RingPtr& ring) {
    for (int k = 0;; ++k) {
        std::string nm = "t" + std::to_string(k);
        if (ring->indexOf(nm) < 0) return nm;
    }
}

RingPtr extendFrontRing(const RingPtr& ring) {
    std::vector<std::string> names;
    names.push_back(freshName(ring));
    for (const auto& n : ring->names()) names.push_back(n);
    return PolyRing::make(std::move(names));
}

// Relocate variables without arithmetic: target index of var i = map[i].
Poly renameVars(const Poly& p, const RingPtr& target, const std::vector<int>& map) {
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        std::vector<int> e(target->nvars(), 0);
        for (int i = 0; i < t.m.nvars(); ++i)
            if (t.m[i] > 0) e[map[i]] = t.m[i];
        out.push_back(Term{Monomial(std::move(e)), t.c});
    }
    return Poly::fromTerms(target, std::move(out));
}

std::vector<int> shiftMap(int nvars, int offset) {
    std::vector<int> m(nvars);
    for (int i = 0; i < nvars; ++i) m[i] = i + offset;
    return m;
}

// Keep only the basis elements free of the first `front` variables and map
// them down to the back ring; by the elimination property of the block order
// these generate (and form a basis of) the elimination ideal.
Ideal extractBack(const std::vector<Poly>& basis, const RingPtr& ext, int front) {
    std::vector<std::string> names(ext->names().begin() + front, ext->names().end());
    RingPtr back = PolyRing::make(std::move(names));
    std::vector<int> map(ext->nvars(), 0);
    for (int i = front; i < ext->nvars(); ++i) map[i] = i - front;
    std::vector<Poly> keep;
    for (const auto& p : basis) {
        bool pure = true;
        for (const auto& t : p.terms())
            for (int i = 0; i < front && pure; ++i)
                if (t.m[i] > 0) pure = false;
        if (pure) keep.push_back(renameVars(p, back, map));
    }
    return canonicalIdeal(Ideal(back, std::move(keep)));
}

} // namespace

Ideal canonicalIdeal(const Ideal& I) {
    if (I.isZero()) return I;
    auto gb = groebner(I, MonomialOrder::grevlexOrder());
    return Ideal(I.ring(), gb->polys);
}

bool idealIsUnit(const Ideal& I) {
    if (I.isZero()) return false;
    for (const auto& g : I.gens())
        if (g.isConstant() && !g.isZero()) return true;
    return groebner(I, MonomialOrder::grevlexOrder())->isUnit();
}

bool idealEquals(const Ideal& a, const Ideal& b) {
    if (!sameRing(a.ring(), b.ring())) return false;
    Ideal ca = canonicalIdeal(a);
    Ideal cb = canonicalIdeal(b);
    return ca.gens() == cb.gens();
}

bool idealContains(const Ideal& I, const Poly& f) {
    if (f.isZero()) return true;
    if (I.isZero()) return false;
    return normalForm(f, *groebner(I, MonomialOrder::grevlexOrder())).isZero();
}

bool radicalContains(const Ideal& I, const Poly& f) {
    if (f.isZero()) return true;
    RingPtr ext = extendFrontRing(I.ring());
    std::vector<int> map = shiftMap(I.ring()->nvars(), 1);
    std::vector<Poly> gens;
    for (const auto& g : I.gens()) gens.push_back(renameVars(g, ext, map));
    Poly t = Poly::variable(ext, 0);
    gens.push_back(Poly::constant(ext, 1) - t * renameVars(f, ext, map));
    return groebner(Ideal(ext, std::move(gens)), MonomialOrder::grevlexOrder())->isUnit();
}

bool supportContained(const Ideal& I, const Ideal& J) {
    for (const auto& g : J.gens())
        if (!radicalContains(I, g)) return false;
    return true;
}

bool supportsEqualIdeal(const Ideal& a, const Ideal& b) {
    return supportContained(a, b) && supportContained(b, a);
}

Ideal idealSum(const Ideal& a, const Ideal& b) {
    if (!sameRing(a.ring(), b.ring())) throw UsageError("ideal sum: ring mismatch");
    std::vector<Poly> gens = a.gens();
    gens.insert(gens.end(), b.gens().begin(), b.gens().end());
    return Ideal(a.ring(), std::move(gens));
}

Ideal intersectIdeals(const Ideal& a, const Ideal& b) {
    if (!sameRing(a.ring(), b.ring())) throw UsageError("ideal intersection: ring mismatch");
    if (a.isZero() || b.isZero()) return Ideal::zero(a.ring());
    if (idealIsUnit(a)) return canonicalIdeal(b);
    if (idealIsUnit(b)) return canonicalIdeal(a);
    RingPtr ext = extendFrontRing(a.ring());
    std::vector<int> map = shiftMap(a.ring()->nvars(), 1);
    Poly t = Poly::variable(ext, 0);
    Poly oneMinusT = Poly::constant(ext, 1) - t;
    std::vector<Poly> gens;
    for (const auto& f : a.gens()) gens.push_back(t * renameVars(f, ext, map));
    for (const auto& g : b.gens()) gens.push_back(oneMinusT * renameVars(g, ext, map));
    auto gb = groebner(Ideal(ext, std::move(gens)), MonomialOrder::blockOrder(1));
    return extractBack(gb->polys, ext, 1);
}

Ideal quotientSingle(const Ideal& I, const Poly& f) {
    if (!sameRing(I.ring(), f.ring())) throw UsageError("quotient: ring mismatch");
    if (f.isZero()) return Ideal::unit(I.ring());
    if (f.isConstant()) return canonicalIdeal(I);
    if (I.isZero()) return Ideal::zero(I.ring());
    Ideal meet = intersectIdeals(I, Ideal(I.ring(), {f}));
    std::vector<Poly> gens;
    for (const auto& g : meet.gens()) gens.push_back(divideExact(g, f));
    return canonicalIdeal(Ideal(I.ring(), std::move(gens)));
}

Ideal quotient(const Ideal& I, const Ideal& J) {
    if (!sameRing(I.ring(), J.ring())) throw UsageError("quotient: ring mismatch");
    if (J.isZero()) return Ideal::unit(I.ring());
    bool first = true;
    Ideal acc;
    for (const auto& f : J.gens()) {
        Ideal q = quotientSingle(I, f);
        acc = first ? q : intersectIdeals(acc, q);
        first = false;
    }
    return canonicalIdeal(acc);
}

Ideal saturateSingle(const Ideal& I, const Poly& f) {
    if (!sameRing(I.ring(), f.ring())) throw UsageError("saturate: ring mismatch");
    if (f.isZero()) return Ideal::unit(I.ring());
    if (f.isConstant()) return canonicalIdeal(I);
    RingPtr ext = extendFrontRing(I.ring());
    std::vector<int> map = shiftMap(I.ring()->nvars(), 1);
    std::vector<Poly> gens;
    for (const auto& g : I.gens()) gens.push_back(renameVars(g, ext, map));
    Poly t = Poly::variable(ext, 0);
    gens.push_back(Poly::constant(ext, 1) - t * renameVars(f, ext, map));
    auto gb = groebner(Ideal(ext, std::move(gens)), MonomialOrder::blockOrder(1));
    return extractBack(gb->polys, ext, 1);
}

Ideal saturate(const Ideal& I, const Ideal& J) {
    if (!sameRing(I.ring(), J.ring())) throw UsageError("saturate: ring mismatch");
    if (J.isZero()) return Ideal::unit(I.ring());
    bool first = true;
    Ideal acc;
    for (const auto& f : J.gens()) {
        Ideal s = saturateSingle(I, f);
        acc = first ? s : intersectIdeals(acc, s);
        first = false;
    }
    return canonicalIdeal(acc);
}

Ideal eliminateFront(const Ideal& I, int front) {
    if (front <= 0 || front >= I.ring()->nvars())
        throw UsageError("eliminateFront: bad front block size");
    auto gb = groebner(I, MonomialOrder::blockOrder(front));
    return extractBack(gb->polys, I.ring(), front);
}

bool isNzd(const Ideal& I, const Poly& f) {
    if (f.isZero()) return idealIsUnit(I);
    return idealEquals(quotientSingle(I, f), canonicalIdeal(I));
}

Ideal irrelevantIdeal(const RingPtr& ring) {
    std::vector<Poly> gens;
    for (int i = 0; i < ring->nvars(); ++i) gens.push_back(Poly::variable(ring, i));
    return Ideal(ring, std::move(gens));
}

Ideal idealApplyMap(const Ideal& I, const RingPtr& target, const std::vector<Poly>& images) {
    std::vector<Poly> gens;
    for (const auto& g : I.gens()) gens.push_back(g.substitute(target, images));
    return Ideal(target, std::move(gens));
}

Ideal projectiveClosure(const Ideal& affine, const RingPtr& proj, int chartVar) {
    if (affine.isZero()) return Ideal::zero(proj);
    auto gb = groebner(affine, MonomialOrder::grevlexOrder());
    std::vector<Poly> gens;
    for (const auto& p : gb->polys) gens.push_back(homogenize(p, proj, chartVar));
    return canonicalIdeal(Ideal(proj, std::move(gens)));
}

Ideal equidimHull(const Ideal& I) {
    Ideal canon = canonicalIdeal(I);
    if (canon.isZero()) return canon;
    if (idealIsUnit(canon)) throw UsageError("equidimHull: unit ideal has no components");
    const RingPtr& ring = canon.ring();
    const int nvars = ring->nvars();
    HilbertSummary hs = hilbert(canon);
    const int krull = hs.dim + 1;
    if (krull == 0) return canon; // supported only at the cone vertex
    const int c = nvars - krull;
    if (c <= 0) throw AuditError("equidimHull: nonpositive codimension");
    const auto& gens = canon.gens();
    const int s = static_cast<int>(gens.size());
    // Generated by codim-many elements: a complete intersection, hence
    // Cohen-Macaulay, hence already unmixed.
    if (s == c) return canon;

    // For any complete intersection L inside I of the same height, the double
    // link L : (L : I) is exactly the intersection of the top-dimensional
    // primary components of I; no genericity enters beyond the height of L.
    auto doubleLink = [&](const Ideal& L) -> Ideal {
        Ideal hull = canonicalIdeal(quotient(L, quotient(L, canon)));
        auto gb = groebner(hull, MonomialOrder::grevlexOrder());
        for (const auto& g : gens)
            if (!normalForm(g, *gb).isZero())
                throw AuditError("equidimHull: input not contained in hull");
        HilbertSummary hh = hilbert(hull);
        if (hh.dim != hs.dim || hh.degree != hs.degree)
            throw AuditError("equidimHull: dimension or degree drifted");
        return hull;
    };

    // Cheap candidates first: subsets of the generators, sparse and often
    // already of the right height.
    {
        std::vector<int> comb(c);
        for (int i = 0; i < c; ++i) comb[i] = i;
        for (int tried = 0; tried < 24; ++tried) {
            std::vector<Poly> sub;
            sub.reserve(c);
            for (int i : comb) sub.push_back(gens[i]);
            Ideal L(ring, std::move(sub));
            if (hilbert(L).dim + 1 == krull) return doubleLink(L);
            int pos = c - 1;
            while (pos >= 0 && comb[pos] == s - c + pos) --pos;
            if (pos < 0) break;
            ++comb[pos];
            for (int i = pos + 1; i < c; ++i) comb[i] = comb[i - 1] + 1;
        }
    }

    int maxDeg = 0;
    for (const auto& g : gens) maxDeg = std::max(maxDeg, g.totalDegree());
    std::vector<Poly> vars;
    for (int i = 0; i < nvars; ++i) vars.push_back(Poly::variable(ring, i));
    const std::uint64_t seed = 0x48554C4Cull;
    for (int attempt = 0; attempt < 20; ++attempt) {
        Rng rng(seed, attempt);
        // Lower-degree generators are padded to the top degree with powers of
        // a fresh generic linear form per term. Sharing one form across all
        // combinations would make the whole system collapse on its zero set
        // to combinations of the top-degree generators alone, which cuts the
        // wrong codimension whenever those number fewer than c.
        auto freshLinear = [&]() {
            Poly ell = Poly::zero(ring);
            while (ell.isZero()) {
                for (int v = 0; v < nvars; ++v) {
                    long long cv = rng.uniformInt(-9, 9);
                    if (cv != 0) ell = ell + vars[v].scaled(Rational(static_cast<long>(cv)));
                }
            }
            return ell;
        };
        std::vector<Poly> combos;
        bool bad = false;
        for (int i = 0; i < c; ++i) {
            Poly g = Poly::zero(ring);
            for (int redraw = 0; redraw < 50 && g.isZero(); ++redraw) {
                g = Poly::zero(ring);
                for (const auto& f : gens) {
                    long long a = rng.uniformInt(-999, 999);
                    if (a == 0) continue;
                    Poly term = f.scaled(Rational(static_cast<long>(a)));
                    const int pad = maxDeg - f.totalDegree();
                    if (pad > 0) term = term * freshLinear().pow(static_cast<unsigned>(pad));
                    g = g + term;
                }
            }
            if (g.isZero()) {
                bad = true;
                break;
            }
            combos.push_back(std::move(g));
        }
        if (bad) continue;
        Ideal L(ring, combos);
        if (hilbert(L).dim + 1 != krull) continue; // height dropped: resample
        return doubleLink(L);
    }
    throw GenericityError("equidimHull: no generic complete intersection found in 20 attempts");
}

} // namespace svi
