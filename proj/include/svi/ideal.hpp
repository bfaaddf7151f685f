#pragma once

#include "svi/poly.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace svi {

// Plain value type: a generator list over a ring. Zero generators are
// dropped on construction; no other normalization happens implicitly.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Poly> gens);
    static Ideal zero(const RingPtr& ring) { return Ideal(ring, {}); }
    static Ideal unit(const RingPtr& ring);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }
    bool isZero() const { return gens_.empty(); }

private:
    RingPtr ring_;
    std::vector<Poly> gens_;
};

// Reduced basis: monic, pairwise fully reduced, sorted ascending by leading
// monomial. Unique for a given (ideal, order).
struct GroebnerBasis {
    RingPtr ring;
    MonomialOrder order;
    std::vector<Poly> polys; // empty for the zero ideal
    bool isUnit() const;
};

// Buchberger with the Gebauer-Moeller pair filters (coprime-lead and chain
// discards). Fully deterministic; results are memoized in a process-wide
// cache keyed by (order, ring, generator strings).
std::shared_ptr<const GroebnerBasis> groebner(const Ideal& I, const MonomialOrder& ord);
std::size_t gbCacheSize();

// Unique remainder of full division by a reduced basis.
Poly normalForm(const Poly& f, const GroebnerBasis& gb);
// Test hook: check every S-pair of the basis reduces to zero.
bool certifyGroebner(const GroebnerBasis& gb);
// f = q*g exactly; throws AuditError on nonzero remainder.
Poly divideExact(const Poly& f, const Poly& g);

// Canonical generators = reduced grevlex basis.
Ideal canonicalIdeal(const Ideal& I);
bool idealIsUnit(const Ideal& I);
bool idealEquals(const Ideal& a, const Ideal& b);
bool idealContains(const Ideal& I, const Poly& f);

// Membership in the radical via the added-inverse-variable trick.
bool radicalContains(const Ideal& I, const Poly& f);
// V(I) subseteq V(J), i.e. every generator of J lies in rad(I).
bool supportContained(const Ideal& I, const Ideal& J);
bool supportsEqualIdeal(const Ideal& a, const Ideal& b);

Ideal idealSum(const Ideal& a, const Ideal& b);
Ideal intersectIdeals(const Ideal& a, const Ideal& b);
Ideal quotientSingle(const Ideal& I, const Poly& f); // I : (f)
Ideal quotient(const Ideal& I, const Ideal& J);      // I : J
Ideal saturateSingle(const Ideal& I, const Poly& f); // I : f^infinity
Ideal saturate(const Ideal& I, const Ideal& J);      // meet of single saturations
// I must live in a ring whose first `front` variables are to be removed;
// returns the elimination ideal in the ring on the remaining names.
Ideal eliminateFront(const Ideal& I, int front);

struct HilbertSummary {
    int dim = -1;        // projective dimension; -1 for the empty scheme
    long long degree = 0;
};
// Projective dimension and degree from the Hilbert series of the leading
// term ideal (degrees count multiplicity; no radicals involved).
HilbertSummary hilbert(const Ideal& I);

// Intersection of the top-dimensional primary components, computed by the
// double-quotient link L : (L : I) over a generic complete intersection
// L inside I (resampled on failure, at most 20 attempts).
Ideal equidimHull(const Ideal& I);

// Homogenize a grevlex basis of the affine ideal; chartVar is the index the
// new variable takes inside proj.
Ideal projectiveClosure(const Ideal& affine, const RingPtr& proj, int chartVar);

bool isNzd(const Ideal& I, const Poly& f);

Ideal irrelevantIdeal(const RingPtr& ring);
// Apply a ring map generator-wise (images[i] = image of variable i).
Ideal idealApplyMap(const Ideal& I, const RingPtr& target, const std::vector<Poly>& images);

// Count monomials of total degree < degBound outside the monomial ideal
// generated by leads.
long long countStandardMonomialsUpTo(const std::vector<Monomial>& leads, int nvars,
                                     int degBound);

} // namespace svi
